// Copyright 2026 The quasispec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef QUASISPEC_TOOLS_MATRIX_IO_H
#define QUASISPEC_TOOLS_MATRIX_IO_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "quasispec/matlin.h"

namespace quasispec::cli {

/// Bad user input: unreadable file, malformed document, invalid matrix.
class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct MatrixFile {
    HermitianMatrix matrix = HermitianMatrix::zero(1);
    std::string description;
    std::optional<uint64_t> seed;
};

/// Accepts {"n": N, "data": [[re, im], ...]} (row-major, N^2 pairs,
/// optional "description" and "seed"), or plain text: N, then N^2 "re im"
/// pairs separated by whitespace.
MatrixFile parse_matrix(std::string_view text, const std::string &source);
MatrixFile read_matrix_file(const std::string &path);

/// JSON form; doubles are written in shortest round-trip form.
std::string format_matrix(const MatrixFile &file);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &content);

}  // namespace quasispec::cli

#endif
