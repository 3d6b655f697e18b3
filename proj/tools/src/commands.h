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
#ifndef QUASISPEC_TOOLS_COMMANDS_H
#define QUASISPEC_TOOLS_COMMANDS_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "quasispec/driver.h"
#include "quasispec/matlin.h"

namespace quasispec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitIncomplete = 2;

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit code. Nothing is written to the real stdout/stderr.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Copies used per trial by sweep-m when --copies is absent:
/// ceil(50 n ln n), at least 1.
uint64_t default_sweep_copies(size_t n);

/// Fraction of eigenvalues of `perturbed` that some accepted estimate
/// lands within `tolerance` of.
double collection_fraction(const HermitianMatrix &perturbed, const std::vector<EigenEstimate> &accepted,
                           double tolerance);

/// Formats a double in shortest round-trip form, independent of locale.
std::string format_double(double x);

}  // namespace quasispec::cli

#endif
