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
#include "matrix_io.h"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace quasispec::cli {

namespace {

using nlohmann::json;

std::string entry_label(size_t k, size_t n) {
    return "data[" + std::to_string(k) + "] (row " + std::to_string(k / n) + ", column " +
           std::to_string(k % n) + ")";
}

HermitianMatrix build(size_t n, const std::vector<Complex> &entries, const std::string &source) {
    try {
        return HermitianMatrix::from_row_major(n, entries);
    } catch (const std::invalid_argument &e) {
        throw InputError(source + ": " + e.what());
    }
}

MatrixFile parse_json(std::string_view text, const std::string &source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw InputError(source + ": top level must be an object");
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<int64_t>() < 1) {
        throw InputError(source + ": field \"n\" must be a positive integer");
    }
    const auto n = static_cast<size_t>(doc["n"].get<int64_t>());
    if (!doc.contains("data") || !doc["data"].is_array()) {
        throw InputError(source + ": field \"data\" must be an array of [re, im] pairs");
    }
    const json &data = doc["data"];
    if (data.size() != n * n) {
        throw InputError(source + ": field \"data\" has " + std::to_string(data.size()) + " entries, expected " +
                         std::to_string(n * n));
    }
    std::vector<Complex> entries(n * n);
    for (size_t k = 0; k < n * n; ++k) {
        const json &pair = data[k];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw InputError(source + ": " + entry_label(k, n) + " is not a [re, im] pair of numbers");
        }
        entries[k] = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
    MatrixFile file;
    file.matrix = build(n, entries, source);
    if (doc.contains("description")) {
        if (!doc["description"].is_string()) {
            throw InputError(source + ": field \"description\" must be a string");
        }
        file.description = doc["description"].get<std::string>();
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) {
            throw InputError(source + ": field \"seed\" must be a non-negative integer");
        }
        file.seed = doc["seed"].get<uint64_t>();
    }
    return file;
}

struct Token {
    std::string_view text;
    size_t line;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    size_t line = 1;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
            }
        } else {
            size_t start = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
                ++i;
            }
            out.push_back({text.substr(start, i - start), line});
        }
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view s, T &out) {
    const char *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

MatrixFile parse_plain(std::string_view text, const std::string &source) {
    const std::vector<Token> tokens = tokenize(text);
    if (tokens.empty()) {
        throw InputError(source + ": empty matrix file");
    }
    int64_t n_signed = 0;
    if (!parse_number(tokens[0].text, n_signed) || n_signed < 1) {
        throw InputError(source + ":" + std::to_string(tokens[0].line) + ": expected a positive dimension, got \"" +
                         std::string(tokens[0].text) + "\"");
    }
    const auto n = static_cast<size_t>(n_signed);
    const size_t expected = 1 + 2 * n * n;
    if (tokens.size() < expected) {
        const size_t k = (tokens.size() - 1) / 2;
        throw InputError(source + ": truncated after " + std::to_string(tokens.size() - 1) + " numbers; " +
                         entry_label(k, n) + " is missing");
    }
    if (tokens.size() > expected) {
        throw InputError(source + ":" + std::to_string(tokens[expected].line) + ": trailing content after " +
                         std::to_string(n * n) + " entries");
    }
    std::vector<Complex> entries(n * n);
    for (size_t k = 0; k < n * n; ++k) {
        double re = 0.0;
        double im = 0.0;
        const Token &tr = tokens[1 + 2 * k];
        const Token &ti = tokens[2 + 2 * k];
        if (!parse_number(tr.text, re) || !parse_number(ti.text, im)) {
            throw InputError(source + ":" + std::to_string(tr.line) + ": " + entry_label(k, n) +
                             " is not a pair of numbers");
        }
        entries[k] = Complex(re, im);
    }
    MatrixFile file;
    file.matrix = build(n, entries, source);
    return file;
}

}  // namespace

MatrixFile parse_matrix(std::string_view text, const std::string &source) {
    size_t first = 0;
    while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) {
        ++first;
    }
    if (first < text.size() && text[first] == '{') {
        return parse_json(text, source);
    }
    return parse_plain(text, source);
}

MatrixFile read_matrix_file(const std::string &path) {
    return parse_matrix(read_text_file(path), path);
}

std::string format_matrix(const MatrixFile &file) {
    const size_t n = file.matrix.size();
    json doc;
    doc["n"] = n;
    json data = json::array();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            Complex z = file.matrix(i, j);
            data.push_back({z.real(), z.imag()});
        }
    }
    doc["data"] = std::move(data);
    if (!file.description.empty()) {
        doc["description"] = file.description;
    }
    if (file.seed) {
        doc["seed"] = *file.seed;
    }
    return doc.dump(1) + "\n";
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    out << content;
    if (!out) {
        throw InputError("write failed for " + path);
    }
}

}  // namespace quasispec::cli
