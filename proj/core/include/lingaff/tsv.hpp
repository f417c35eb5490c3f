#pragma once

// Minimal reader for the tab-separated UTF-8 text files this project
// ingests. Lines end in LF (a trailing CR is stripped for robustness);
// fields are split on literal tabs with no quoting or escaping.

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "lingaff/error.hpp"

namespace lingaff {

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

inline std::vector<std::string> split_spaces(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

/// Stream rows of a TSV file to `row_fn(line_number, fields)`. Line numbers
/// are 1-based and include the header. When `expect_header` is non-empty the
/// first line must match it exactly.
inline void for_each_tsv_row(const std::string& path,
                             const std::vector<std::string>& expect_header,
                             const std::function<void(long, const std::vector<std::string>&)>& row_fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");

    std::string line;
    long line_no = 0;
    bool saw_header = expect_header.empty();
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!saw_header) {
            const auto fields = split_tabs(line);
            if (fields != expect_header) {
                std::string want;
                for (const auto& h : expect_header) {
                    if (!want.empty()) want += ", ";
                    want += h;
                }
                throw ParseError(path + ":1: expected header columns [" + want + "]");
            }
            saw_header = true;
            continue;
        }
        if (line.empty()) continue;
        row_fn(line_no, split_tabs(line));
    }
    if (!saw_header) throw ParseError(path + ": empty file, header missing");
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(path + ": cannot open file for writing");
    out << content;
    if (!out) throw Error(path + ": write failed");
}

}  // namespace lingaff
