// Copyright 2026 The qdt Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdt/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qdt/error.hpp"

namespace qdt {

namespace {

bool is_clean(std::string_view s) {
    return s.find_first_of("\t\r\n") == std::string_view::npos;
}

} // namespace

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    if (value == 0.0) {
        return "0";
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    std::string out(buffer);
    // Values that round to zero at 12 digits never print a sign.
    if (out == "-0") {
        out = "0";
    }
    return out;
}

TextTable::TextTable(std::vector<std::string> headers)
    : headers_(std::move(headers)) {}

void TextTable::add_row(std::vector<std::string> cells) {
    require(cells.size() == headers_.size(), "table row width mismatch");
    rows_.push_back(std::move(cells));
}

std::string TextTable::render() const {
    std::vector<std::size_t> width(headers_.size());
    for (std::size_t c = 0; c < headers_.size(); ++c) {
        width[c] = headers_[c].size();
        for (const auto &row : rows_) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    std::string out;
    const auto line = [&](const std::vector<std::string> &cells) {
        std::string text;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            text += cells[c];
            if (c + 1 < cells.size()) {
                text.append(width[c] - cells[c].size() + 2, ' ');
            }
        }
        out += text + "\n";
    };
    line(headers_);
    std::size_t total = 0;
    for (std::size_t c = 0; c < width.size(); ++c) {
        total += width[c] + (c + 1 < width.size() ? 2 : 0);
    }
    out += std::string(total, '-') + "\n";
    for (const auto &row : rows_) {
        line(row);
    }
    return out;
}

void ReportDocument::add(std::string key, std::string value) {
    require(!key.empty() && is_clean(key) && is_clean(value),
            "report keys and values must be single-line and tab-free");
    machine.emplace_back(std::move(key), std::move(value));
}

void ReportDocument::add(std::string key, double value) {
    add(std::move(key), format_number(value));
}

void ReportDocument::add(std::string key, std::size_t value) {
    add(std::move(key), std::to_string(value));
}

void ReportDocument::add(std::string key, bool value) {
    add(std::move(key), std::string(value ? "true" : "false"));
}

std::string emit_machine(const ReportRows &rows) {
    std::string out;
    for (const auto &[key, value] : rows) {
        out += key;
        out += '\t';
        out += value;
        out += '\n';
    }
    return out;
}

ReportRows parse_machine(std::string_view text) {
    ReportRows rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const std::string_view line = text.substr(pos, end - pos);
        if (line.empty()) {
            break;
        }
        const std::size_t tab = line.find('\t');
        require(tab != std::string_view::npos &&
                    line.find('\t', tab + 1) == std::string_view::npos,
                "malformed machine record: " + std::string(line));
        rows.emplace_back(std::string(line.substr(0, tab)),
                          std::string(line.substr(tab + 1)));
        pos = end + 1;
    }
    return rows;
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "machine") {
        return OutputFormat::machine;
    }
    if (text == "human") {
        return OutputFormat::human;
    }
    require(text == "both", "format must be machine, human or both");
    return OutputFormat::both;
}

std::string render(const ReportDocument &doc, OutputFormat format) {
    switch (format) {
    case OutputFormat::machine:
        return emit_machine(doc.machine);
    case OutputFormat::human:
        return doc.human;
    case OutputFormat::both:
        return emit_machine(doc.machine) + "\n" + doc.human;
    }
    return {};
}

} // namespace qdt
