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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdt {

/// Fixed 12-significant-digit rendering; negative zero prints as "0".
[[nodiscard]] std::string format_number(double value);

using ReportRows = std::vector<std::pair<std::string, std::string>>;

/// Plain-text table with left-aligned columns.
class TextTable {
  public:
    explicit TextTable(std::vector<std::string> headers);

    void add_row(std::vector<std::string> cells);
    [[nodiscard]] std::string render() const;

  private:
    std::vector<std::string> headers_;
    std::vector<std::vector<std::string>> rows_;
};

/// Command output: ordered key/value rows for machines plus free text for
/// people, and the process exit code.
struct ReportDocument {
    ReportRows machine;
    std::string human;
    int exit_code = 0;

    /// Keys and values must not contain tabs or line breaks.
    void add(std::string key, std::string value);
    void add(std::string key, double value);
    void add(std::string key, std::size_t value);
    void add(std::string key, bool value);
    void add(std::string key, const char *value) {
        add(std::move(key), std::string(value));
    }
};

/// One `key<TAB>value` line per row.
[[nodiscard]] std::string emit_machine(const ReportRows &rows);

/// Inverse of emit_machine. Reading stops at the first empty line.
[[nodiscard]] ReportRows parse_machine(std::string_view text);

enum class OutputFormat { machine, human, both };

/// Throws for anything other than "machine", "human" or "both".
[[nodiscard]] OutputFormat parse_output_format(std::string_view text);

/// The machine block, the human block, or both separated by a blank line.
[[nodiscard]] std::string render(const ReportDocument &doc,
                                 OutputFormat format);

} // namespace qdt
