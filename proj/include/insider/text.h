// Copyright 2026 The insider-graph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small text helpers shared by the CSV readers and writers.

#ifndef INSIDER_TEXT_H_
#define INSIDER_TEXT_H_

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace insider {

// Splits one CSV record. Double-quoted fields may contain commas and doubled
// quotes (""). Returns nullopt for an unterminated quote.
std::optional<std::vector<std::string>> split_csv_record(std::string_view line);

// Quotes a field only when it needs it.
std::string escape_csv_field(std::string_view field);

std::string join_csv_record(const std::vector<std::string>& fields);

// Reads one line, stripping a trailing '\r'. Returns false at end of stream.
bool read_line(std::istream& in, std::string& line);

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

}  // namespace insider

#endif  // INSIDER_TEXT_H_
