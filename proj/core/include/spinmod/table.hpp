// Copyright 2026 The spinmod Authors
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

#ifndef SPINMOD_TABLE_HPP
#define SPINMOD_TABLE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace spinmod {

// Named real columns plus a metadata echo. The metadata block of an emitted
// CSV is itself a valid run configuration: stripping the leading "# " from the
// header lines reproduces the exact table.
struct ResultTable {
    std::vector<std::pair<std::string, std::vector<double>>> columns;
    std::vector<std::pair<std::string, std::string>> metadata;

    void add_column(std::string name, std::vector<double> values);
    void add_metadata(std::string key, std::string value);
};

// CSV dialect: '#'-prefixed metadata lines ("# key = value"), one header row,
// comma separator, '.' decimal, %.17g doubles (lossless round-trip).
std::string to_csv(const ResultTable &table);
void write_csv(const ResultTable &table, const std::string &path);

// JSON: {"metadata": {...}, "columns": {name: [...], ...}}.
std::string to_json(const ResultTable &table);
void write_json(const ResultTable &table, const std::string &path);

// Extracts the "# key = value" metadata block from CSV text.
std::map<std::string, std::string> parse_csv_metadata(const std::string &csv_text);

// Parses the numeric body of an emitted CSV back into columns.
ResultTable parse_csv(const std::string &csv_text);

} // namespace spinmod

#endif
