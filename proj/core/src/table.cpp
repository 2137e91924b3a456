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

#include "spinmod/table.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "spinmod/errors.hpp"

namespace spinmod {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::string &text, const std::string &path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw io_error("cannot open output file " + path);
    }
    out << text;
    if (!out) {
        throw io_error("write failed for " + path);
    }
}

} // namespace

void ResultTable::add_column(std::string name, std::vector<double> values) {
    columns.emplace_back(std::move(name), std::move(values));
}

void ResultTable::add_metadata(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

std::string to_csv(const ResultTable &table) {
    std::ostringstream out;
    for (const auto &[key, value] : table.metadata) {
        out << "# " << key << " = " << value << "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c].first;
    }
    out << "\n";
    std::size_t rows = 0;
    for (const auto &col : table.columns) {
        rows = std::max(rows, col.second.size());
    }
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) {
                out << ",";
            }
            const auto &vals = table.columns[c].second;
            if (r < vals.size()) {
                out << fmt(vals[r]);
            }
        }
        out << "\n";
    }
    return out.str();
}

void write_csv(const ResultTable &table, const std::string &path) {
    write_file(to_csv(table), path);
}

std::string to_json(const ResultTable &table) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json meta;
    for (const auto &[key, value] : table.metadata) {
        meta[key] = value;
    }
    j["metadata"] = std::move(meta);
    nlohmann::ordered_json cols;
    for (const auto &[name, values] : table.columns) {
        cols[name] = values;
    }
    j["columns"] = std::move(cols);
    return j.dump(2) + "\n";
}

void write_json(const ResultTable &table, const std::string &path) {
    write_file(to_json(table), path);
}

std::map<std::string, std::string> parse_csv_metadata(const std::string &csv_text) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(csv_text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] != '#') {
            break;
        }
        std::string body = line.substr(1);
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            continue;
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
    }
    return kv;
}

ResultTable parse_csv(const std::string &csv_text) {
    ResultTable table;
    std::stringstream ss(csv_text);
    std::string line;
    bool header_done = false;
    while (std::getline(ss, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            continue;
        }
        std::stringstream ls(line);
        std::string cell;
        if (!header_done) {
            while (std::getline(ls, cell, ',')) {
                table.columns.emplace_back(cell, std::vector<double>{});
            }
            header_done = true;
            continue;
        }
        std::size_t c = 0;
        while (std::getline(ls, cell, ',')) {
            if (c < table.columns.size() && !cell.empty()) {
                table.columns[c].second.push_back(std::stod(cell));
            }
            ++c;
        }
    }
    return table;
}

} // namespace spinmod
