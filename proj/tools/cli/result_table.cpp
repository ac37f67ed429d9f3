// Copyright 2026 The Optscore Authors.
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


#include "result_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace optscore::cli {

ResultTable::ResultTable(std::vector<std::string> headers) : headers_(std::move(headers)) {}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != headers_.size()) {
    throw std::logic_error("result row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(headers_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (std::isnan(*d)) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", *d == 0.0 ? 0.0 : *d);  // no "-0"
    return buf;
  }
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const std::string* s = std::get_if<std::string>(&c)) return *s;
  return "n/a";
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

void ResultTable::write_csv(std::ostream& os) const {
  for (std::size_t j = 0; j < headers_.size(); ++j) os << (j ? "," : "") << csv_escape(headers_[j]);
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_escape(format_cell(row[j]));
    os << '\n';
  }
}

void ResultTable::write_text(std::ostream& os) const {
  std::vector<std::size_t> width(headers_.size());
  for (std::size_t j = 0; j < headers_.size(); ++j) width[j] = headers_[j].size();
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], format_cell(row[j]).size());
  }
  auto line = [&](auto&& text_of) {
    for (std::size_t j = 0; j < headers_.size(); ++j) {
      const std::string s = text_of(j);
      os << (j ? "  " : "") << s;
      if (j + 1 < headers_.size()) os << std::string(width[j] - s.size(), ' ');
    }
    os << '\n';
  };
  line([&](std::size_t j) { return headers_[j]; });
  line([&](std::size_t j) { return std::string(width[j], '-'); });
  for (const auto& row : rows_) line([&](std::size_t j) { return format_cell(row[j]); });
}

void write_table(std::ostream& os, const ResultTable& t, Format f) {
  if (f == Format::kCsv) t.write_csv(os);
  else t.write_text(os);
}

}  // namespace optscore::cli
