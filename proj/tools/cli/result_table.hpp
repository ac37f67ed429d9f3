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


#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace optscore::cli {

/// A cell is a real value, an integer, a label, or missing ("n/a").
using Cell = std::variant<std::monostate, double, long long, std::string>;

/// Column headers plus rows, kept in insertion order.
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> headers);

  void add_row(std::vector<Cell> row);
  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<std::string>& headers() const { return headers_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  void write_csv(std::ostream& os) const;
  void write_text(std::ostream& os) const;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<Cell>> rows_;
};

/// Reals use "%.9g"; NaN and missing cells print as n/a.
std::string format_cell(const Cell& c);

enum class Format { kCsv, kTable };

void write_table(std::ostream& os, const ResultTable& t, Format f);

}  // namespace optscore::cli
