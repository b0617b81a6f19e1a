// Copyright 2026 The sqthermo Authors
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


// Serialization: CSV tables, JSON conversions of states and reports, and a
// strict JSON config reader that reports errors by field path.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sqthermo/gaussian.hpp"
#include "sqthermo/otto.hpp"

namespace sqt {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 17 significant digits.
std::string format_double(double v);

using Cell = std::variant<std::monostate, double, long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  // Header row, comma separated, empty field for a missing value.
  std::string to_csv() const;
  // {"columns": [...], "rows": [[...], ...]}, missing values as null.
  json to_json() const;
};

Cell optional_cell(const std::optional<double>& v);

json to_json(const GaussianState& s);
GaussianState gaussian_from_json(const json& j);

json to_json(const Boundaries& b);
Boundaries boundaries_from_json(const json& j);
json to_json(const CycleReport& c);
CycleReport cycle_report_from_json(const json& j);
json to_json(const CycleParams& p);
json to_json(const FreeEnergySplit& f);

// Stable key order (sorted), 2-space indent, trailing newline.
std::string dump(const json& j);

// Reads fields of a JSON object by name, validating as it goes. finish()
// rejects any key that was never read.
class ConfigReader {
 public:
  ConfigReader(const json& obj, std::string path);

  bool has(const std::string& key) const;
  double number(const std::string& key, double fallback);
  long integer(const std::string& key, long fallback);
  std::string string(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  ConfigReader child(const std::string& key);
  std::optional<json> raw(const std::string& key);
  // Marks key as known without reading it.
  void allow(const std::string& key);
  void finish() const;

  std::string field(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;

  double positive(const std::string& key, double fallback);
  double non_negative(const std::string& key, double fallback);

 private:
  const json* find(const std::string& key);
  json obj_;
  std::string path_;
  std::vector<std::string> seen_;
};

}  // namespace sqt
