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


#include "sqthermo/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sqt {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table: row width mismatch");
  rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  if (std::holds_alternative<long>(c)) return std::to_string(std::get<long>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return "";
}

json cell_json(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    return std::isfinite(v) ? json(v) : json(format_double(v));
  }
  if (std::holds_alternative<long>(c)) return std::get<long>(c);
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return nullptr;
}

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_from(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace

std::string Table::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
  return os.str();
}

json Table::to_json() const {
  json rs = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rs.push_back(std::move(r));
  }
  return {{"columns", columns}, {"rows", std::move(rs)}};
}

Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

json to_json(const GaussianState& s) {
  json mean = json::array();
  for (Eigen::Index i = 0; i < s.mean().size(); ++i) mean.push_back(s.mean()(i));
  json cov = json::array();
  for (Eigen::Index i = 0; i < s.cov().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < s.cov().cols(); ++k) row.push_back(s.cov()(i, k));
    cov.push_back(std::move(row));
  }
  return {{"n_modes", s.n_modes()}, {"mean", std::move(mean)}, {"cov", std::move(cov)}};
}

GaussianState gaussian_from_json(const json& j) {
  const int n = j.at("n_modes").get<int>();
  if (n != 1 && n != 2) throw ConfigError("n_modes: must be 1 or 2");
  const auto mean = j.at("mean").get<std::vector<double>>();
  const auto cov = j.at("cov").get<std::vector<std::vector<double>>>();
  const std::size_t d = 2 * static_cast<std::size_t>(n);
  if (mean.size() != d || cov.size() != d) throw ConfigError("mean/cov: wrong size for n_modes");
  PhaseVec m(d);
  PhaseMat c(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    m(i) = mean[i];
    if (cov[i].size() != d) throw ConfigError("cov: rows must have 2*n_modes entries");
    for (std::size_t k = 0; k < d; ++k) c(i, k) = cov[i][k];
  }
  return GaussianState(m, c);
}

json to_json(const Boundaries& b) {
  return {{"omega2_star", b.omega2_star}, {"r_q", opt_json(b.r_q)}, {"r_w", opt_json(b.r_w)},
          {"r_c", opt_json(b.r_c)}};
}

Boundaries boundaries_from_json(const json& j) {
  Boundaries b;
  b.omega2_star = j.at("omega2_star").get<double>();
  b.r_q = opt_from(j, "r_q");
  b.r_w = opt_from(j, "r_w");
  b.r_c = opt_from(j, "r_c");
  return b;
}

json to_json(const CycleReport& c) {
  return {{"n1", c.n1},
          {"n2", c.n2},
          {"W_AB", c.W_AB},
          {"Q_BC", c.Q_BC},
          {"W_CD", c.W_CD},
          {"Q_DA", c.Q_DA},
          {"W_out", c.W_out},
          {"DeltaA_BC", c.DeltaA_BC},
          {"eta", opt_json(c.eta)},
          {"eta_max", opt_json(c.eta_max)},
          {"eta_c", c.eta_c},
          {"eta_ht", c.eta_ht},
          {"Sigma_cyc", c.Sigma_cyc},
          {"region", to_string(c.region)},
          {"signs", c.signs},
          {"boundaries", to_json(c.boundaries)}};
}

CycleReport cycle_report_from_json(const json& j) {
  CycleReport c;
  c.n1 = j.at("n1").get<double>();
  c.n2 = j.at("n2").get<double>();
  c.W_AB = j.at("W_AB").get<double>();
  c.Q_BC = j.at("Q_BC").get<double>();
  c.W_CD = j.at("W_CD").get<double>();
  c.Q_DA = j.at("Q_DA").get<double>();
  c.W_out = j.at("W_out").get<double>();
  c.DeltaA_BC = j.at("DeltaA_BC").get<double>();
  c.eta = opt_from(j, "eta");
  c.eta_max = opt_from(j, "eta_max");
  c.eta_c = j.at("eta_c").get<double>();
  c.eta_ht = j.at("eta_ht").get<double>();
  c.Sigma_cyc = j.at("Sigma_cyc").get<double>();
  c.region = region_from_string(j.at("region").get<std::string>());
  c.signs = j.at("signs").get<std::string>();
  c.boundaries = boundaries_from_json(j.at("boundaries"));
  return c;
}

json to_json(const CycleParams& p) {
  return {{"beta1", p.beta1}, {"beta2", p.beta2}, {"omega1", p.omega1},
          {"omega2", p.omega2}, {"r", p.sq.r()}, {"theta", p.sq.theta()}};
}

json to_json(const FreeEnergySplit& f) {
  return {{"carnot_term", f.carnot_term},
          {"squeezing_term", f.squeezing_term},
          {"DeltaF2", f.DeltaF2},
          {"asymmetry_exceeds_tanh_r", f.asymmetry_exceeds_tanh_r}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ConfigReader::ConfigReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
  if (!obj_.is_object()) {
    throw ConfigError((path_.empty() ? std::string("config") : path_) + ": expected a JSON object");
  }
}

std::string ConfigReader::field(const std::string& key) const {
  return path_.empty() ? key : path_ + "." + key;
}

void ConfigReader::fail(const std::string& key, const std::string& msg) const {
  throw ConfigError(field(key) + ": " + msg);
}

bool ConfigReader::has(const std::string& key) const { return obj_.contains(key); }

void ConfigReader::allow(const std::string& key) { seen_.push_back(key); }

const json* ConfigReader::find(const std::string& key) {
  seen_.push_back(key);
  auto it = obj_.find(key);
  if (it == obj_.end() || it->is_null()) return nullptr;
  return &*it;
}

double ConfigReader::number(const std::string& key, double fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_number()) fail(key, "expected a number");
  const double x = v->get<double>();
  if (!std::isfinite(x)) fail(key, "must be finite");
  return x;
}

long ConfigReader::integer(const std::string& key, long fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(key, "expected an integer");
  return v->get<long>();
}

std::string ConfigReader::string(const std::string& key, const std::string& fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_string()) fail(key, "expected a string");
  return v->get<std::string>();
}

std::vector<double> ConfigReader::numbers(const std::string& key,
                                          const std::vector<double>& fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_array() || v->empty()) fail(key, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& e : *v) {
    if (!e.is_number()) fail(key, "expected a non-empty array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

ConfigReader ConfigReader::child(const std::string& key) {
  const json* v = find(key);
  if (!v) return ConfigReader(json::object(), field(key));
  if (!v->is_object()) fail(key, "expected a JSON object");
  return ConfigReader(*v, field(key));
}

std::optional<json> ConfigReader::raw(const std::string& key) {
  const json* v = find(key);
  if (!v) return std::nullopt;
  return *v;
}

void ConfigReader::finish() const {
  for (auto it = obj_.begin(); it != obj_.end(); ++it) {
    if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end()) {
      throw ConfigError(field(it.key()) + ": unknown key");
    }
  }
}

double ConfigReader::positive(const std::string& key, double fallback) {
  const double v = number(key, fallback);
  if (!(v > 0.0)) fail(key, "must be > 0");
  return v;
}

double ConfigReader::non_negative(const std::string& key, double fallback) {
  const double v = number(key, fallback);
  if (!(v >= 0.0)) fail(key, "must be >= 0");
  return v;
}

}  // namespace sqt
