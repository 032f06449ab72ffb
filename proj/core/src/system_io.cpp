// Copyright 2026 The Authors.
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

#include "sensel/system_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace sensel {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("field '" + field + "' must be a non-empty array of rows");
  }
  const int rows = static_cast<int>(j.size());
  if (!j[0].is_array()) throw ParseError("field '" + field + "' rows must be arrays");
  const int cols = static_cast<int>(j[0].size());
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) {
      throw ParseError("field '" + field + "' row " + std::to_string(i) +
                       " has inconsistent length");
    }
    for (int c = 0; c < cols; ++c) {
      if (!j[i][c].is_number()) {
        throw ParseError("field '" + field + "' entry (" + std::to_string(i) + "," +
                         std::to_string(c) + ") is not a number");
      }
      m(i, c) = j[i][c].get<double>();
    }
  }
  return m;
}

json system_to_json(const LinearSystem& sys) {
  json j;
  j["schema"] = kSchemaVersion;
  j["n"] = sys.n;
  j["F"] = matrix_to_json(sys.F);
  j["R_w"] = matrix_to_json(sys.R_w);
  j["Pi0"] = matrix_to_json(sys.Pi0);
  json sensors = json::array();
  for (const Sensor& s : sys.sensors) {
    json entry;
    entry["H"] = matrix_to_json(s.H);
    entry["R_v"] = matrix_to_json(s.R_v);
    sensors.push_back(std::move(entry));
  }
  j["sensors"] = std::move(sensors);
  return j;
}

LinearSystem system_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("system document must be a JSON object");
  for (const char* field : {"n", "F", "R_w", "Pi0", "sensors"}) {
    if (!j.contains(field)) {
      throw ParseError("system document is missing field '" + std::string(field) + "'");
    }
  }
  LinearSystem sys;
  if (!j["n"].is_number_integer()) throw ParseError("field 'n' must be an integer");
  sys.n = j["n"].get<int>();
  sys.F = matrix_from_json(j["F"], "F");
  sys.R_w = matrix_from_json(j["R_w"], "R_w");
  sys.Pi0 = matrix_from_json(j["Pi0"], "Pi0");
  if (!j["sensors"].is_array()) throw ParseError("field 'sensors' must be an array");
  int index = 0;
  for (const json& entry : j["sensors"]) {
    if (!entry.is_object() || !entry.contains("H") || !entry.contains("R_v")) {
      throw ParseError("sensor " + std::to_string(index) + " must have fields 'H' and 'R_v'");
    }
    Sensor s;
    s.H = matrix_from_json(entry["H"], "sensors[" + std::to_string(index) + "].H");
    s.R_v = matrix_from_json(entry["R_v"], "sensors[" + std::to_string(index) + "].R_v");
    sys.sensors.push_back(std::move(s));
    ++index;
  }
  sys.validate();
  return sys;
}

LinearSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open system file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
  return system_from_json(j);
}

void save_system(const LinearSystem& sys, const std::string& path) {
  write_text_file(path, system_to_json(sys).dump(2) + "\n");
}

json selection_to_json(const SelectionResult& result) {
  json j;
  j["schema"] = kSchemaVersion;
  j["chosen"] = result.chosen;
  j["objective_trajectory"] = result.objective_trajectory;
  j["gains"] = result.gains;
  j["value"] = result.objective_trajectory.empty() ? 0.0 : result.objective_trajectory.back();
  return j;
}

json certificate_to_json(const CertificateReport& report) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = to_string(report.kind);
  j["r"] = report.r;
  j["s"] = report.s;
  j["alpha_bound"] = report.alpha_bound;
  j["epsilon_bound"] = report.epsilon_bound;
  j["per_step_alpha"] = report.per_step_alpha;
  j["per_step_epsilon"] = report.per_step_epsilon;
  j["guarantee_multiplicative"] = report.guarantee_multiplicative;
  j["guarantee_additive_slack"] = report.guarantee_additive_slack;
  j["numerical_range_delta"] = report.numerical_range_delta;
  json details = json::array();
  for (const StepSpectral& d : report.spectral_details) {
    details.push_back({{"step", d.step},
                       {"lambda_min_m_empty", d.lambda_min_m_empty},
                       {"lambda_max_m_total", d.lambda_max_m_total}});
  }
  j["spectral_details"] = std::move(details);
  j["epsilon_bound_raw"] = report.epsilon_bound_raw;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  append_line(header);
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw Error("CSV row has the wrong number of cells");
  append_line(cells);
}

void CsvWriter::append_line(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
}

void CsvWriter::save(const std::string& path) const { write_text_file(path, buffer_); }

std::string CsvWriter::format(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string CsvWriter::format(long long v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace sensel
