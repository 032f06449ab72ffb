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

#ifndef SENSEL_SYSTEM_IO_HPP
#define SENSEL_SYSTEM_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "sensel/certificates.hpp"
#include "sensel/model.hpp"
#include "sensel/selection.hpp"

namespace sensel {

/// JSON document schema version stamped into every artifact.
inline constexpr const char* kSchemaVersion = "1";

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& field);

/// {"schema":"1","n":...,"F":[[...]],"R_w":[[...]],"Pi0":[[...]],
///  "sensors":[{"H":[[...]],"R_v":[[...]]},...]}
nlohmann::json system_to_json(const LinearSystem& sys);

/// Parses and validates a system document; schema/field problems raise
/// ParseError with the offending field in the message.
LinearSystem system_from_json(const nlohmann::json& j);

LinearSystem load_system(const std::string& path);
void save_system(const LinearSystem& sys, const std::string& path);

nlohmann::json selection_to_json(const SelectionResult& result);
nlohmann::json certificate_to_json(const CertificateReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Minimal RFC-4180 CSV emitter: comma separated, LF line endings, '.'
/// decimal separator, shortest round-trip numbers.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(const std::vector<std::string>& cells);
  const std::string& str() const { return buffer_; }
  void save(const std::string& path) const;

  static std::string format(double v);
  static std::string format(long long v);

 private:
  void append_line(const std::vector<std::string>& cells);
  std::size_t columns_;
  std::string buffer_;
};

}  // namespace sensel

#endif  // SENSEL_SYSTEM_IO_HPP
