// Copyright 2026 The GQRE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "harness/csv.h"

#include <charconv>
#include <cmath>
#include <system_error>

#include "gqre/errors.h"

namespace gqre::harness {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const std::to_chars_result r =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (r.ec != std::errc()) throw NumericalError("cannot format double");
  return std::string(buffer, r.ptr);
}

std::string EscapeCsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter& CsvWriter::Field(std::string_view text) {
  if (!first_) out_ << ',';
  out_ << EscapeCsvField(text);
  first_ = false;
  return *this;
}

CsvWriter& CsvWriter::Field(std::int64_t value) {
  return Field(std::string_view(std::to_string(value)));
}

CsvWriter& CsvWriter::Field(double value) {
  return Field(std::string_view(FormatDouble(value)));
}

CsvWriter& CsvWriter::Field(const std::optional<double>& value) {
  return value ? Field(*value) : Field(std::string_view());
}

void CsvWriter::EndRow() {
  out_ << "\r\n";
  first_ = true;
}

void CsvWriter::Row(const std::vector<std::string>& fields) {
  for (const std::string& f : fields) Field(std::string_view(f));
  EndRow();
}

std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < text.size() && text[k + 1] == '"') {
          field += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && k + 1 < text.size() && text[k + 1] == '\n') ++k;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw ValidationError("unterminated quoted CSV field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gqre::harness
