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

// RFC 4180 CSV output with locale-independent number formatting.

#ifndef GQRE_TOOLS_HARNESS_CSV_H_
#define GQRE_TOOLS_HARNESS_CSV_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gqre::harness {

// Shortest decimal text that reads back to the same double. Non-finite
// values print as "inf", "-inf" or "nan".
std::string FormatDouble(double value);

// Quotes the field when it contains a comma, a double quote, CR or LF;
// embedded quotes are doubled.
std::string EscapeCsvField(std::string_view field);

// Writes records terminated by CRLF.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& Field(std::string_view text);
  CsvWriter& Field(std::int64_t value);
  CsvWriter& Field(double value);
  // Empty when absent.
  CsvWriter& Field(const std::optional<double>& value);
  void EndRow();

  void Row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
  bool first_ = true;
};

// Splits one CSV document into records. Accepts CRLF or LF endings and
// quoted fields. Throws ValidationError on an unterminated quote.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);

}  // namespace gqre::harness

#endif  // GQRE_TOOLS_HARNESS_CSV_H_
