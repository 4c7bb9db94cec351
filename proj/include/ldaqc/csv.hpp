// Copyright 2026 The ldaqc Authors
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
#include <string>
#include <vector>

namespace ldaqc {

/// RFC 4180 tables: comma separated, CRLF-free output (LF line ends), fields
/// quoted only when they contain a comma, quote or line break.
using CsvRow = std::vector<std::string>;

std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& out, const CsvRow& row);

/// Parses a whole document. Accepts LF or CRLF line ends and quoted fields
/// spanning lines. Throws io on an unterminated quote.
std::vector<CsvRow> parse_csv(std::istream& in);

/// Shortest text that reads back to the same double ("nan", "inf", "-inf"
/// for non-finite values).
std::string format_double(double value);
double parse_double(const std::string& text);

}  // namespace ldaqc
