/*
 * Copyright (c) 2026 The causaldb Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "causaldb/csv.hpp"

#include "causaldb/error.hpp"

namespace causaldb::csv {

std::vector<Record> parse(std::string_view text) {
  std::vector<Record> records;
  Record record;
  Field field;
  bool in_quotes = false;
  bool field_started = false;

  const auto end_field = [&] {
    record.push_back(std::move(field));
    field = Field{};
    field_started = false;
  };
  const auto end_record = [&] {
    end_field();
    const bool blank = record.size() == 1 && record[0].value.empty() && !record[0].quoted;
    if (!blank) records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.value += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.value += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.quoted) {
          throw FormatError("csv: stray quote inside unquoted field");
        }
        in_quotes = true;
        field.quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field.value += c;
        field_started = true;
        break;
    }
  }
  if (in_quotes) throw FormatError("csv: unterminated quoted field");
  if (field_started || !record.empty()) end_record();
  return records;
}

void append_field(std::string& out, std::string_view value, bool force_quote) {
  const bool needs = force_quote || value.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs) {
    out += value;
    return;
  }
  out += '"';
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

}  // namespace causaldb::csv
