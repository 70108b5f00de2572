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
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace causaldb::csv {

struct Field {
  std::string value;
  bool quoted = false;  // distinguishes "" (empty string) from an empty cell
};

using Record = std::vector<Field>;

/// RFC-4180 reader: quoted fields, doubled quotes, CRLF or LF line ends.
/// A trailing newline does not produce an empty record; blank lines are skipped.
std::vector<Record> parse(std::string_view text);

/// Quotes when the value contains a separator, quote, CR/LF, or when
/// `force_quote` is set (used to write non-null empty strings).
void append_field(std::string& out, std::string_view value, bool force_quote = false);

}  // namespace causaldb::csv
