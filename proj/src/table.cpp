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
#include "causaldb/table.hpp"

#include <charconv>
#include <cstdio>

#include "causaldb/csv.hpp"
#include "causaldb/error.hpp"

namespace causaldb {

namespace {

std::string_view type_name(ColumnType t) {
  switch (t) {
    case ColumnType::u64: return "u64";
    case ColumnType::i64: return "i64";
    case ColumnType::f64: return "f64";
    case ColumnType::string: return "string";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
T parse_number(const std::string& text, const std::string& column, std::size_t line) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw FormatError("line " + std::to_string(line) + ", column " + column + ": bad number '" + text + "'");
  }
  return value;
}

}  // namespace

std::size_t Column::size() const {
  switch (spec.type) {
    case ColumnType::u64: return u64.size();
    case ColumnType::i64: return i64.size();
    case ColumnType::f64: return f64.size();
    case ColumnType::string: return str.size();
  }
  return 0;
}

void Column::mark(bool present) {
  if (spec.nullable) valid.push_back(present);
}

void Column::push_null() {
  if (!spec.nullable) throw FormatError("null in non-nullable column " + spec.name);
  switch (spec.type) {
    case ColumnType::u64: u64.push_back(0); break;
    case ColumnType::i64: i64.push_back(0); break;
    case ColumnType::f64: f64.push_back(0); break;
    case ColumnType::string: str.emplace_back(); break;
  }
  mark(false);
}

std::optional<std::int64_t> Column::opt_i64(std::size_t row) const {
  if (is_null(row)) return std::nullopt;
  return i64.at(row);
}

std::optional<double> Column::opt_f64(std::size_t row) const {
  if (is_null(row)) return std::nullopt;
  return f64.at(row);
}

std::optional<std::string> Column::opt_string(std::size_t row) const {
  if (is_null(row)) return std::nullopt;
  return str.at(row);
}

Table::Table(const std::vector<ColumnSpec>& schema) {
  columns.reserve(schema.size());
  for (const auto& spec : schema) columns.emplace_back(spec);
}

std::vector<ColumnSpec> Table::schema() const {
  std::vector<ColumnSpec> out;
  out.reserve(columns.size());
  for (const auto& c : columns) out.push_back(c.spec);
  return out;
}

const Column& Table::column(std::string_view name) const {
  for (const auto& c : columns) {
    if (c.spec.name == name) return c;
  }
  throw FormatError("missing column '" + std::string(name) + "'");
}

Column& Table::column(std::string_view name) {
  return const_cast<Column&>(static_cast<const Table&>(*this).column(name));
}

void Table::require_schema(const std::vector<ColumnSpec>& expected, std::string_view what) const {
  if (columns.size() != expected.size()) {
    throw FormatError(std::string(what) + ": expected " + std::to_string(expected.size()) + " columns, found " +
                      std::to_string(columns.size()));
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const ColumnSpec& got = columns[i].spec;
    const ColumnSpec& want = expected[i];
    if (got.name != want.name || got.type != want.type || got.nullable != want.nullable) {
      throw FormatError(std::string(what) + ": column " + std::to_string(i + 1) + " is '" + got.name + "' (" +
                        std::string(type_name(got.type)) + (got.nullable ? ", nullable" : "") + "), expected '" +
                        want.name + "' (" + std::string(type_name(want.type)) + (want.nullable ? ", nullable" : "") +
                        ")");
    }
  }
  for (const auto& c : columns) {
    if (c.size() != num_rows()) throw FormatError(std::string(what) + ": ragged columns");
  }
}

std::string write_csv_table(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out += ',';
    csv::append_field(out, table.columns[i].spec.name);
  }
  out += "\r\n";
  const std::size_t rows = table.num_rows();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i > 0) out += ',';
      const Column& c = table.columns[i];
      if (c.is_null(r)) continue;
      switch (c.spec.type) {
        case ColumnType::u64: out += std::to_string(c.u64[r]); break;
        case ColumnType::i64: out += std::to_string(c.i64[r]); break;
        case ColumnType::f64: out += format_double(c.f64[r]); break;
        case ColumnType::string: csv::append_field(out, c.str[r], c.str[r].empty()); break;
      }
    }
    out += "\r\n";
  }
  return out;
}

Table read_csv_table(std::string_view bytes, const std::vector<ColumnSpec>& schema) {
  const auto records = csv::parse(bytes);
  if (records.empty()) throw FormatError("CSV table has no header row");
  const auto& header = records.front();
  if (header.size() != schema.size()) throw FormatError("CSV header has the wrong number of columns");
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (header[i].value != schema[i].name) {
      throw FormatError("CSV header column " + std::to_string(i + 1) + " is '" + header[i].value + "', expected '" +
                        schema[i].name + "'");
    }
  }
  Table table(schema);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != schema.size()) {
      throw FormatError("CSV row " + std::to_string(r + 1) + " has " + std::to_string(rec.size()) + " fields");
    }
    for (std::size_t i = 0; i < schema.size(); ++i) {
      Column& c = table.columns[i];
      const csv::Field& f = rec[i];
      if (f.value.empty() && !f.quoted) {
        if (!c.spec.nullable && c.spec.type != ColumnType::string) {
          throw FormatError("CSV row " + std::to_string(r + 1) + ": empty value in column " + c.spec.name);
        }
        if (c.spec.nullable) {
          c.push_null();
          continue;
        }
      }
      switch (c.spec.type) {
        case ColumnType::u64: c.push_u64(parse_number<std::uint64_t>(f.value, c.spec.name, r + 1)); break;
        case ColumnType::i64: c.push_i64(parse_number<std::int64_t>(f.value, c.spec.name, r + 1)); break;
        case ColumnType::f64: c.push_f64(parse_number<double>(f.value, c.spec.name, r + 1)); break;
        case ColumnType::string: c.push_string(f.value); break;
      }
    }
  }
  return table;
}

}  // namespace causaldb
