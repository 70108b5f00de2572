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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace causaldb {

enum class ColumnType { u64, i64, f64, string };

struct ColumnSpec {
  std::string name;
  ColumnType type = ColumnType::string;
  bool nullable = false;
  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

/// One typed column. Only the vector matching `spec.type` is populated; null
/// slots hold a default value and are flagged in `valid`, which is empty for
/// non-nullable columns.
struct Column {
  ColumnSpec spec;
  std::vector<std::uint64_t> u64;
  std::vector<std::int64_t> i64;
  std::vector<double> f64;
  std::vector<std::string> str;
  std::vector<bool> valid;

  explicit Column(ColumnSpec s) : spec(std::move(s)) {}

  std::size_t size() const;
  bool is_null(std::size_t row) const { return !valid.empty() && !valid[row]; }

  void push_u64(std::uint64_t v) { u64.push_back(v); mark(true); }
  void push_i64(std::int64_t v) { i64.push_back(v); mark(true); }
  void push_f64(double v) { f64.push_back(v); mark(true); }
  void push_string(std::string v) { str.push_back(std::move(v)); mark(true); }
  void push_null();

  void push(const std::optional<std::int64_t>& v) { v ? push_i64(*v) : push_null(); }
  void push(const std::optional<double>& v) { v ? push_f64(*v) : push_null(); }
  void push(const std::optional<std::string>& v) { v ? push_string(*v) : push_null(); }

  std::optional<std::int64_t> opt_i64(std::size_t row) const;
  std::optional<double> opt_f64(std::size_t row) const;
  std::optional<std::string> opt_string(std::size_t row) const;

  friend bool operator==(const Column&, const Column&) = default;

 private:
  void mark(bool present);
};

struct Table {
  std::vector<Column> columns;

  Table() = default;
  explicit Table(const std::vector<ColumnSpec>& schema);

  std::size_t num_rows() const { return columns.empty() ? 0 : columns.front().size(); }
  std::vector<ColumnSpec> schema() const;
  /// Throws FormatError when the column is missing.
  const Column& column(std::string_view name) const;
  Column& column(std::string_view name);
  /// Throws FormatError unless names, types and nullability match exactly, in order.
  void require_schema(const std::vector<ColumnSpec>& expected, std::string_view what) const;

  friend bool operator==(const Table&, const Table&) = default;
};

// Parquet: one row group, one PLAIN-encoded uncompressed v1 data page per
// column. The reader also accepts multi-page chunks and bit-packed definition
// levels; dictionary pages, compression and nested schemas raise FormatError.
std::string write_parquet(const Table& table);
Table read_parquet(std::string_view bytes);

// CSV: RFC-4180, header row of column names. A null is an empty unquoted cell,
// an empty string is written as "". Doubles use 17 significant digits.
std::string write_csv_table(const Table& table);
Table read_csv_table(std::string_view bytes, const std::vector<ColumnSpec>& schema);

}  // namespace causaldb
