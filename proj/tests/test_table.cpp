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
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>

#include <json.hpp>

#include "causaldb/error.hpp"
#include "causaldb/ingest.hpp"
#include "causaldb/table.hpp"
#include "test_support.hpp"

using namespace causaldb;

namespace {

std::vector<ColumnSpec> mixed_schema() {
  return {{"id", ColumnType::u64, false},    {"delta", ColumnType::i64, false},
          {"x", ColumnType::f64, false},     {"name", ColumnType::string, false},
          {"year", ColumnType::i64, true},   {"score", ColumnType::f64, true},
          {"note", ColumnType::string, true}};
}

Table random_table(std::mt19937_64& rng, std::size_t rows) {
  Table t(mixed_schema());
  std::uniform_real_distribution<double> real(-1e6, 1e6);
  std::bernoulli_distribution coin(0.3);
  const std::vector<std::string> words = {"", "plain", "with,comma", "quote\"d", "line\nbreak", "caf\xC3\xA9", " pad "};
  for (std::size_t r = 0; r < rows; ++r) {
    t.columns[0].push_u64(rng());
    t.columns[1].push_i64(static_cast<std::int64_t>(rng()));
    t.columns[2].push_f64(real(rng));
    t.columns[3].push_string(words[rng() % words.size()]);
    coin(rng) ? t.columns[4].push_null() : t.columns[4].push_i64(1900 + static_cast<std::int64_t>(rng() % 200));
    coin(rng) ? t.columns[5].push_null() : t.columns[5].push_f64(real(rng) / 3);
    coin(rng) ? t.columns[6].push_null() : t.columns[6].push_string(words[rng() % words.size()]);
  }
  return t;
}

}  // namespace

TEST_CASE("parquet round-trips random tables") {
  std::mt19937_64 rng(59);
  for (std::size_t rows : {0, 1, 2, 7, 8, 9, 100, 1000}) {
    const Table t = random_table(rng, rows);
    const std::string bytes = write_parquet(t);
    CHECK(bytes.substr(0, 4) == "PAR1");
    CHECK(bytes.substr(bytes.size() - 4) == "PAR1");
    const Table back = read_parquet(bytes);
    CHECK(back.num_rows() == rows);
    CHECK(back == t);
    CHECK(write_parquet(back) == bytes);
  }
}

TEST_CASE("csv tables round-trip and keep null apart from empty") {
  std::mt19937_64 rng(61);
  for (std::size_t rows : {0, 1, 50, 500}) {
    const Table t = random_table(rng, rows);
    const std::string text = write_csv_table(t);
    const Table back = read_csv_table(text, mixed_schema());
    CHECK(back == t);
    CHECK(write_csv_table(back) == text);
  }
  Table t(mixed_schema());
  t.columns[0].push_u64(1);
  t.columns[1].push_i64(-1);
  t.columns[2].push_f64(0.1);
  t.columns[3].push_string("");
  t.columns[4].push_null();
  t.columns[5].push_null();
  t.columns[6].push_string("");
  CHECK(write_csv_table(t) == "id,delta,x,name,year,score,note\r\n1,-1,0.10000000000000001,\"\",,,\"\"\r\n");
}

TEST_CASE("special doubles survive both codecs") {
  Table t({{"x", ColumnType::f64, false}});
  for (double v : {0.0, -0.0, 1e-310, std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
                   std::numeric_limits<double>::infinity(), 0.1 + 0.2}) {
    t.columns[0].push_f64(v);
  }
  CHECK(read_parquet(write_parquet(t)) == t);
  CHECK(read_csv_table(write_csv_table(t), t.schema()) == t);
}

TEST_CASE("schema checks") {
  Table t(mixed_schema());
  CHECK_NOTHROW(t.require_schema(mixed_schema(), "t"));
  auto other = mixed_schema();
  other[4].nullable = false;
  CHECK_THROWS_AS(t.require_schema(other, "t"), FormatError);
  other.pop_back();
  CHECK_THROWS_AS(t.require_schema(other, "t"), FormatError);
  CHECK_THROWS_AS(t.column("missing"), FormatError);
  CHECK_THROWS_AS(t.columns[0].push_null(), FormatError);
}

TEST_CASE("csv table errors") {
  const auto schema = mixed_schema();
  CHECK_THROWS_AS(read_csv_table("", schema), FormatError);
  CHECK_THROWS_AS(read_csv_table("id,delta\r\n", schema), FormatError);
  CHECK_THROWS_AS(read_csv_table("id,delta,x,name,year,score,note\r\nabc,1,1,a,,,\r\n", schema), FormatError);
  CHECK_THROWS_AS(read_csv_table("id,delta,x,name,year,score,note\r\n1,,1,a,,,\r\n", schema), FormatError);
  CHECK_THROWS_AS(read_csv_table("id,delta,x,name,year,score,note\r\n1,1,1,a,,\r\n", schema), FormatError);
}

TEST_CASE("corrupt parquet is rejected") {
  std::mt19937_64 rng(67);
  const std::string bytes = write_parquet(random_table(rng, 20));
  CHECK_THROWS_AS(read_parquet(""), FormatError);
  CHECK_THROWS_AS(read_parquet("PAR1PAR1"), FormatError);
  CHECK_THROWS_AS(read_parquet(bytes.substr(0, bytes.size() - 1)), FormatError);
  CHECK_THROWS_AS(read_parquet(bytes.substr(0, bytes.size() / 2)), FormatError);
  // Random byte flips must never crash the reader.
  for (int i = 0; i < 300; ++i) {
    std::string copy = bytes;
    copy[rng() % copy.size()] ^= static_cast<char>(1 + rng() % 255);
    try {
      (void)read_parquet(copy);
    } catch (const FormatError&) {
    }
  }
}

TEST_CASE("an external engine reads the parquet output") {
  const std::string python = CAUSALDB_PYTHON;
  if (python.empty() || std::system((python + " -c 'import duckdb' 2>/dev/null").c_str()) != 0) {
    MESSAGE("duckdb not available; skipped");
    return;
  }
  std::mt19937_64 rng(71);
  const Table t = random_table(rng, 257);
  testing::TempDir dir;
  {
    std::ofstream f(dir / "t.parquet", std::ios::binary);
    f << write_parquet(t);
  }
  const auto script = dir / "read.py";
  {
    std::ofstream f(script);
    f << "import duckdb, json, sys\n"
         "rows = duckdb.connect().execute(\"SELECT * FROM read_parquet('" << (dir / "t.parquet").string()
      << "')\").fetchall()\n"
         "json.dump([[repr(v) if isinstance(v, float) else v for v in r] for r in rows], open(sys.argv[1], 'w'))\n";
  }
  const auto out = dir / "rows.json";
  REQUIRE(std::system((python + " " + script.string() + " " + out.string()).c_str()) == 0);
  const auto rows = nlohmann::json::parse(read_file(out));
  REQUIRE(rows.size() == t.num_rows());
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    const auto& row = rows[r];
    CHECK(row[0].get<std::uint64_t>() == t.columns[0].u64[r]);
    CHECK(row[1].get<std::int64_t>() == t.columns[1].i64[r]);
    CHECK(std::stod(row[2].get<std::string>()) == t.columns[2].f64[r]);
    CHECK(row[3].get<std::string>() == t.columns[3].str[r]);
    CHECK(row[4].is_null() == t.columns[4].is_null(r));
    if (!row[4].is_null()) CHECK(row[4].get<std::int64_t>() == t.columns[4].i64[r]);
    CHECK(row[5].is_null() == t.columns[5].is_null(r));
    if (!row[5].is_null()) CHECK(std::stod(row[5].get<std::string>()) == t.columns[5].f64[r]);
    CHECK(row[6].is_null() == t.columns[6].is_null(r));
    if (!row[6].is_null()) CHECK(row[6].get<std::string>() == t.columns[6].str[r]);
  }
}
