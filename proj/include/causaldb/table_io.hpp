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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "causaldb/atlas.hpp"
#include "causaldb/table.hpp"

namespace causaldb {

inline constexpr int kSchemaVersion = 1;

enum class TableFormat { parquet, csv };

std::string_view to_string(TableFormat f);
std::optional<TableFormat> parse_table_format(std::string_view name);

const std::vector<ColumnSpec>& nodes_schema();
const std::vector<ColumnSpec>& edges_schema();
const std::vector<ColumnSpec>& support_schema();
const std::vector<ColumnSpec>& scc_schema();

Table nodes_table(const Atlas& atlas);
Table edges_table(const Atlas& atlas);
Table support_table(const Atlas& atlas);
Table scc_table(const std::vector<SccRow>& scc);

/// Inverse of the *_table functions. Checks the schema and throws
/// FormatError on bad enum names, IntegrityError on inconsistent tables.
Atlas atlas_from_tables(std::string atlas_id, const Table& nodes, const Table& edges, const Table& support,
                        const std::optional<Table>& scc);

struct TableEntry {
  std::string file;
  std::int64_t rows = 0;
  std::string digest;
  friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

struct AtlasManifest {
  std::string atlas_id;
  int schema_version = kSchemaVersion;
  TableFormat format = TableFormat::parquet;
  std::map<std::string, TableEntry> tables;  // keys: nodes, edges, support, scc
  nlohmann::ordered_json config = nlohmann::ordered_json::object();

  nlohmann::ordered_json to_json() const;
  /// Throws VersionError for another schema_version, CorruptAtlas when malformed.
  static AtlasManifest from_json(const nlohmann::json& j);
};

/// "fnv1a64:" followed by 16 hex digits of the byte hash.
std::string content_digest(std::string_view bytes);

/// Writes the four tables (scc only when present) and manifest.json. Each file
/// goes to a temporary name first and is renamed into place; a lock file
/// keeps a second writer out. Throws IoError.
AtlasManifest write_tables(const Atlas& atlas, const std::filesystem::path& dir, TableFormat format,
                           const nlohmann::ordered_json& config = nlohmann::ordered_json::object());

AtlasManifest read_manifest(const std::filesystem::path& dir);

/// Verifies digests and row counts (CorruptAtlas), schema_version
/// (VersionError) and referential integrity (IntegrityError).
Atlas read_tables(const std::filesystem::path& dir);

}  // namespace causaldb
