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
#include "causaldb/table_io.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "causaldb/error.hpp"
#include "causaldb/ingest.hpp"

namespace causaldb {

namespace fs = std::filesystem;

namespace {

constexpr const char* kLockName = ".causaldb.lock";
constexpr const char* kManifestName = "manifest.json";

struct TableSlot {
  const char* key;
  const char* stem;
};
constexpr TableSlot kSlots[] = {
    {"nodes", "atlas_nodes"}, {"edges", "atlas_edges"}, {"support", "atlas_edge_support"}, {"scc", "atlas_scc"}};

RelType rel_from(const std::string& s) {
  auto r = parse_rel_type(s);
  if (!r) throw FormatError("unknown rel_type '" + s + "'");
  return *r;
}

Polarity pol_from(const std::string& s) {
  auto p = parse_polarity(s);
  if (!p) throw FormatError("unknown polarity '" + s + "'");
  return *p;
}

/// Exclusive lock file; removed on destruction.
class DirLock {
 public:
  explicit DirLock(fs::path path) : path_(std::move(path)) {
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0) {
      if (errno == EEXIST) throw IoError("output directory is locked by another writer: " + path_.string());
      throw IoError("cannot create lock " + path_.string() + ": " + std::strerror(errno));
    }
  }
  ~DirLock() {
    ::close(fd_);
    std::error_code ec;
    fs::remove(path_, ec);
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  fs::path path_;
  int fd_ = -1;
};

void write_atomic(const fs::path& target, std::string_view bytes) {
  const fs::path tmp = target.parent_path() / ("." + target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + target.string());
  }
}

std::string encode(const Table& t, TableFormat f) {
  return f == TableFormat::parquet ? write_parquet(t) : write_csv_table(t);
}

Table decode(std::string_view bytes, TableFormat f, const std::vector<ColumnSpec>& schema, std::string_view what) {
  Table t = f == TableFormat::parquet ? read_parquet(bytes) : read_csv_table(bytes, schema);
  t.require_schema(schema, what);
  return t;
}

}  // namespace

std::string_view to_string(TableFormat f) { return f == TableFormat::parquet ? "parquet" : "csv"; }

std::optional<TableFormat> parse_table_format(std::string_view name) {
  if (name == "parquet") return TableFormat::parquet;
  if (name == "csv") return TableFormat::csv;
  return std::nullopt;
}

const std::vector<ColumnSpec>& nodes_schema() {
  static const std::vector<ColumnSpec> s = {{"node_id", ColumnType::u64, false},
                                            {"label_canon", ColumnType::string, false},
                                            {"label_examples", ColumnType::string, false},
                                            {"deg_in", ColumnType::i64, false},
                                            {"deg_out", ColumnType::i64, false}};
  return s;
}

const std::vector<ColumnSpec>& edges_schema() {
  static const std::vector<ColumnSpec> s = {
      {"edge_id", ColumnType::u64, false},      {"src_id", ColumnType::u64, false},
      {"dst_id", ColumnType::u64, false},       {"rel_type", ColumnType::string, false},
      {"polarity", ColumnType::string, false},  {"support_lcms", ColumnType::i64, false},
      {"support_docs", ColumnType::i64, false}, {"score_sum", ColumnType::f64, false},
      {"score_mean", ColumnType::f64, false},   {"score_max", ColumnType::f64, false},
      {"pol_mass_inc", ColumnType::f64, false}, {"pol_mass_dec", ColumnType::f64, false},
      {"pol_mass_unk", ColumnType::f64, false}, {"controversy", ColumnType::f64, false}};
  return s;
}

const std::vector<ColumnSpec>& support_schema() {
  static const std::vector<ColumnSpec> s = {
      {"edge_id", ColumnType::u64, false},         {"doc_id", ColumnType::string, false},
      {"atlas_id", ColumnType::string, false},     {"lcm_instance_id", ColumnType::string, false},
      {"score", ColumnType::f64, true},            {"score_raw", ColumnType::f64, true},
      {"coupling", ColumnType::f64, true},         {"weight", ColumnType::f64, false},
      {"polarity", ColumnType::string, false},     {"year", ColumnType::i64, true},
      {"method", ColumnType::string, true},        {"sign", ColumnType::string, true}};
  return s;
}

const std::vector<ColumnSpec>& scc_schema() {
  static const std::vector<ColumnSpec> s = {{"scc_id", ColumnType::i64, false},
                                            {"n_nodes", ColumnType::i64, false},
                                            {"n_edges", ColumnType::i64, false},
                                            {"support_docs", ColumnType::i64, false},
                                            {"top_nodes", ColumnType::string, false}};
  return s;
}

Table nodes_table(const Atlas& atlas) {
  Table t(nodes_schema());
  for (const auto& n : atlas.nodes()) {
    t.columns[0].push_u64(n.node_id.value);
    t.columns[1].push_string(n.label_canon);
    t.columns[2].push_string(join_labels(n.label_examples));
    t.columns[3].push_i64(n.deg_in);
    t.columns[4].push_i64(n.deg_out);
  }
  return t;
}

Table edges_table(const Atlas& atlas) {
  Table t(edges_schema());
  for (const auto& e : atlas.edges()) {
    t.columns[0].push_u64(e.edge_id.value);
    t.columns[1].push_u64(e.src_id.value);
    t.columns[2].push_u64(e.dst_id.value);
    t.columns[3].push_string(std::string(to_string(e.rel_type)));
    t.columns[4].push_string(std::string(to_string(e.polarity)));
    t.columns[5].push_i64(e.support_lcms);
    t.columns[6].push_i64(e.support_docs);
    t.columns[7].push_f64(e.score_sum);
    t.columns[8].push_f64(e.score_mean);
    t.columns[9].push_f64(e.score_max);
    t.columns[10].push_f64(e.pol_mass_inc);
    t.columns[11].push_f64(e.pol_mass_dec);
    t.columns[12].push_f64(e.pol_mass_unk);
    t.columns[13].push_f64(e.controversy);
  }
  return t;
}

Table support_table(const Atlas& atlas) {
  Table t(support_schema());
  for (const auto& s : atlas.support()) {
    t.columns[0].push_u64(s.edge_id.value);
    t.columns[1].push_string(s.doc_id);
    t.columns[2].push_string(s.atlas_id);
    t.columns[3].push_string(s.lcm_instance_id);
    t.columns[4].push(s.score);
    t.columns[5].push(s.score_raw);
    t.columns[6].push(s.coupling);
    t.columns[7].push_f64(s.weight);
    t.columns[8].push_string(std::string(to_string(s.polarity)));
    t.columns[9].push(s.year);
    t.columns[10].push(s.method);
    t.columns[11].push(s.sign);
  }
  return t;
}

Table scc_table(const std::vector<SccRow>& scc) {
  Table t(scc_schema());
  for (const auto& s : scc) {
    t.columns[0].push_i64(s.scc_id);
    t.columns[1].push_i64(s.n_nodes);
    t.columns[2].push_i64(s.n_edges);
    t.columns[3].push_i64(s.support_docs);
    t.columns[4].push_string(join_labels(s.top_nodes));
  }
  return t;
}

Atlas atlas_from_tables(std::string atlas_id, const Table& nodes, const Table& edges, const Table& support,
                        const std::optional<Table>& scc) {
  nodes.require_schema(nodes_schema(), "nodes");
  edges.require_schema(edges_schema(), "edges");
  support.require_schema(support_schema(), "support");

  std::vector<NodeRow> node_rows(nodes.num_rows());
  for (std::size_t r = 0; r < node_rows.size(); ++r) {
    NodeRow& n = node_rows[r];
    n.node_id = NodeId{nodes.columns[0].u64[r]};
    n.label_canon = nodes.columns[1].str[r];
    n.label_examples = split_labels(nodes.columns[2].str[r]);
    n.deg_in = nodes.columns[3].i64[r];
    n.deg_out = nodes.columns[4].i64[r];
  }

  std::vector<EdgeRow> edge_rows(edges.num_rows());
  for (std::size_t r = 0; r < edge_rows.size(); ++r) {
    EdgeRow& e = edge_rows[r];
    e.edge_id = EdgeId{edges.columns[0].u64[r]};
    e.src_id = NodeId{edges.columns[1].u64[r]};
    e.dst_id = NodeId{edges.columns[2].u64[r]};
    e.rel_type = rel_from(edges.columns[3].str[r]);
    e.polarity = pol_from(edges.columns[4].str[r]);
    e.support_lcms = edges.columns[5].i64[r];
    e.support_docs = edges.columns[6].i64[r];
    e.score_sum = edges.columns[7].f64[r];
    e.score_mean = edges.columns[8].f64[r];
    e.score_max = edges.columns[9].f64[r];
    e.pol_mass_inc = edges.columns[10].f64[r];
    e.pol_mass_dec = edges.columns[11].f64[r];
    e.pol_mass_unk = edges.columns[12].f64[r];
    e.controversy = edges.columns[13].f64[r];
  }

  std::vector<SupportRow> support_rows(support.num_rows());
  for (std::size_t r = 0; r < support_rows.size(); ++r) {
    SupportRow& s = support_rows[r];
    s.edge_id = EdgeId{support.columns[0].u64[r]};
    s.doc_id = support.columns[1].str[r];
    s.atlas_id = support.columns[2].str[r];
    s.lcm_instance_id = support.columns[3].str[r];
    s.score = support.columns[4].opt_f64(r);
    s.score_raw = support.columns[5].opt_f64(r);
    s.coupling = support.columns[6].opt_f64(r);
    s.weight = support.columns[7].f64[r];
    s.polarity = pol_from(support.columns[8].str[r]);
    s.year = support.columns[9].opt_i64(r);
    s.method = support.columns[10].opt_string(r);
    s.sign = support.columns[11].opt_string(r);
  }

  std::optional<std::vector<SccRow>> scc_rows;
  if (scc) {
    scc->require_schema(scc_schema(), "scc");
    scc_rows.emplace(scc->num_rows());
    for (std::size_t r = 0; r < scc->num_rows(); ++r) {
      SccRow& s = (*scc_rows)[r];
      s.scc_id = scc->columns[0].i64[r];
      s.n_nodes = scc->columns[1].i64[r];
      s.n_edges = scc->columns[2].i64[r];
      s.support_docs = scc->columns[3].i64[r];
      s.top_nodes = split_labels(scc->columns[4].str[r]);
    }
  }
  return Atlas(std::move(atlas_id), std::move(node_rows), std::move(edge_rows), std::move(support_rows),
               std::move(scc_rows));
}

std::string content_digest(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(hash64(bytes)));
  return buf;
}

nlohmann::ordered_json AtlasManifest::to_json() const {
  nlohmann::ordered_json j;
  j["atlas_id"] = atlas_id;
  j["schema_version"] = schema_version;
  j["format"] = std::string(to_string(format));
  nlohmann::ordered_json tables_json = nlohmann::ordered_json::object();
  for (const auto& slot : kSlots) {
    auto it = tables.find(slot.key);
    if (it == tables.end()) continue;
    tables_json[slot.key] = {{"file", it->second.file}, {"rows", it->second.rows}, {"digest", it->second.digest}};
  }
  j["tables"] = std::move(tables_json);
  j["config"] = config;
  return j;
}

AtlasManifest AtlasManifest::from_json(const nlohmann::json& j) {
  AtlasManifest m;
  try {
    if (!j.is_object()) throw CorruptAtlas("manifest is not a JSON object");
    const int version = j.at("schema_version").get<int>();
    if (version != kSchemaVersion) {
      throw VersionError("unsupported schema_version " + std::to_string(version) + " (expected " +
                         std::to_string(kSchemaVersion) + ")");
    }
    m.schema_version = version;
    m.atlas_id = j.at("atlas_id").get<std::string>();
    auto fmt = parse_table_format(j.at("format").get<std::string>());
    if (!fmt) throw CorruptAtlas("manifest names an unknown table format");
    m.format = *fmt;
    for (const auto& slot : kSlots) {
      const auto& tables = j.at("tables");
      if (!tables.contains(slot.key)) continue;
      const auto& t = tables.at(slot.key);
      m.tables[slot.key] =
          TableEntry{t.at("file").get<std::string>(), t.at("rows").get<std::int64_t>(), t.at("digest").get<std::string>()};
    }
    if (j.contains("config")) m.config = nlohmann::ordered_json::parse(j.at("config").dump());
  } catch (const nlohmann::json::exception& e) {
    throw CorruptAtlas(std::string("malformed manifest: ") + e.what());
  }
  for (const char* key : {"nodes", "edges", "support"}) {
    if (!m.tables.count(key)) throw CorruptAtlas(std::string("manifest lacks the ") + key + " table");
  }
  return m;
}

AtlasManifest write_tables(const Atlas& atlas, const fs::path& dir, TableFormat format,
                           const nlohmann::ordered_json& config) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  DirLock lock(dir / kLockName);

  AtlasManifest manifest;
  manifest.atlas_id = atlas.atlas_id();
  manifest.format = format;
  manifest.config = config;

  const std::string ext = format == TableFormat::parquet ? ".parquet" : ".csv";
  const auto emit = [&](const TableSlot& slot, const Table& table) {
    const std::string bytes = encode(table, format);
    const std::string file = std::string(slot.stem) + ext;
    write_atomic(dir / file, bytes);
    manifest.tables[slot.key] = TableEntry{file, static_cast<std::int64_t>(table.num_rows()), content_digest(bytes)};
  };
  emit(kSlots[0], nodes_table(atlas));
  emit(kSlots[1], edges_table(atlas));
  emit(kSlots[2], support_table(atlas));
  const fs::path scc_path = dir / (std::string(kSlots[3].stem) + ext);
  if (atlas.scc()) {
    emit(kSlots[3], scc_table(*atlas.scc()));
  } else {
    fs::remove(scc_path, ec);  // a stale table would contradict the manifest
  }
  write_atomic(dir / kManifestName, manifest.to_json().dump(2) + "\n");
  return manifest;
}

AtlasManifest read_manifest(const fs::path& dir) {
  const fs::path path = dir / kManifestName;
  if (!fs::exists(path)) throw IoError("no manifest.json in " + dir.string());
  const std::string text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CorruptAtlas(std::string("manifest is not valid JSON: ") + e.what());
  }
  return AtlasManifest::from_json(j);
}

Atlas read_tables(const fs::path& dir) {
  const AtlasManifest m = read_manifest(dir);
  const auto load = [&](const char* key, const std::vector<ColumnSpec>& schema) {
    const TableEntry& entry = m.tables.at(key);
    const fs::path path = dir / entry.file;
    if (!fs::exists(path)) throw CorruptAtlas("table file missing: " + path.string());
    const std::string bytes = read_file(path);
    if (content_digest(bytes) != entry.digest) throw CorruptAtlas("digest mismatch for " + path.string());
    Table t;
    try {
      t = decode(bytes, m.format, schema, key);
    } catch (const FormatError& e) {
      throw CorruptAtlas(path.string() + ": " + e.what());
    }
    if (static_cast<std::int64_t>(t.num_rows()) != entry.rows) {
      throw CorruptAtlas("row count mismatch for " + path.string());
    }
    return t;
  };
  const Table nodes = load("nodes", nodes_schema());
  const Table edges = load("edges", edges_schema());
  const Table support = load("support", support_schema());
  std::optional<Table> scc;
  // The scc table is derived and optional; a missing file only drops it.
  if (m.tables.count("scc") && fs::exists(dir / m.tables.at("scc").file)) scc = load("scc", scc_schema());
  return atlas_from_tables(m.atlas_id, nodes, edges, support, scc);
}

}  // namespace causaldb
