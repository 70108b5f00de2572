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
#include "causaldb/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "causaldb/analytics.hpp"
#include "causaldb/builder.hpp"
#include "causaldb/error.hpp"
#include "causaldb/ingest.hpp"
#include "causaldb/merge.hpp"
#include "causaldb/query.hpp"
#include "causaldb/report.hpp"
#include "causaldb/sql.hpp"
#include "causaldb/table_io.hpp"

namespace causaldb {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::optional<std::set<RelType>> parse_rel_list(const std::vector<std::string>& names, const char* flag) {
  if (names.empty()) return std::nullopt;
  std::set<RelType> out;
  for (const auto& n : names) {
    auto rel = parse_rel_type(n);
    if (!rel) throw UsageError(std::string(flag) + ": unknown relation type '" + n + "'");
    out.insert(*rel);
  }
  return out;
}

TableFormat parse_format(const std::string& name) {
  auto f = parse_table_format(name);
  if (!f) throw UsageError("--format must be parquet or csv");
  return *f;
}

std::string user_label(const std::string& raw, const char* flag) {
  try {
    return canon_label(raw);
  } catch (const CanonError&) {
    throw UsageError(std::string(flag) + ": label is empty after canonicalization");
  }
}

ojson rel_list_json(const std::optional<std::set<RelType>>& rels) {
  if (!rels) return nullptr;
  ojson arr = ojson::array();
  for (RelType r : *rels) arr.push_back(std::string(to_string(r)));
  return arr;
}

ojson config_echo(const BuildConfig& cfg, const std::string& input, const std::string& lexicon_path) {
  ojson j;
  j["input"] = input;
  j["tau"] = cfg.tau;
  j["rel_whitelist"] = rel_list_json(cfg.rel_whitelist);
  j["rel_blacklist"] = rel_list_json(cfg.rel_blacklist);
  j["rel_lexicon"] = lexicon_path.empty() ? ojson(nullptr) : ojson(lexicon_path);
  j["default_weight"] = cfg.default_weight;
  j["epsilon"] = cfg.epsilon;
  j["max_radius"] = cfg.max_radius ? ojson(*cfg.max_radius) : ojson(nullptr);
  j["min_model_size"] = cfg.min_model_size ? ojson(*cfg.min_model_size) : ojson(nullptr);
  return j;
}

void flush_warnings(const Diagnostics& diag, std::ostream& err) {
  for (const auto& w : diag.warnings) err << "warning: " << w << "\n";
  if (diag.failed_files > 0) err << "warning: " << diag.failed_files << " file(s) failed to parse\n";
}

void report_written(const Atlas& atlas, const fs::path& dir, std::ostream& out) {
  out << "wrote atlas '" << atlas.atlas_id() << "' to " << dir.string() << ": " << atlas.nodes().size() << " nodes, "
      << atlas.edges().size() << " edges, " << atlas.support().size() << " support rows, "
      << (atlas.scc() ? atlas.scc()->size() : 0) << " SCCs\n";
}

std::string default_atlas_id(const fs::path& out_dir) {
  const fs::path clean = out_dir.lexically_normal();
  std::string name = clean.filename().string();
  if (name.empty()) name = clean.parent_path().filename().string();
  return name.empty() || name == "." || name == ".." ? "atlas" : name;
}

// ---- row printers

ojson edge_rows_json(const std::vector<EdgeResultRow>& rows) {
  ojson arr = ojson::array();
  for (const auto& r : rows) {
    arr.push_back({{"edge_id", r.edge_id.value},
                   {"rel_type", std::string(to_string(r.rel_type))},
                   {"src", r.src},
                   {"dst", r.dst},
                   {"support_lcms", r.support_lcms},
                   {"score_sum", r.score_sum}});
  }
  return arr;
}

void print_edge_rows(const std::vector<EdgeResultRow>& rows, std::ostream& out) {
  out << "rank | edge_id | rel_type | src | dst | support_lcms | score_sum\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << i + 1 << " | " << r.edge_id.value << " | " << to_string(r.rel_type) << " | " << r.src << " | " << r.dst
        << " | " << r.support_lcms << " | " << fixed4(r.score_sum) << "\n";
  }
}

struct QueryParams {
  std::string kind;
  std::string src;
  std::size_t limit = 20;
  std::optional<std::uint64_t> edge_id;
  bool json = false;
};

void run_view_query(QueryKind kind, const EdgeView& view, const QueryParams& p, std::ostream& out) {
  const Atlas& atlas = view.base();
  switch (kind) {
    case QueryKind::backbone: {
      const auto rows = backbone(view, p.limit);
      if (p.json) {
        out << edge_rows_json(rows).dump(2) << "\n";
      } else {
        print_edge_rows(rows, out);
      }
      return;
    }
    case QueryKind::mechanisms: {
      if (p.src.empty()) throw UsageError("mechanisms needs --src LABEL");
      const auto rows = mechanisms(view, user_label(p.src, "--src"), p.limit);
      if (p.json) {
        out << edge_rows_json(rows).dump(2) << "\n";
      } else {
        print_edge_rows(rows, out);
      }
      return;
    }
    case QueryKind::hubs: {
      if (p.limit == 0) throw UsageError("--limit must be >= 1");
      const auto hubs = hub_ranking(view, p.limit);
      if (p.json) {
        ojson arr = ojson::array();
        for (const auto& h : hubs) {
          arr.push_back({{"node_id", h.node.value}, {"src", h.label}, {"out_mass", h.out_mass},
                         {"out_degree", h.out_degree}});
        }
        out << arr.dump(2) << "\n";
      } else {
        out << "rank | src | out_mass | out_degree\n";
        for (std::size_t i = 0; i < hubs.size(); ++i) {
          out << i + 1 << " | " << hubs[i].label << " | " << fixed4(hubs[i].out_mass) << " | " << hubs[i].out_degree
              << "\n";
        }
      }
      return;
    }
    case QueryKind::two_hop: {
      const auto paths = two_hop_paths(view, p.limit);
      if (p.json) {
        ojson arr = ojson::array();
        for (const auto& x : paths) {
          arr.push_back({{"a", x.a}, {"r1", std::string(to_string(x.r1))}, {"b", x.b},
                         {"r2", std::string(to_string(x.r2))}, {"c", x.c}, {"path_score", x.path_score}});
        }
        out << arr.dump(2) << "\n";
      } else {
        out << "a | r1 | b | r2 | c | path_score\n";
        for (const auto& x : paths) {
          out << x.a << " | " << to_string(x.r1) << " | " << x.b << " | " << to_string(x.r2) << " | " << x.c << " | "
              << fixed4(x.path_score) << "\n";
        }
      }
      return;
    }
    case QueryKind::mutual: {
      const auto rows = mutual_influence(view);
      if (p.json) {
        ojson arr = ojson::array();
        for (const auto& x : rows) {
          arr.push_back({{"a", x.a}, {"r1", std::string(to_string(x.r1))}, {"b", x.b},
                         {"r2", std::string(to_string(x.r2))}});
        }
        out << arr.dump(2) << "\n";
      } else {
        out << "a | r1 | b | r2\n";
        for (const auto& x : rows) {
          out << x.a << " | " << to_string(x.r1) << " | " << x.b << " | " << to_string(x.r2) << "\n";
        }
      }
      return;
    }
    case QueryKind::provenance: {
      if (!p.edge_id) throw UsageError("provenance needs --edge-id ID");
      const auto rows = provenance(atlas, EdgeId{*p.edge_id});
      if (p.json) {
        ojson arr = ojson::array();
        for (const auto& s : rows) {
          ojson o;
          o["edge_id"] = s.edge_id.value;
          o["doc_id"] = s.doc_id;
          o["atlas_id"] = s.atlas_id;
          o["lcm_instance_id"] = s.lcm_instance_id;
          o["score"] = s.score ? ojson(*s.score) : ojson(nullptr);
          o["score_raw"] = s.score_raw ? ojson(*s.score_raw) : ojson(nullptr);
          o["coupling"] = s.coupling ? ojson(*s.coupling) : ojson(nullptr);
          o["weight"] = s.weight;
          o["polarity"] = std::string(to_string(s.polarity));
          arr.push_back(std::move(o));
        }
        out << arr.dump(2) << "\n";
      } else {
        out << "doc_id | atlas_id | lcm_instance_id | weight | polarity\n";
        for (const auto& s : rows) {
          out << s.doc_id << " | " << s.atlas_id << " | " << s.lcm_instance_id << " | " << fixed4(s.weight) << " | "
              << to_string(s.polarity) << "\n";
        }
      }
      return;
    }
    case QueryKind::scc: {
      if (p.limit == 0) throw UsageError("--limit must be >= 1");
      std::vector<SccRow> rows = atlas.scc() ? *atlas.scc() : compute_scc(atlas);
      if (rows.size() > p.limit) rows.resize(p.limit);
      if (p.json) {
        ojson arr = ojson::array();
        for (const auto& s : rows) {
          arr.push_back({{"scc_id", s.scc_id}, {"n_nodes", s.n_nodes}, {"n_edges", s.n_edges},
                         {"support_docs", s.support_docs}, {"top_nodes", s.top_nodes}});
        }
        out << arr.dump(2) << "\n";
      } else {
        out << "scc_id | n_nodes | n_edges | support_docs | top_nodes\n";
        for (const auto& s : rows) {
          out << s.scc_id << " | " << s.n_nodes << " | " << s.n_edges << " | " << s.support_docs << " | "
              << join_labels(s.top_nodes) << "\n";
        }
      }
      return;
    }
    case QueryKind::do_cut:
    case QueryKind::soft_do: throw UsageError("use the intervene subcommand for interventions");
  }
}

QueryKind require_kind(const std::string& name) {
  auto k = parse_query_kind(name);
  if (!k) throw UsageError("unknown query kind '" + name + "'");
  return *k;
}

Intervention parse_soft(const std::string& spec) {
  const auto colon = spec.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
    throw UsageError("--soft expects LABEL:LAMBDA, got '" + spec + "'");
  }
  double lambda = 0;
  try {
    std::size_t used = 0;
    lambda = std::stod(spec.substr(colon + 1), &used);
    if (used != spec.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw UsageError("--soft: bad lambda in '" + spec + "'");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw UsageError("--soft: lambda must be >= 0");
  return Intervention{spec.substr(0, colon), lambda};
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile causal model collections into a queryable causal atlas", "causaldb"};
  app.require_subcommand(1);

  // build
  std::string runs_root, out_dir, atlas_id, format = "parquet", lexicon_path;
  std::vector<std::string> whitelist, blacklist;
  BuildConfig cfg;
  std::optional<std::int64_t> max_radius, min_model_size;
  auto* build = app.add_subcommand("build", "Compile a runs root of LCM folders into an atlas");
  build->add_option("runs_root", runs_root, "Directory with one folder per document")->required();
  build->add_option("-o,--output", out_dir, "Output directory")->required();
  build->add_option("--tau", cfg.tau, "Minimum raw edges per LCM");
  build->add_option("--rel-whitelist", whitelist, "Relation types to keep")->delimiter(',');
  build->add_option("--rel-blacklist", blacklist, "Relation types to drop")->delimiter(',');
  build->add_option("--rel-lexicon", lexicon_path, "CSV of phrase,RELTYPE,polarity overrides");
  build->add_option("--atlas-id", atlas_id, "Atlas id (default: output directory name)");
  build->add_option("--format", format, "parquet or csv");
  build->add_option("--default-weight", cfg.default_weight, "Weight of LCMs without a score");
  build->add_option("--max-radius", max_radius, "Skip LCMs with a larger radius");
  build->add_option("--min-model-size", min_model_size, "Skip LCMs with a smaller model size");

  // ingest-claims
  std::string claims_csv;
  auto* claims = app.add_subcommand("ingest-claims", "Compile a causal-claims CSV into an atlas");
  claims->add_option("claims_csv", claims_csv, "CSV with cause,effect,doc_id columns")->required();
  claims->add_option("-o,--output", out_dir, "Output directory")->required();
  claims->add_option("--rel-whitelist", whitelist, "Relation types to keep")->delimiter(',');
  claims->add_option("--rel-blacklist", blacklist, "Relation types to drop")->delimiter(',');
  claims->add_option("--atlas-id", atlas_id, "Atlas id (default: output directory name)");
  claims->add_option("--format", format, "parquet or csv");

  // merge
  std::vector<std::string> merge_inputs;
  bool no_doc_prefix = false;
  auto* merge = app.add_subcommand("merge", "Merge atlases by re-aggregating their support rows");
  merge->add_option("inputs", merge_inputs, "Atlas directories")->required();
  merge->add_option("-o,--output", out_dir, "Output directory")->required();
  merge->add_flag("--no-doc-prefix", no_doc_prefix, "Keep doc ids as they are");
  merge->add_option("--atlas-id", atlas_id, "Atlas id (default: output directory name)");
  merge->add_option("--format", format, "parquet or csv");

  // stats
  std::string atlas_dir;
  bool json = false;
  auto* stats = app.add_subcommand("stats", "Summary statistics of an atlas");
  stats->add_option("atlas", atlas_dir, "Atlas directory")->required();
  stats->add_flag("--json", json, "Machine-readable report");

  // query
  QueryParams qp;
  std::uint64_t edge_id = 0;
  auto* query = app.add_subcommand("query", "Run a query against an atlas");
  query->add_option("atlas", atlas_dir, "Atlas directory")->required();
  query->add_option("kind", qp.kind, "backbone, hubs, mechanisms, provenance, scc, two_hop or mutual")->required();
  query->add_option("--src", qp.src, "Source concept (mechanisms)");
  query->add_option("--limit", qp.limit, "Maximum rows");
  auto* query_edge = query->add_option("--edge-id", edge_id, "Edge id (provenance)");
  query->add_flag("--json", json, "JSON rows");

  // intervene
  std::vector<std::string> cuts, softs;
  std::string then = "backbone";
  bool diff = false;
  auto* intervene = app.add_subcommand("intervene", "Query an atlas under do-cut or soft interventions");
  intervene->add_option("atlas", atlas_dir, "Atlas directory")->required();
  intervene->add_option("--do-cut", cuts, "Remove the outgoing edges of a concept")->take_all();
  intervene->add_option("--soft", softs, "Scale outgoing mass: LABEL:LAMBDA")->take_all();
  intervene->add_option("--then", then, "Query to run over the intervened view");
  intervene->add_option("--src", qp.src, "Source concept (mechanisms)");
  intervene->add_option("--limit", qp.limit, "Maximum rows");
  intervene->add_flag("--diff", diff, "Compare the backbone against the baseline");
  intervene->add_flag("--json", json, "JSON rows");

  // emit-sql
  std::string sql_kind;
  auto* emit = app.add_subcommand("emit-sql", "Print the SQL for a query over exported tables");
  emit->add_option("kind", sql_kind, "Query kind")->required();
  emit->add_option("--src", qp.src, "Source concept (mechanisms)");
  emit->add_option("--limit", qp.limit, "Maximum rows");
  emit->add_option("--edge-id", edge_id, "Edge id (provenance)");
  emit->add_option("--do-cut", cuts, "Remove the outgoing edges of a concept")->take_all();
  emit->add_option("--soft", softs, "Scale outgoing mass: LABEL:LAMBDA")->take_all();
  emit->add_option("--then", then, "Query over the intervened view");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build->parsed() || claims->parsed()) {
      cfg.rel_whitelist = parse_rel_list(whitelist, "--rel-whitelist");
      cfg.rel_blacklist = parse_rel_list(blacklist, "--rel-blacklist");
      cfg.max_radius = max_radius;
      cfg.min_model_size = min_model_size;
      cfg.atlas_id = atlas_id.empty() ? default_atlas_id(out_dir) : atlas_id;
      const TableFormat fmt = parse_format(format);
      try {
        cfg.validate();
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
      Diagnostics diag;
      std::optional<RelationLexicon> lexicon;
      if (!lexicon_path.empty()) {
        lexicon = RelationLexicon::load(lexicon_path);
        cfg.lexicon = &*lexicon;
      }
      Atlas atlas;
      if (build->parsed()) {
        const auto runs = scan_runs_root(runs_root, diag);
        const auto lcms = load_runs(runs, diag);
        atlas = build_atlas(lcms, cfg, diag);
      } else {
        const auto rows = parse_claims_csv(read_file(claims_csv), diag);
        atlas = build_from_claims(rows, cfg, diag);
      }
      atlas = atlas.with_scc(compute_scc(atlas));
      flush_warnings(diag, err);
      write_tables(atlas, out_dir, fmt, config_echo(cfg, build->parsed() ? runs_root : claims_csv, lexicon_path));
      report_written(atlas, out_dir, out);
      return kExitOk;
    }

    if (merge->parsed()) {
      const TableFormat fmt = parse_format(format);
      std::vector<std::pair<std::string, Atlas>> inputs;
      for (const auto& dir : merge_inputs) {
        Atlas a = read_tables(dir);
        std::string id = a.atlas_id();
        inputs.emplace_back(std::move(id), std::move(a));
      }
      MergeOptions opts;
      opts.prefix_doc_ids = !no_doc_prefix;
      opts.atlas_id = atlas_id.empty() ? default_atlas_id(out_dir) : atlas_id;
      const Atlas merged = merge_atlases(inputs, opts);
      ojson cfg_json;
      cfg_json["merged_from"] = merge_inputs;
      cfg_json["prefix_doc_ids"] = opts.prefix_doc_ids;
      write_tables(merged, out_dir, fmt, cfg_json);
      report_written(merged, out_dir, out);
      return kExitOk;
    }

    if (stats->parsed()) {
      const Atlas atlas = read_tables(atlas_dir);
      const ojson report = stats_report(atlas);
      if (json) {
        out << report.dump(2) << "\n";
        return kExitOk;
      }
      const AtlasSummary s = summary_from_json(report);
      out << "nodes: " << s.n_nodes << "\n"
          << "edges: " << s.n_edges << "\n"
          << "support rows: " << s.n_support << "\n"
          << "top hub: " << s.top_hub << "\n"
          << "top-1 share: " << fixed4(s.top1_share) << "\n"
          << "top-5 share: " << fixed4(s.top5_share) << "\n"
          << "p50: " << fixed4(s.p50) << "\n"
          << "p90: " << fixed4(s.p90) << "\n"
          << "p99: " << fixed4(s.p99) << "\n"
          << "tail ratio (p99/p50): " << (s.tail_ratio ? fixed4(*s.tail_ratio) : std::string("undefined")) << "\n"
          << "relation mass:\n";
      for (const auto& r : s.rel_mass) {
        out << "  " << to_string(r.rel_type) << " | " << to_string(r.polarity) << " | " << r.n_edges << " | "
            << fixed4(r.mass) << "\n";
      }
      return kExitOk;
    }

    if (query->parsed()) {
      qp.json = json;
      if (query_edge->count() > 0) qp.edge_id = edge_id;
      if (qp.limit == 0) throw UsageError("--limit must be >= 1");
      const QueryKind kind = require_kind(qp.kind);
      const Atlas atlas = read_tables(atlas_dir);
      run_view_query(kind, EdgeView(atlas), qp, out);
      return kExitOk;
    }

    if (intervene->parsed()) {
      qp.json = json;
      if (qp.limit == 0) throw UsageError("--limit must be >= 1");
      if (cuts.empty() && softs.empty()) throw UsageError("intervene needs --do-cut or --soft");
      const QueryKind kind = require_kind(then);
      if (kind == QueryKind::provenance || kind == QueryKind::scc || kind == QueryKind::do_cut ||
          kind == QueryKind::soft_do) {
        throw UsageError("--then must be backbone, hubs, mechanisms, two_hop or mutual");
      }
      if (diff && kind != QueryKind::backbone) throw UsageError("--diff compares backbone rankings only");
      std::vector<Intervention> ivs;
      for (const auto& c : cuts) ivs.push_back(Intervention{user_label(c, "--do-cut"), std::nullopt});
      for (const auto& s : softs) {
        Intervention iv = parse_soft(s);
        iv.label = user_label(iv.label, "--soft");
        ivs.push_back(std::move(iv));
      }

      const Atlas atlas = read_tables(atlas_dir);
      EdgeView view(atlas);
      for (const auto& iv : ivs) view = iv.lambda ? soft_do(view, iv.label, *iv.lambda) : do_cut(view, iv.label);

      if (!diff) {
        run_view_query(kind, view, qp, out);
        return kExitOk;
      }
      const auto base = backbone(EdgeView(atlas), qp.limit);
      const auto after = backbone(view, std::max<std::size_t>(atlas.edges().size(), 1));
      const CounterfactualDiff d = counterfactual_diff(base, after);
      if (json) {
        ojson j;
        j["vanished"] = edge_rows_json(d.vanished);
        ojson changes = ojson::array();
        for (const auto& c : d.rank_changes) {
          changes.push_back({{"edge_id", c.edge_id.value}, {"old_rank", c.old_rank}, {"new_rank", c.new_rank}});
        }
        j["rank_changes"] = std::move(changes);
        out << j.dump(2) << "\n";
      } else {
        out << "vanished:\n";
        print_edge_rows(d.vanished, out);
        out << "rank changes:\n";
        out << "edge_id | old_rank | new_rank\n";
        for (const auto& c : d.rank_changes) {
          out << c.edge_id.value << " | " << c.old_rank << " | " << c.new_rank << "\n";
        }
      }
      return kExitOk;
    }

    if (emit->parsed()) {
      SqlRequest req;
      req.kind = require_kind(sql_kind);
      req.limit = qp.limit;
      req.edge_id = edge_id;
      req.then = require_kind(then);
      if (!qp.src.empty()) req.src = user_label(qp.src, "--src");
      for (const auto& c : cuts) req.interventions.push_back(Intervention{user_label(c, "--do-cut"), std::nullopt});
      for (const auto& s : softs) {
        Intervention iv = parse_soft(s);
        iv.label = user_label(iv.label, "--soft");
        req.interventions.push_back(std::move(iv));
      }
      try {
        out << emit_sql(req);
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace causaldb
