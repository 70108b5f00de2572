#!/usr/bin/env python3
# Copyright (c) 2026 The causaldb Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Runs a SQL file against a parquet atlas directory with DuckDB.

Usage: duckdb_exec.py ATLAS_DIR SQL_FILE

Prints {"columns": [...], "rows": [[...], ...]} on stdout. Exit code 3 means
DuckDB is not installed.
"""

import json
import os
import sys

VIEWS = {
    "atlas_nodes": "nodes",
    "atlas_edges": "edges",
    "atlas_edge_support": "support",
    "atlas_scc": "scc",
}


def main():
    if len(sys.argv) != 3:
        print(__doc__, file=sys.stderr)
        return 1
    try:
        import duckdb
    except ImportError:
        print("duckdb is not installed", file=sys.stderr)
        return 3
    atlas_dir, sql_file = sys.argv[1], sys.argv[2]
    with open(os.path.join(atlas_dir, "manifest.json"), encoding="utf-8") as f:
        manifest = json.load(f)
    con = duckdb.connect()
    for view, key in VIEWS.items():
        entry = manifest["tables"].get(key)
        if entry is None:
            continue
        path = os.path.join(atlas_dir, entry["file"]).replace("'", "''")
        con.execute(f"CREATE VIEW {view} AS SELECT * FROM read_parquet('{path}')")
    with open(sql_file, encoding="utf-8") as f:
        sql = f.read()
    cur = con.execute(sql)
    columns = [d[0] for d in cur.description]
    rows = [list(r) for r in cur.fetchall()]
    json.dump({"columns": columns, "rows": rows}, sys.stdout)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
