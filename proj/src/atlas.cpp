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
#include "causaldb/atlas.hpp"

#include "causaldb/error.hpp"

namespace causaldb {

Atlas::Atlas(std::string atlas_id, std::vector<NodeRow> nodes, std::vector<EdgeRow> edges,
             std::vector<SupportRow> support, std::optional<std::vector<SccRow>> scc)
    : atlas_id_(std::move(atlas_id)),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      support_(std::move(support)),
      scc_(std::move(scc)) {
  node_pos_.reserve(nodes_.size());
  label_pos_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (!node_pos_.emplace(n.node_id, i).second) {
      throw IntegrityError("duplicate node_id " + std::to_string(n.node_id.value));
    }
    if (node_id(n.label_canon) != n.node_id) {
      throw IntegrityError("node_id " + std::to_string(n.node_id.value) + " does not hash from label '" +
                           n.label_canon + "'");
    }
    label_pos_.emplace(n.label_canon, i);
  }

  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  edge_pos_.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (!edge_pos_.emplace(e.edge_id, i).second) {
      throw IntegrityError("duplicate edge_id " + std::to_string(e.edge_id.value));
    }
    auto s = node_pos_.find(e.src_id);
    auto d = node_pos_.find(e.dst_id);
    if (s == node_pos_.end() || d == node_pos_.end()) {
      throw IntegrityError("edge " + std::to_string(e.edge_id.value) + " references a missing node");
    }
    if (edge_key(e.src_id, e.rel_type, e.dst_id) != e.edge_id) {
      throw IntegrityError("edge_id " + std::to_string(e.edge_id.value) + " does not match its key");
    }
    out_[s->second].push_back(i);
    in_[d->second].push_back(i);
  }

  support_by_edge_.resize(edges_.size());
  for (std::size_t i = 0; i < support_.size(); ++i) {
    auto it = edge_pos_.find(support_[i].edge_id);
    if (it == edge_pos_.end()) {
      throw IntegrityError("support row references missing edge " +
                           std::to_string(support_[i].edge_id.value));
    }
    support_by_edge_[it->second].push_back(i);
  }
}

const NodeRow* Atlas::find_node(NodeId id) const {
  auto it = node_pos_.find(id);
  return it == node_pos_.end() ? nullptr : &nodes_[it->second];
}

const NodeRow* Atlas::find_label(std::string_view label_canon) const {
  auto it = label_pos_.find(std::string(label_canon));
  return it == label_pos_.end() ? nullptr : &nodes_[it->second];
}

const EdgeRow* Atlas::find_edge(EdgeId id) const {
  auto it = edge_pos_.find(id);
  return it == edge_pos_.end() ? nullptr : &edges_[it->second];
}

const NodeRow& Atlas::node(NodeId id) const {
  const NodeRow* n = find_node(id);
  if (n == nullptr) throw NotFound("unknown node_id " + std::to_string(id.value));
  return *n;
}

std::span<const std::size_t> Atlas::out_edges(NodeId id) const {
  auto it = node_pos_.find(id);
  if (it == node_pos_.end()) return {};
  return out_[it->second];
}

std::span<const std::size_t> Atlas::in_edges(NodeId id) const {
  auto it = node_pos_.find(id);
  if (it == node_pos_.end()) return {};
  return in_[it->second];
}

std::span<const std::size_t> Atlas::support_rows(EdgeId id) const {
  auto it = edge_pos_.find(id);
  if (it == edge_pos_.end()) return {};
  return support_by_edge_[it->second];
}

Atlas Atlas::with_scc(std::vector<SccRow> scc) const {
  return Atlas(atlas_id_, nodes_, edges_, support_, std::move(scc));
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) out += "; ";
    for (char c : labels[i]) {
      if (c == ';' || c == '\\') out += '\\';
      out += c;
    }
  }
  return out;
}

std::vector<std::string> split_labels(std::string_view joined) {
  std::vector<std::string> labels;
  if (joined.empty()) return labels;
  std::string current;
  for (std::size_t i = 0; i < joined.size(); ++i) {
    const char c = joined[i];
    if (c == '\\' && i + 1 < joined.size()) {
      current += joined[++i];
    } else if (c == ';') {
      labels.push_back(std::move(current));
      current.clear();
      if (i + 1 < joined.size() && joined[i + 1] == ' ') ++i;
    } else {
      current += c;
    }
  }
  labels.push_back(std::move(current));
  return labels;
}

}  // namespace causaldb
