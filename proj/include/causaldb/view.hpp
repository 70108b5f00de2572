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

#include <map>
#include <set>

#include "causaldb/atlas.hpp"

namespace causaldb {

/// A lazily rewritten edge relation over an atlas. Removed sources drop all
/// their outgoing edges; scaled sources multiply the effective score_sum of
/// their outgoing edges. The base atlas is never touched and must outlive
/// the view.
class EdgeView {
 public:
  EdgeView(const Atlas& base) : base_(&base) {}  // NOLINT: identity view

  const Atlas& base() const { return *base_; }
  const std::set<NodeId>& removed_sources() const { return removed_; }
  const std::map<NodeId, double>& scale() const { return scale_; }

  bool contains(const EdgeRow& e) const { return !removed_.count(e.src_id); }

  double multiplier(NodeId src) const {
    auto it = scale_.find(src);
    return it == scale_.end() ? 1.0 : it->second;
  }

  double effective_score(const EdgeRow& e) const {
    auto it = scale_.find(e.src_id);
    return it == scale_.end() ? e.score_sum : it->second * e.score_sum;
  }

  /// Calls fn(edge, effective_score) for every edge visible in the view, in
  /// base table order.
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (const EdgeRow& e : base_->edges()) {
      if (contains(e)) fn(e, effective_score(e));
    }
  }

  EdgeView without_source(NodeId src) const {
    EdgeView v = *this;
    v.removed_.insert(src);
    return v;
  }

  EdgeView with_scaled_source(NodeId src, double lambda) const {
    EdgeView v = *this;
    auto [it, inserted] = v.scale_.try_emplace(src, lambda);
    if (!inserted) it->second *= lambda;
    return v;
  }

 private:
  const Atlas* base_;
  std::set<NodeId> removed_;
  std::map<NodeId, double> scale_;
};

}  // namespace causaldb
