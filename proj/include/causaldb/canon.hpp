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

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace causaldb {

enum class RelType : std::uint8_t { CAUSES, INFLUENCES, INCREASES, REDUCES, AFFECTS, LEADS_TO };
enum class Polarity : std::uint8_t { inc, dec, unk };

inline constexpr std::array<RelType, 6> kAllRelTypes = {
    RelType::CAUSES,  RelType::INFLUENCES, RelType::INCREASES,
    RelType::REDUCES, RelType::AFFECTS,    RelType::LEADS_TO};
inline constexpr std::array<Polarity, 3> kAllPolarities = {Polarity::inc, Polarity::dec,
                                                           Polarity::unk};

std::string_view to_string(RelType rel);
std::string_view to_string(Polarity pol);
std::optional<RelType> parse_rel_type(std::string_view name);
std::optional<Polarity> parse_polarity(std::string_view name);

struct NodeId {
  std::uint64_t value = 0;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

struct EdgeId {
  std::uint64_t value = 0;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

/// FNV-1a 64 over the bytes of `key`.
constexpr std::uint64_t hash64(std::string_view key) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : key) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x00000100000001B3ULL;
  }
  return h;
}

/// Canonical concept label: NFC, lowercase, unified dashes, collapsed
/// whitespace, trailing sentence punctuation removed. Throws CanonError when
/// nothing is left.
std::string canon_label(std::string_view raw);

inline NodeId node_id(std::string_view label_canon) { return NodeId{hash64(label_canon)}; }

/// Key string is "<src>|<REL>|<dst>" with decimal ids.
std::string edge_key_string(NodeId src, RelType rel, NodeId dst);
EdgeId edge_key(NodeId src, RelType rel, NodeId dst);

struct RelClass {
  RelType type = RelType::INFLUENCES;
  Polarity polarity = Polarity::unk;
  friend bool operator==(const RelClass&, const RelClass&) = default;
};

/// Maps free-form relation phrases onto the six relation types.
///
/// Lookup happens on the canonical phrase after stripping polarity cues.
/// "positively"/"negatively" anywhere in the phrase force inc/dec; a leading
/// "not", "does not" or "do not" flips inc and dec and turns the rest into unk.
/// Phrases that miss the table classify as (INFLUENCES, unk).
class RelationLexicon {
 public:
  static const RelationLexicon& builtin();

  /// Reads `phrase,RELTYPE,polarity` lines ('#' comments allowed) and layers
  /// them over the built-in table.
  static RelationLexicon load(const std::filesystem::path& path);

  RelClass classify(std::string_view raw) const;

  void set(std::string_view phrase, RelClass cls);
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, RelClass, std::less<>> table_;
};

inline RelClass rel_type(std::string_view raw) { return RelationLexicon::builtin().classify(raw); }

}  // namespace causaldb

template <>
struct std::hash<causaldb::NodeId> {
  std::size_t operator()(const causaldb::NodeId& id) const noexcept { return id.value; }
};

template <>
struct std::hash<causaldb::EdgeId> {
  std::size_t operator()(const causaldb::EdgeId& id) const noexcept { return id.value; }
};
