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
#include "causaldb/canon.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <fstream>
#include <sstream>
#include <vector>

#include "causaldb/error.hpp"

namespace causaldb {

namespace {

constexpr std::array<std::string_view, 6> kRelNames = {"CAUSES",  "INFLUENCES", "INCREASES",
                                                       "REDUCES", "AFFECTS",    "LEADS_TO"};
constexpr std::array<std::string_view, 3> kPolNames = {"inc", "dec", "unk"};

bool is_dash(UChar32 c) {
  switch (c) {
    case 0x2010:  // hyphen
    case 0x2011:  // non-breaking hyphen
    case 0x2012:  // figure dash
    case 0x2013:  // en dash
    case 0x2014:  // em dash
    case 0x2015:  // horizontal bar
    case 0x2212:  // minus sign
    case 0xFE58:
    case 0xFE63:
    case 0xFF0D:
      return true;
    default:
      return false;
  }
}

bool is_trailing_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!';
}

const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw CanonError("ICU NFC normalizer unavailable");
  }
  return *n;
}

icu::UnicodeString normalize_nfc(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = nfc().normalize(s, status);
  if (U_FAILURE(status)) throw CanonError("NFC normalization failed");
  return out;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) words.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return words;
}

}  // namespace

std::string_view to_string(RelType rel) { return kRelNames[static_cast<std::size_t>(rel)]; }
std::string_view to_string(Polarity pol) { return kPolNames[static_cast<std::size_t>(pol)]; }

std::optional<RelType> parse_rel_type(std::string_view name) {
  for (std::size_t i = 0; i < kRelNames.size(); ++i) {
    if (kRelNames[i] == name) return static_cast<RelType>(i);
  }
  return std::nullopt;
}

std::optional<Polarity> parse_polarity(std::string_view name) {
  for (std::size_t i = 0; i < kPolNames.size(); ++i) {
    if (kPolNames[i] == name) return static_cast<Polarity>(i);
  }
  return std::nullopt;
}

std::string canon_label(std::string_view raw) {
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  text = normalize_nfc(text);
  text.toLower(icu::Locale::getRoot());
  // Lowercasing can produce non-NFC sequences for a handful of code points.
  text = normalize_nfc(text);

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < text.length();) {
    UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !collapsed.isEmpty()) collapsed.append(static_cast<UChar>(' '));
    pending_space = false;
    collapsed.append(is_dash(c) ? static_cast<UChar32>('-') : c);
  }

  std::string out;
  collapsed.toUTF8String(out);
  while (!out.empty() && (out.back() == ' ' || is_trailing_punct(out.back()))) out.pop_back();
  if (out.empty()) throw CanonError("label is empty after canonicalization: '" + std::string(raw) + "'");
  return out;
}

std::string edge_key_string(NodeId src, RelType rel, NodeId dst) {
  std::string key = std::to_string(src.value);
  key += '|';
  key += to_string(rel);
  key += '|';
  key += std::to_string(dst.value);
  return key;
}

EdgeId edge_key(NodeId src, RelType rel, NodeId dst) {
  return EdgeId{hash64(edge_key_string(src, rel, dst))};
}

const RelationLexicon& RelationLexicon::builtin() {
  static const RelationLexicon lexicon = [] {
    RelationLexicon lx;
    const auto add = [&lx](std::initializer_list<std::string_view> phrases, RelType t, Polarity p) {
      for (auto phrase : phrases) lx.set(phrase, {t, p});
    };
    add({"cause", "causes"}, RelType::CAUSES, Polarity::unk);
    add({"influence", "influences"}, RelType::INFLUENCES, Polarity::unk);
    add({"increase", "increases", "raises", "boosts"}, RelType::INCREASES, Polarity::inc);
    add({"reduce", "reduces", "decreases", "lowers"}, RelType::REDUCES, Polarity::dec);
    add({"affect", "affects"}, RelType::AFFECTS, Polarity::unk);
    add({"leads to", "led to", "results in"}, RelType::LEADS_TO, Polarity::unk);
    return lx;
  }();
  return lexicon;
}

RelationLexicon RelationLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open relation lexicon: " + path.string());
  RelationLexicon lx = builtin();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    if (fields.size() != 3) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected phrase,RELTYPE,polarity");
    }
    const auto type = parse_rel_type(trim(fields[1]));
    const auto pol = parse_polarity(trim(fields[2]));
    if (!type || !pol) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": unknown relation type or polarity");
    }
    lx.set(trim(fields[0]), {*type, *pol});
  }
  return lx;
}

void RelationLexicon::set(std::string_view phrase, RelClass cls) {
  table_[canon_label(phrase)] = cls;
}

RelClass RelationLexicon::classify(std::string_view raw) const {
  std::string phrase;
  try {
    phrase = canon_label(raw);
  } catch (const CanonError&) {
    return {};
  }

  std::vector<std::string> words = split_words(phrase);
  std::optional<Polarity> cue;
  bool negated = false;
  if (!words.empty() && words[0] == "not") {
    negated = true;
    words.erase(words.begin());
  } else if (words.size() >= 2 && (words[0] == "does" || words[0] == "do") && words[1] == "not") {
    negated = true;
    words.erase(words.begin(), words.begin() + 2);
  }
  std::string core;
  for (const auto& w : words) {
    if (w == "positively") {
      cue = Polarity::inc;
      continue;
    }
    if (w == "negatively") {
      cue = Polarity::dec;
      continue;
    }
    if (!core.empty()) core += ' ';
    core += w;
  }

  RelClass cls;
  if (auto it = table_.find(core); it != table_.end()) cls = it->second;
  if (cue) cls.polarity = *cue;
  if (negated) {
    switch (cls.polarity) {
      case Polarity::inc: cls.polarity = Polarity::dec; break;
      case Polarity::dec: cls.polarity = Polarity::inc; break;
      case Polarity::unk: break;
    }
  }
  return cls;
}

}  // namespace causaldb
