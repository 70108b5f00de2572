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

#include <fstream>
#include <random>

#include "causaldb/canon.hpp"
#include "causaldb/error.hpp"
#include "test_support.hpp"

using namespace causaldb;

TEST_CASE("fnv1a64 golden values") {
  CHECK(hash64("") == 14695981039346656037ULL);
  CHECK(hash64("a") == 12638187200555641996ULL);
  CHECK(hash64("bipedalism") == 827548479928578343ULL);
  CHECK(hash64("stride length") == 7215033513481525716ULL);
  CHECK(hash64("1|INCREASES|2") == 14758018344498855183ULL);
  static_assert(hash64("") == 0xcbf29ce484222325ULL);
}

TEST_CASE("edge key is the hash of the decimal key string") {
  const NodeId a = node_id("bipedalism");
  const NodeId b = node_id("stride length");
  CHECK(edge_key_string(NodeId{1}, RelType::INCREASES, NodeId{2}) == "1|INCREASES|2");
  CHECK(edge_key_string(a, RelType::INFLUENCES, b) ==
        "827548479928578343|INFLUENCES|7215033513481525716");
  CHECK(edge_key(a, RelType::INFLUENCES, b).value == 9401927803858392335ULL);
  CHECK(edge_key(a, RelType::INFLUENCES, b) != edge_key(b, RelType::INFLUENCES, a));
  CHECK(edge_key(a, RelType::INFLUENCES, b) != edge_key(a, RelType::CAUSES, b));
}

TEST_CASE("canon_label normalizes case, whitespace, dashes and trailing punctuation") {
  CHECK(canon_label("Bipedalism") == "bipedalism");
  CHECK(canon_label("  Stride   Length \t") == "stride length");
  CHECK(canon_label("heat\xE2\x80\x93" "dissipation") == "heat-dissipation");
  CHECK(canon_label("heat\xE2\x80\x94" "dissipation") == "heat-dissipation");
  CHECK(canon_label("heat\xE2\x88\x92" "dissipation") == "heat-dissipation");
  CHECK(canon_label("bipedalism.") == "bipedalism");
  CHECK(canon_label("bipedalism ;!") == "bipedalism");
  CHECK(canon_label("what?") == "what?");
  CHECK(canon_label("line\nbreak") == "line break");
  CHECK(canon_label("non\xC2\xA0" "breaking") == "non breaking");
}

TEST_CASE("canon_label composes to NFC") {
  // e + combining acute vs precomposed e-acute
  CHECK(canon_label("Cafe\xCC\x81") == "caf\xC3\xA9");
  CHECK(canon_label("CAF\xC3\x89") == "caf\xC3\xA9");
  CHECK(node_id(canon_label("CAFE\xCC\x81")) == node_id(canon_label("caf\xC3\xA9")));
}

TEST_CASE("canon_label rejects labels that canonicalize to nothing") {
  CHECK_THROWS_AS(canon_label(""), CanonError);
  CHECK_THROWS_AS(canon_label("   "), CanonError);
  CHECK_THROWS_AS(canon_label("..;"), CanonError);
}

TEST_CASE("canon_label is idempotent on random inputs") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> atoms = {"a", "B", " ", "  ", "\t", "-", "\xE2\x80\x93", ".", ",", "\xC3\x89", "e\xCC\x81",
                                          "\xC3\x9F", "x", "Z", "!", "(", ")", "\xC4\xB0", ";"};
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  std::uniform_int_distribution<int> len(1, 12);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) s += atoms[pick(rng)];
    std::string once;
    try {
      once = canon_label(s);
    } catch (const CanonError&) {
      continue;
    }
    ++checked;
    CHECK(canon_label(once) == once);
    CHECK(once.front() != ' ');
    CHECK(once.back() != ' ');
    CHECK(once.find("  ") == std::string::npos);
  }
  CHECK(checked > 1000);
}

TEST_CASE("relation names round-trip") {
  for (RelType r : kAllRelTypes) CHECK(parse_rel_type(to_string(r)) == r);
  for (Polarity p : kAllPolarities) CHECK(parse_polarity(to_string(p)) == p);
  CHECK_FALSE(parse_rel_type("causes").has_value());
  CHECK_FALSE(parse_polarity("INC").has_value());
}

TEST_CASE("built-in lexicon") {
  const auto cls = [](std::string_view p) { return rel_type(p); };
  CHECK(cls("causes") == RelClass{RelType::CAUSES, Polarity::unk});
  CHECK(cls("Influences") == RelClass{RelType::INFLUENCES, Polarity::unk});
  CHECK(cls("raises") == RelClass{RelType::INCREASES, Polarity::inc});
  CHECK(cls("boosts") == RelClass{RelType::INCREASES, Polarity::inc});
  CHECK(cls("lowers") == RelClass{RelType::REDUCES, Polarity::dec});
  CHECK(cls("decreases") == RelClass{RelType::REDUCES, Polarity::dec});
  CHECK(cls("affects") == RelClass{RelType::AFFECTS, Polarity::unk});
  CHECK(cls("leads  to") == RelClass{RelType::LEADS_TO, Polarity::unk});
  CHECK(cls("results in") == RelClass{RelType::LEADS_TO, Polarity::unk});
  CHECK(cls("is correlated with") == RelClass{RelType::INFLUENCES, Polarity::unk});
  CHECK(cls("") == RelClass{RelType::INFLUENCES, Polarity::unk});
}

TEST_CASE("polarity cues and negation") {
  CHECK(rel_type("positively influences") == RelClass{RelType::INFLUENCES, Polarity::inc});
  CHECK(rel_type("negatively affects") == RelClass{RelType::AFFECTS, Polarity::dec});
  CHECK(rel_type("does not increase") == RelClass{RelType::INCREASES, Polarity::dec});
  CHECK(rel_type("do not reduce") == RelClass{RelType::REDUCES, Polarity::inc});
  CHECK(rel_type("not causes") == RelClass{RelType::CAUSES, Polarity::unk});
  CHECK(rel_type("does not negatively affect") == RelClass{RelType::AFFECTS, Polarity::inc});
}

TEST_CASE("lexicon file layers over the built-in table") {
  testing::TempDir dir;
  {
    std::ofstream f(dir / "lex.csv");
    f << "# custom phrases\n";
    f << "drives,CAUSES,inc\n";
    f << "Affects , REDUCES , dec\r\n";
    f << "\n";
  }
  const auto lx = RelationLexicon::load(dir / "lex.csv");
  CHECK(lx.classify("drives") == RelClass{RelType::CAUSES, Polarity::inc});
  CHECK(lx.classify("affects") == RelClass{RelType::REDUCES, Polarity::dec});
  CHECK(lx.classify("raises") == RelClass{RelType::INCREASES, Polarity::inc});
  CHECK(lx.size() == RelationLexicon::builtin().size() + 1);

  {
    std::ofstream f(dir / "bad.csv");
    f << "drives,SPURS,inc\n";
  }
  CHECK_THROWS_AS(RelationLexicon::load(dir / "bad.csv"), FormatError);
  CHECK_THROWS_AS(RelationLexicon::load(dir / "missing.csv"), IoError);
}
