// Copyright 2026 The bioann Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "bioann/error.h"
#include "bioann/pubtator.h"
#include "bioann/textproc.h"
#include "bioann/utf8.h"
#include "support/oracles.h"

namespace bioann {
namespace {

using testing::fixture_path;

std::vector<std::pair<std::size_t, std::size_t>> ranges(std::string_view text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& r : segment_sentences(text)) out.emplace_back(r.begin, r.end);
  return out;
}

using Ranges = std::vector<std::pair<std::size_t, std::size_t>>;

TEST_SUITE("textproc") {

TEST_CASE("segment_sentences examples") {
  CHECK(ranges("").empty());
  CHECK(ranges("   \n ").empty());
  // "Tumor grows." is 12 scalars, "Atg7 acts." spans 13..23.
  CHECK(ranges("Tumor grows. Atg7 acts.") == Ranges{{0, 12}, {13, 23}});
  CHECK(ranges("Kim et al. showed X.").size() == 1);
}

TEST_CASE("segment_sentences protected abbreviations and split rules") {
  CHECK(ranges("Drugs, e.g. Aspirin, help. Fine.").size() == 2);
  CHECK(ranges("That is, i.e. Nothing.").size() == 1);
  CHECK(ranges("See Fig. Three for data.").size() == 1);
  CHECK(ranges("Drug A vs. Drug B.").size() == 1);
  CHECK(ranges("It grew. then it shrank.").size() == 1);  // lowercase follows
  CHECK(ranges("It grew.Then it shrank.").size() == 1);   // no whitespace
  CHECK(ranges("Really? Yes! Done.") == Ranges{{0, 7}, {8, 12}, {13, 18}});
  CHECK(ranges("  Lead space. Next one  ") == Ranges{{2, 13}, {14, 22}});
}

TEST_CASE("abbreviation list loads extras") {
  std::istringstream in("# units\nwk.\n\nno.\n");
  const auto list = AbbreviationList::load(in);
  CHECK(list.size() == AbbreviationList::defaults().size() + 2);
  CHECK(segment_sentences(std::string_view("Dose per wk. Ten mg. Next."), list).size() == 2);
  CHECK(segment_sentences(std::string_view("Dose per wk. Ten mg. Next.")).size() == 3);
  const auto bare = AbbreviationList::load(in, false);
  CHECK(bare.size() == 0);
  const auto shipped = AbbreviationList::load_file(testing::data_path("abbreviations.txt"));
  CHECK(shipped.size() > AbbreviationList::defaults().size());
}

TEST_CASE("tokenize examples") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("tumor growth") ==
        std::vector<TokenSpan>{{0, 5, "tumor"}, {6, 12, "growth"}});
  CHECK(tokenize("arginine).") ==
        std::vector<TokenSpan>{{0, 8, "arginine"}, {8, 9, ")"}, {9, 10, "."}});
  CHECK(tokenize("p53-dependent") == std::vector<TokenSpan>{{0, 13, "p53-dependent"}});
  CHECK(tokenize("BRCA1/2") == std::vector<TokenSpan>{{0, 7, "BRCA1/2"}});
  CHECK(tokenize("(TNF-\xCE\xB1)") ==
        std::vector<TokenSpan>{{0, 1, "("}, {1, 6, "TNF-\xCE\xB1"}, {6, 7, ")"}});
}

TEST_CASE("property: tokenizer invariants on random unicode") {
  std::mt19937_64 rng(2026);
  for (int iter = 0; iter < 1000; ++iter) {
    const auto text = testing::random_unicode(rng, 80);
    const auto toks = tokenize(std::u32string_view(text));
    REQUIRE(toks == tokenize(utf8::encode(text)));
    std::size_t cursor = 0;
    std::u32string rebuilt;
    for (const auto& t : toks) {
      REQUIRE(t.begin < t.end);
      REQUIRE(t.end <= text.size());
      REQUIRE(t.begin >= cursor);
      for (std::size_t i = cursor; i < t.begin; ++i) REQUIRE(utf8::is_space(text[i]));
      const auto slice = text.substr(t.begin, t.end - t.begin);
      REQUIRE(utf8::encode(slice) == t.surface);
      for (char32_t c : slice) REQUIRE_FALSE(utf8::is_space(c));
      rebuilt += text.substr(cursor, t.begin - cursor) + slice;
      cursor = t.end;
    }
    for (std::size_t i = cursor; i < text.size(); ++i) REQUIRE(utf8::is_space(text[i]));
    rebuilt += text.substr(cursor);
    CHECK(rebuilt == text);
  }
}

TEST_CASE("property: sentences cover text and never split tokens") {
  std::mt19937_64 rng(99);
  const std::vector<std::u32string> words = {U"Atg7", U"tumor", U"e.g.", U"Fig.",
                                             U"et al.", U"growth.", U"X!", U"why?",
                                             U"α-synuclein", U"The", U"vs.", U"细胞."};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int iter = 0; iter < 500; ++iter) {
    std::u32string text = testing::random_unicode(rng, 20);
    for (int k = 0; k < 12; ++k) text += U" " + words[pick(rng)];
    const auto sents = segment_sentences(std::u32string_view(text));
    std::vector<int> covered(text.size(), 0);
    std::size_t prev_end = 0;
    for (const auto& s : sents) {
      REQUIRE(s.begin < s.end);
      REQUIRE(s.begin >= prev_end);
      REQUIRE_FALSE(utf8::is_space(text[s.begin]));
      REQUIRE_FALSE(utf8::is_space(text[s.end - 1]));
      for (std::size_t i = s.begin; i < s.end; ++i) covered[i] = 1;
      prev_end = s.end;
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!utf8::is_space(text[i])) REQUIRE(covered[i]);
    }
    for (const auto& t : tokenize(std::u32string_view(text))) {
      bool inside = false;
      for (const auto& s : sents) inside = inside || (s.begin <= t.begin && t.end <= s.end);
      REQUIRE(inside);
    }
  }
}

TEST_CASE("parse_pubtator: hand-built two document fixture") {
  const auto docs = parse_pubtator_file(fixture_path("two_docs.pubtator"));
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].doc_id == "20000001");
  CHECK(docs[0].text() == "Atg7 suppresses tumor growth. Arginine is required.");
  CHECK(docs[0].gold.size() + docs[1].gold.size() == 3);
  CHECK(docs[0].gold[1] == GoldMention{30, 38, "Arginine", EntityType::kDrug, {"mesh:D001120"}});
  CHECK(docs[1].gold[0].etype == EntityType::kDisease);
}

TEST_CASE("parse_pubtator: errors carry line numbers") {
  CHECK(parse_pubtator(std::string_view("")).empty());
  const std::string head = "1|t|Atg7 acts\n1|a|Tumor\n";
  try {
    parse_pubtator(std::string_view(head + "1\t0\t4\tAtg7\n"));
    FAIL("expected MalformedLine");
  } catch (const MalformedLine& e) {
    CHECK(e.line_no() == 3);
  }
  CHECK_THROWS_AS(parse_pubtator(std::string_view(head + "1\tx\t4\tAtg7\tgene\t-\n")),
                  MalformedLine);
  CHECK_THROWS_AS(parse_pubtator(std::string_view(head + "1\t0\t4\tAtg7\tplanet\t-\n")),
                  MalformedLine);
  try {
    parse_pubtator(std::string_view(head + "\n2|t|x\n2|a|y\n2\t0\t1\tq\tgene\t-\n"));
    FAIL("expected OffsetMismatch");
  } catch (const OffsetMismatch& e) {
    CHECK(e.doc_id() == "2");
    CHECK(e.line_no() == 6);
  }
}

TEST_CASE("parse_pubtator: unmapped cui and aliases") {
  const auto docs = parse_pubtator(std::string_view(
      "5|t|BRAF V600E\n5|a|\n5\t5\t10\tV600E\tDNAMutation\t-\n"
      "5\t0\t4\tBRAF\tGene\tNCBIGene:673,NCBIGene:1\n"));
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].gold[0].etype == EntityType::kMutation);
  CHECK(docs[0].gold[0].cuis.empty());
  CHECK(docs[0].gold[1].cuis == std::vector<std::string>{"NCBIGene:673", "NCBIGene:1"});
  CHECK(parse_pubtator_type("Chemical") == EntityType::kDrug);
  CHECK(parse_pubtator_type("CellLine") == EntityType::kCellLine);
}

TEST_CASE("serialize_pubtator format") {
  CHECK(serialize_pubtator({}).empty());
  GoldDocument d{"7", "Title", "Abstract", {}};
  CHECK(serialize_pubtator(std::vector<GoldDocument>{d}) == "7|t|Title\n7|a|Abstract\n\n");
  d.gold.push_back({0, 5, "Title", EntityType::kCellType, {}});
  CHECK(serialize_pubtator(std::vector<GoldDocument>{d}) ==
        "7|t|Title\n7|a|Abstract\n7\t0\t5\tTitle\tcell_type\t-\n\n");
}

TEST_CASE("property: pubtator round trip") {
  const auto fixture = parse_pubtator_file(testing::data_path("corpus/fixture10.pubtator"));
  REQUIRE(fixture.size() == 10);
  CHECK(parse_pubtator(std::string_view(serialize_pubtator(fixture))) == fixture);

  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<GoldDocument> docs;
    for (int k = 0; k < 3; ++k) {
      GoldDocument d;
      d.doc_id = std::to_string(1000 + iter * 3 + k);
      auto strip = [](std::u32string s) {
        for (auto& c : s) {
          if (c == U'\n' || c == U'\t' || c == U'\r') c = U' ';
        }
        return s;
      };
      d.title = utf8::encode(strip(testing::random_unicode(rng, 30)));
      d.abstract_text = utf8::encode(strip(testing::random_unicode(rng, 60)));
      const auto text = utf8::decode(d.text());
      std::uniform_int_distribution<std::size_t> pos(0, text.size() - 1);
      std::uniform_int_distribution<std::size_t> ty(0, 8);
      for (int m = 0; m < 3; ++m) {
        std::size_t b = pos(rng), e = pos(rng);
        if (b > e) std::swap(b, e);
        ++e;
        GoldMention g{b, e, utf8::encode(text.substr(b, e - b)), kAllEntityTypes[ty(rng)], {}};
        if (m % 2 == 0) g.cuis = {"mesh:D" + std::to_string(m), "NCBIGene:" + std::to_string(b)};
        d.gold.push_back(g);
      }
      docs.push_back(std::move(d));
    }
    const auto text = serialize_pubtator(docs);
    REQUIRE(parse_pubtator(std::string_view(text)) == docs);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace bioann
