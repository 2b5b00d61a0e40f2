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


// Acceptance checks. One PASS/FAIL line per criterion, nonzero exit if any
// fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bioann/embedding_index.h"
#include "bioann/error.h"
#include "bioann/evalkit.h"
#include "bioann/ingest.h"
#include "bioann/normalizer.h"
#include "bioann/pipeline.h"
#include "bioann/pubtator.h"
#include "bioann/result_json.h"
#include "bioann/service.h"
#include "bioann/store.h"
#include "bioann/tagger.h"
#include "bioann/textproc.h"
#include "bioann/utf8.h"
#include "support/fixtures.h"
#include "support/oracles.h"
#include "support/stub_server.h"

namespace bioann {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

const Annotation* find(const AnnotationResult& r, std::size_t b, std::size_t e, EntityType t) {
  for (const auto& a : r.annotations) {
    if (a.mention.begin == b && a.mention.end == e && a.mention.etype == t) return &a;
  }
  return nullptr;
}

// ---- 1 ---------------------------------------------------------------------

Outcome example_sentence() {
  const auto t0 = Clock::now();
  const auto pipeline = Pipeline::from_config(testing::data_config());
  const auto r = pipeline.annotate_text({std::nullopt, testing::kExampleSentence});
  const double secs = seconds_since(t0);

  // "Atg7 suppresses tumor growth through arginine metabolism."
  //  0   4          16   21             37      45
  const auto* atg7 = find(r, 0, 4, EntityType::kGene);
  const auto* arg = find(r, 37, 45, EntityType::kDrug);
  bool ok = atg7 != nullptr && arg != nullptr && secs < 1.0;
  ok = ok && atg7->mention.surface == "Atg7" && arg->mention.surface == "arginine";
  ok = ok && atg7->norm == Normalization::rule({"NCBIGene:10533"});
  ok = ok && arg->norm == Normalization::rule({"mesh:D001120"});
  return {ok, "Atg7 0-4 NCBIGene:10533 rule, arginine 37-45 mesh:D001120 rule, load+annotate " +
                  fmt("%.3f s", secs)};
}

// ---- 2 ---------------------------------------------------------------------

Outcome fuzzy_normalization() {
  const auto& models = testing::data_models();
  const auto& lex = models.lexicons.at(EntityType::kDrug);
  const auto& idx = models.indexes.at(EntityType::kDrug);
  const auto& enc = *models.encoder;

  std::set<std::string> distractors(idx.cuis.begin(), idx.cuis.end());
  distractors.erase("mesh:D006886");

  // Brute-force scan, independent of top_k_inner_product.
  const Eigen::VectorXd q = enc.embed("oxichlorochine");
  Eigen::Index best = 0;
  for (Eigen::Index r = 1; r < idx.size(); ++r) {
    if (idx.matrix.row(r).dot(q) > idx.matrix.row(best).dot(q)) best = r;
  }
  const bool scan_ok = idx.cuis[static_cast<std::size_t>(best)] == "mesh:D006886";

  const auto n = hybrid_normalize("oxichlorochine", EntityType::kDrug, &lex, &idx, &enc);
  const bool ok = scan_ok && distractors.size() >= 50 && n.source == NormSource::kNeural &&
                  n.ids == std::vector<std::string>{"mesh:D006886"};
  return {ok, "neural -> " + (n.ids.empty() ? std::string("-") : n.ids[0]) + " score " +
                  fmt("%.3f", n.score.value_or(0)) + ", brute-force top-1 " +
                  idx.cuis[static_cast<std::size_t>(best)] + ", " +
                  std::to_string(distractors.size()) + " distractor CUIs"};
}

// ---- 3 ---------------------------------------------------------------------

struct Words {
  std::u32string text;
  std::vector<TokenSpan> tokens;
};

Words word_tokens(std::size_t n) {
  Words w;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) w.text += U' ';
    const std::size_t begin = w.text.size();
    w.text += utf8::decode("t" + std::to_string(i));
    w.tokens.push_back({begin, w.text.size(), "t" + std::to_string(i)});
  }
  return w;
}

Outcome bio_oracle() {
  std::size_t mismatches = 0, cases = 0;
  const auto five = word_tokens(5);
  for (int code = 0; code < 243; ++code) {
    std::vector<BioLabel> labels;
    for (int c = code, k = 0; k < 5; ++k, c /= 3) labels.push_back(static_cast<BioLabel>(c % 3));
    const TagProbSeq seq{EntityType::kGene, testing::rows_for_labels(labels)};
    ++cases;
    if (decode_bio(seq, five.tokens, five.text) !=
        testing::reference_decode(seq, five.tokens, five.text)) {
      ++mismatches;
    }
  }
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::size_t> len(0, 32);
  const auto w = word_tokens(32);
  for (int iter = 0; iter < 10000; ++iter) {
    const std::size_t n = len(rng);
    const std::vector<TokenSpan> toks(w.tokens.begin(),
                                      w.tokens.begin() + static_cast<std::ptrdiff_t>(n));
    const TagProbSeq seq{kAllEntityTypes[static_cast<std::size_t>(iter) % 9],
                         testing::random_rows(rng, n)};
    ++cases;
    if (decode_bio(seq, toks, w.text) != testing::reference_decode(seq, toks, w.text)) {
      ++mismatches;
    }
  }
  return {mismatches == 0,
          std::to_string(mismatches) + " mismatches in " + std::to_string(cases) + " sequences"};
}

// ---- 4 ---------------------------------------------------------------------

Outcome topk_oracle() {
  std::mt19937_64 rng(4242);
  std::normal_distribution<double> g;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(1000, 64);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = g(rng);
  }
  for (Eigen::Index r = 950; r < 1000; ++r) m.row(r) = m.row(r - 950);  // exact ties
  m.rowwise().normalize();
  std::size_t mismatches = 0;
  for (int iter = 0; iter < 100; ++iter) {
    Eigen::VectorXd q(64);
    for (auto& x : q) x = g(rng);
    q.normalize();
    if (iter % 10 == 0) q = m.row(iter).transpose();
    for (std::size_t k : {1, 10, 100, 1000}) {
      const auto got = top_k_inner_product(m, q, k);
      const auto want = testing::argsort_top_k(m, q, k);
      if (got.size() != want.size()) {
        ++mismatches;
        continue;
      }
      for (std::size_t i = 0; i < got.size(); ++i) {
        if (got[i].row != want[i].first || got[i].score != want[i].second) {
          ++mismatches;
          break;
        }
      }
    }
  }
  return {mismatches == 0, std::to_string(mismatches) +
                               " mismatches over 100 queries x k in {1,10,100,1000}, 1000x64"};
}

// ---- 5 ---------------------------------------------------------------------

std::string typo(std::mt19937_64& rng, std::string s) {
  static const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  std::uniform_int_distribution<std::size_t> pos(1, s.size() - 2);
  std::uniform_int_distribution<std::size_t> letter(0, letters.size() - 1);
  const std::size_t p = pos(rng);
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: s[p] = letters[letter(rng)]; break;
    case 1: s.erase(p, 1); break;
    case 2: s.insert(p, 1, letters[letter(rng)]); break;
    default: std::swap(s[p], s[p + 1]); break;
  }
  return s;
}

bool ascii_word(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return c < 0x80; });
}

Outcome hybrid_dominance() {
  const auto& models = testing::data_models();
  const Encoder& enc = *models.encoder;

  struct Item {
    EntityType type;
    std::string mention;
    std::string gold;
  };
  std::vector<Item> pool;
  for (auto t : {EntityType::kGene, EntityType::kDisease, EntityType::kDrug}) {
    for (const auto& [key, cui] : models.lexicons.at(t).pairs()) {
      if (key.size() >= 6 && ascii_word(key)) pool.push_back({t, key, cui});
    }
  }
  std::mt19937_64 rng(713);
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<Item> bench;
  for (std::size_t i = 0; bench.size() < 200; ++i) {
    auto item = pool[i % pool.size()];
    // Three in four get a one-edit typo; the rest keep their spelling.
    if (i % 4 != 3) item.mention = typo(rng, item.mention);
    bench.push_back(item);
  }

  auto correct = [](const Normalization& n, const std::string& gold) {
    return std::find(n.ids.begin(), n.ids.end(), gold) != n.ids.end();
  };
  std::size_t rule_ok = 0, hybrid_ok = 0, rule_hits = 0, changed = 0, encoded_on_hit = 0;
  for (const auto& it : bench) {
    const auto& lex = models.lexicons.at(it.type);
    const auto& idx = models.indexes.at(it.type);
    const auto rule = hybrid_normalize(it.mention, it.type, &lex, nullptr, nullptr);
    const auto before = enc.invocations();
    const auto hybrid = hybrid_normalize(it.mention, it.type, &lex, &idx, &enc);
    const auto used = enc.invocations() - before;
    if (correct(rule, it.gold)) ++rule_ok;
    if (correct(hybrid, it.gold)) ++hybrid_ok;
    if (rule.source == NormSource::kRule) {
      ++rule_hits;
      if (!(hybrid == rule)) ++changed;
      encoded_on_hit += used;
    }
  }
  const double ra = static_cast<double>(rule_ok) / 200.0;
  const double ha = static_cast<double>(hybrid_ok) / 200.0;
  return {ha >= ra && changed == 0 && encoded_on_hit == 0,
          "rule-only acc " + fmt("%.3f", ra) + ", hybrid acc " + fmt("%.3f", ha) + ", " +
              std::to_string(rule_hits) + " rule hits, " + std::to_string(changed) +
              " changed, encoder calls on rule hits " + std::to_string(encoded_on_hit)};
}

// ---- 6 ---------------------------------------------------------------------

Outcome cache_speedup() {
  const auto corpus = parse_pubtator_file(testing::data_path("corpus/fixture10.pubtator"));
  std::map<std::string, std::pair<std::string, std::string>> docs;
  std::vector<std::string> pmids;
  for (int i = 0; i < 20; ++i) {
    const auto& d = corpus[static_cast<std::size_t>(i) % corpus.size()];
    pmids.push_back(std::to_string(40000001 + i));
    docs[pmids.back()] = {d.title, d.abstract_text};
  }
  testing::StubServer stub([&](httplib::Server& s) {
    s.Get(R"(/abstracts/(\d+))", [&](const httplib::Request& req, httplib::Response& res) {
      const auto it = docs.find(req.matches[1]);
      if (it == docs.end()) {
        res.status = 404;
        return;
      }
      res.set_content(json{{"pmid", it->first},
                           {"title", it->second.first},
                           {"abstract", it->second.second}}
                          .dump(),
                      "application/json");
    });
  });
  FetcherConfig fc;
  fc.base_url = stub.url("/abstracts");
  fc.mode = FetchMode::kStubJson;
  const HttpFetcher fetcher(fc);

  testing::TempDir dir;
  AnnotationStore store(dir / "cache.bann");
  const auto pipeline = testing::data_pipeline();
  double cold = 0, warm = 0;
  std::size_t differ = 0;
  for (const auto& p : pmids) {
    auto t = Clock::now();
    const auto a = pipeline->annotate_pmid(p, &store, fetcher);
    cold += seconds_since(t);
    t = Clock::now();
    const auto b = pipeline->annotate_pmid(p, &store, fetcher);
    warm += seconds_since(t);
    // Payloads exclude elapsed_ms.
    if (canonical_payload(a) != canonical_payload(b) ||
        store.get(p)->payload != canonical_payload(a)) {
      ++differ;
    }
  }
  cold /= 20;
  warm /= 20;
  return {warm <= cold / 5 && differ == 0 && fetcher.attempts() == 20,
          "cold mean " + fmt("%.3g s", cold) + ", warm mean " + fmt("%.3g s", warm) +
              ", speedup " + fmt("%.1fx", warm > 0 ? cold / warm : 0) + ", " +
              std::to_string(differ) + " payload differences, " +
              std::to_string(fetcher.attempts()) + " fetches"};
}

// ---- 7 ---------------------------------------------------------------------

Outcome multi_head_economy() {
  auto cfg = testing::data_config();
  cfg.max_len = 24;
  cfg.enabled_types.clear();
  for (auto t : kAllEntityTypes) {
    if (t != EntityType::kMutation) cfg.enabled_types.insert(t);
  }
  std::string text;
  for (int i = 0; i < 10; ++i) {
    text += "Atg7 suppresses tumor growth through arginine metabolism in HeLa cells. ";
  }
  const auto tokens = tokenize(text);
  const auto windows = chunk_tokens(tokens, segment_sentences(text), cfg.max_len);
  const auto p = testing::data_pipeline(cfg);
  const auto before = p->tagger().invocations();
  const auto r = p->annotate_text({std::nullopt, text});
  const auto calls = p->tagger().invocations() - before;
  std::set<EntityType> seen;
  for (const auto& a : r.annotations) seen.insert(a.mention.etype);
  return {cfg.enabled_types.size() == 8 && calls == windows.size() && windows.size() > 1,
          std::to_string(cfg.enabled_types.size()) + " types, " +
              std::to_string(windows.size()) + " chunks, " + std::to_string(calls) +
              " tag() calls, " + std::to_string(seen.size()) + " types found"};
}

// ---- 8 ---------------------------------------------------------------------

Outcome offset_fuzz() {
  // Random Unicode with entity words spliced in so mentions actually occur.
  static const char* words[] = {"Atg7",  "tumor",    "arginine", "HeLa",    "melanoma",
                                "BRAF",  "V600E",    "mice",     "p.R175H", "Oxychlorochin",
                                "ATG7 gene", "rs1234", "T cells", "hydroxychloroquine"};
  std::mt19937_64 rng(8008);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(words) - 1);
  const auto p = testing::data_pipeline();
  std::size_t violations = 0, mentions = 0, multibyte_docs = 0;
  for (int d = 0; d < 1000; ++d) {
    std::u32string text;
    for (int part = 0; part < 6; ++part) {
      text += testing::random_unicode(rng, 12);
      text += U' ';
      text += utf8::decode(words[pick(rng)]);
      text += U' ';
    }
    const std::string bytes = utf8::encode(text);
    if (bytes.size() != text.size()) ++multibyte_docs;
    const auto r = p->annotate_text({std::nullopt, bytes});
    if (!validate_result(r).empty()) ++violations;
    for (const auto& a : r.annotations) {
      ++mentions;
      if (a.mention.end > text.size() ||
          utf8::encode(text.substr(a.mention.begin, a.mention.end - a.mention.begin)) !=
              a.mention.surface) {
        ++violations;
      }
    }
  }
  return {violations == 0 && mentions > 0,
          std::to_string(violations) + " violations over " + std::to_string(mentions) +
              " mentions in 1000 docs (" + std::to_string(multibyte_docs) + " multi-byte)"};
}

// ---- 9 ---------------------------------------------------------------------

Outcome pubtator_round_trip() {
  const auto docs = parse_pubtator_file(testing::data_path("corpus/fixture10.pubtator"));
  const auto text = serialize_pubtator(docs);
  const auto again = parse_pubtator(std::string_view(text));
  std::size_t mentions = 0;
  for (const auto& d : docs) mentions += d.gold.size();
  return {docs.size() == 10 && again == docs && serialize_pubtator(again) == text,
          std::to_string(docs.size()) + " docs, " + std::to_string(mentions) + " mentions"};
}

// ---- 10 --------------------------------------------------------------------

Outcome metrics_fixtures() {
  auto load = [](const char* name) {
    return parse_pubtator_file(testing::fixture_path(std::string("metrics/") + name));
  };
  const auto ner = ner_f1(span_keys(load("ner_gold.pubtator")), span_keys(load("ner_pred.pubtator")));
  const auto& o = ner.overall;
  const double f1 = o.f1();
  const double acc = nen_accuracy(nen_items(load("nen_gold.pubtator"), load("nen_pred.pubtator")));
  const bool ok = o.tp == 2 && o.fp == 1 && o.fn == 1 && std::abs(f1 - 0.667) <= 0.001 &&
                  acc == 0.75;
  return {ok, "ner f1 " + fmt("%.4f", f1) + " (tp 2 fp 1 fn 1), nen accuracy " +
                  fmt("%.4f", acc)};
}

// ---- 11 --------------------------------------------------------------------

CacheRecord record(const std::string& pmid, int version) {
  AnnotationResult r;
  r.doc = {pmid, "Atg7 text version " + std::to_string(version)};
  r.pipeline_version = "v1";
  r.annotations.push_back({{0, 4, "Atg7", EntityType::kGene, 0.99},
                           Normalization::rule({"NCBIGene:10533"})});
  return {pmid, canonical_payload(r), "v1", "2026-01-02T03:04:05Z"};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome store_oracle() {
  testing::TempDir dir;
  const StoreOptions fast{false, true};
  std::mt19937_64 rng(1111);
  std::uniform_int_distribution<int> pmid(1, 300);
  std::uniform_int_distribution<int> op(0, 2);
  std::map<std::string, CacheRecord> oracle;
  std::size_t mismatches = 0;
  {
    auto store = std::make_unique<AnnotationStore>(dir / "o.bann", fast);
    for (int i = 0; i < 1000; ++i) {
      const auto key = std::to_string(pmid(rng));
      if (op(rng) == 0) {
        const auto got = store->get(key);
        const auto it = oracle.find(key);
        if (it == oracle.end() ? got.has_value() : got != it->second) ++mismatches;
      } else {
        store->put(record(key, i));
        oracle[key] = record(key, i);
      }
      if (i == 500) store = std::make_unique<AnnotationStore>(dir / "o.bann", fast);
    }
  }
  // Restart.
  AnnotationStore reopened(dir / "o.bann", fast);
  bool restart_ok = reopened.size() == oracle.size();
  for (const auto& [k, v] : oracle) restart_ok = restart_ok && reopened.get(k) == v;

  // Truncation: a log of known record boundaries, cut at random offsets.
  std::vector<std::pair<CacheRecord, std::uint64_t>> log;
  {
    AnnotationStore s(dir / "t.bann", fast);
    for (int v = 0; v < 40; ++v) {
      const auto r = record(std::to_string(v % 7 + 1), v);
      s.put(r);
      log.emplace_back(r, s.file_size());
    }
  }
  const auto bytes = read_file(dir / "t.bann");
  std::uniform_int_distribution<std::size_t> cut_at(0, bytes.size());
  std::size_t bad_cuts = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t cut = iter == 0 ? bytes.size() - 1 : cut_at(rng);
    const auto path = dir / "cut.bann";
    {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out << bytes.substr(0, cut);
    }
    std::map<std::string, CacheRecord> expected;
    for (const auto& [r, end] : log) {
      if (end <= cut) expected[r.pmid] = r;
    }
    try {
      AnnotationStore s(path, fast);
      bool ok = s.size() == expected.size();
      for (int k = 1; k <= 7; ++k) {
        const auto key = std::to_string(k);
        const auto it = expected.find(key);
        ok = ok && (it == expected.end() ? !s.get(key).has_value() : s.get(key) == it->second);
      }
      s.put(record("99", 1));
      ok = ok && s.get("99") == record("99", 1);
      if (!ok) ++bad_cuts;
    } catch (const Error&) {
      ++bad_cuts;
    }
  }
  return {mismatches == 0 && restart_ok && bad_cuts == 0,
          std::to_string(mismatches) + " oracle mismatches in 1000 ops, restart " +
              (restart_ok ? "consistent" : "INCONSISTENT") + ", " + std::to_string(bad_cuts) +
              " bad prefixes over 300 truncations"};
}

// ---- 12 --------------------------------------------------------------------

Outcome service_determinism() {
  const AnnotationService service(testing::data_pipeline(), nullptr, nullptr);
  HttpServer server(service);
  const int port = server.bind({"127.0.0.1", 0});
  server.start();

  const std::string body = json{{"text", std::string(testing::kExampleSentence) +
                                             " BRAF V600E in melanoma; oxichlorochine."}}
                               .dump();
  const std::regex elapsed(R"("elapsed_ms":[-+0-9.eE]+,?)");
  std::vector<std::string> bodies(32);
  std::vector<int> statuses(32, 0);
  const auto t0 = Clock::now();
  std::vector<std::thread> clients;
  for (int i = 0; i < 32; ++i) {
    clients.emplace_back([&, i] {
      httplib::Client c("127.0.0.1", port);
      c.set_read_timeout(10);
      if (auto res = c.Post("/plain", body, "application/json")) {
        statuses[static_cast<std::size_t>(i)] = res->status;
        bodies[static_cast<std::size_t>(i)] = std::regex_replace(res->body, elapsed, "");
      } else {
        std::fprintf(stderr, "client %d: %s\n", i, httplib::to_string(res.error()).c_str());
      }
    });
  }
  for (auto& t : clients) t.join();
  const double secs = seconds_since(t0);
  server.stop();

  const std::size_t ok = static_cast<std::size_t>(
      std::count(statuses.begin(), statuses.end(), 200));
  const std::size_t distinct = std::set<std::string>(bodies.begin(), bodies.end()).size();
  return {ok == 32 && distinct == 1 && secs < 10.0,
          std::to_string(ok) + "/32 ok, " + std::to_string(distinct) + " distinct bodies, " +
              fmt("%.3f s", secs)};
}

}  // namespace
}  // namespace bioann

int main() {
  using namespace bioann;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"example sentence pipeline", example_sentence},
      {"fuzzy normalization", fuzzy_normalization},
      {"BIO decoder oracle", bio_oracle},
      {"dense retrieval oracle", topk_oracle},
      {"hybrid dominance", hybrid_dominance},
      {"cache speedup", cache_speedup},
      {"multi-head economy", multi_head_economy},
      {"offset integrity fuzz", offset_fuzz},
      {"PubTator round trip", pubtator_round_trip},
      {"metrics fixtures", metrics_fixtures},
      {"store oracle", store_oracle},
      {"service determinism", service_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
