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

// bioann: serve | annotate | index | eval | bench
//
// Exit codes: 0 success, 1 some documents failed, 2 usage/config/input error.
// Results go to stdout, diagnostics to stderr.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bioann/bench.h"
#include "bioann/config.h"
#include "bioann/embedding_index.h"
#include "bioann/error.h"
#include "bioann/evalkit.h"
#include "bioann/ingest.h"
#include "bioann/lexicon.h"
#include "bioann/pipeline.h"
#include "bioann/pubtator.h"
#include "bioann/result_json.h"
#include "bioann/service.h"
#include "bioann/store.h"

namespace {

using namespace bioann;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitDocFailures = 1;
constexpr int kExitUsage = 2;

// Raised inside a command to leave with a specific exit code.
struct Exit {
  int code;
};

[[noreturn]] void fail(const std::string& message, int code = kExitUsage) {
  std::cerr << "bioann: " << message << "\n";
  throw Exit{code};
}

std::string config_path_or_env(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') return env;
  fail("no config given (use --config or set " + std::string(kConfigEnv) + ")");
}

PipelineConfig read_config(const std::string& flag) {
  try {
    return load_config(config_path_or_env(flag));
  } catch (const Error& e) {
    fail(std::string("config: ") + e.what());
  }
}

std::shared_ptr<const Pipeline> make_pipeline(const PipelineConfig& config) {
  try {
    return std::make_shared<const Pipeline>(Pipeline::from_config(config));
  } catch (const Error& e) {
    fail(std::string("loading models: ") + e.what());
  }
}

std::string slurp(std::istream& in) {
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool looks_like_pubtator(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto bar = line.find("|t|");
    return bar != std::string::npos && bar > 0 && is_pmid(line.substr(0, bar));
  }
  return false;
}

struct Input {
  std::vector<GoldDocument> docs;
  bool pubtator = false;

  // Plain lines are annotated verbatim, without the title/abstract join.
  Document document(std::size_t i) const {
    const auto& d = docs[i];
    return pubtator ? Document{d.doc_id, d.text()} : Document{std::nullopt, d.title};
  }
};

// One document per non-empty line.
std::vector<GoldDocument> text_lines(const std::string& content) {
  std::vector<GoldDocument> docs;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    GoldDocument d;
    d.doc_id = std::to_string(docs.size() + 1);
    d.title = line;
    docs.push_back(std::move(d));
  }
  return docs;
}

Input read_docs(const std::string& path, const std::string& input_format) {
  std::string content;
  if (path.empty() || path == "-") {
    content = slurp(std::cin);
  } else {
    std::ifstream in(path);
    if (!in) fail("cannot read " + path);
    content = slurp(in);
  }
  const bool pubtator = input_format == "pubtator" ||
                        (input_format == "auto" && looks_like_pubtator(content));
  if (!pubtator) return Input{text_lines(content), false};
  try {
    return Input{parse_pubtator(content), true};
  } catch (const Error& e) {
    fail((path.empty() ? std::string("<stdin>") : path) + ": " + e.what());
  }
}

std::string pubtator_block(const GoldDocument& source, const AnnotationResult& result) {
  GoldDocument out;
  out.doc_id = source.doc_id;
  out.title = source.title;
  out.abstract_text = source.abstract_text;
  for (const auto& a : result.annotations) {
    out.gold.push_back(GoldMention{a.mention.begin, a.mention.end, a.mention.surface,
                                   a.mention.etype, a.norm.ids});
  }
  std::ostringstream s;
  write_pubtator(s, out);
  return s.str();
}

// ---- serve -----------------------------------------------------------------

struct ServeArgs {
  std::string config;
  std::string addr;
};

int cmd_serve(const ServeArgs& args) {
  std::string addr = args.addr;
  if (addr.empty()) {
    const char* env = std::getenv(kAddrEnv);
    addr = env != nullptr && *env != '\0' ? env : "127.0.0.1:8080";
  }
  ListenAddress listen;
  try {
    listen = parse_listen_address(addr);
  } catch (const Error& e) {
    fail(e.what());
  }

  const PipelineConfig config = read_config(args.config);
  auto pipeline = make_pipeline(config);
  std::shared_ptr<AnnotationStore> store;
  std::shared_ptr<const AbstractFetcher> fetcher;
  try {
    if (!config.store_path.empty()) store = std::make_shared<AnnotationStore>(config.store_path);
    fetcher = std::make_shared<HttpFetcher>(with_env_override(config.fetcher));
  } catch (const Error& e) {
    fail(e.what());
  }

  AnnotationService service(pipeline, store, fetcher);
  HttpServer server(service);
  int port = 0;
  try {
    port = server.bind(listen);
  } catch (const Error& e) {
    fail(e.what());
  }

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  server.start();
  std::cerr << "bioann: serving on " << listen.host << ":" << port << " (pipeline "
            << config.pipeline_version << ")\n";
  int sig = 0;
  sigwait(&signals, &sig);
  std::cerr << "bioann: shutting down\n";
  server.stop();
  return kExitOk;
}

// ---- annotate --------------------------------------------------------------

struct AnnotateArgs {
  std::string input;
  std::string format = "json";
  std::string input_format = "auto";
  std::string config;
  int jobs = 1;
};

int cmd_annotate(const AnnotateArgs& args) {
  const auto pipeline = make_pipeline(read_config(args.config));
  const Input input = read_docs(args.input, args.input_format);
  const auto& docs = input.docs;

  std::vector<std::optional<std::string>> outputs(docs.size());
  std::vector<std::string> errors(docs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      const auto& d = docs[i];
      try {
        const auto result = pipeline->annotate_text(input.document(i));
        outputs[i] = args.format == "pubtator" ? pubtator_block(d, result)
                                               : to_api_json(result).dump() + "\n";
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < args.jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  int code = kExitOk;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (outputs[i]) {
      std::cout << *outputs[i];
    } else {
      std::cerr << "bioann: document " << docs[i].doc_id << ": " << errors[i] << "\n";
      code = kExitDocFailures;
    }
  }
  std::cout.flush();
  return code;
}

// ---- index -----------------------------------------------------------------

struct IndexArgs {
  std::vector<std::string> lexicons;
  std::string out;
  std::string type = "drug";
  int dim = static_cast<int>(MockEncoder::kDefaultDim);
};

int cmd_index(const IndexArgs& args) {
  const auto type = parse_entity_type(args.type);
  if (!type) fail("unknown entity type '" + args.type + "'");
  if (args.dim <= 0) fail("--dim must be positive");
  Lexicon lex(*type);
  try {
    for (const auto& path : args.lexicons) lex.merge(Lexicon::load_file(path, *type));
  } catch (const Error& e) {
    fail(e.what());
  }
  try {
    const MockEncoder encoder(args.dim);
    const auto index = build_index(lex, encoder);
    write_index_file(args.out, index);
    std::cout << nlohmann::json{{"out", args.out}, {"rows", index.size()}, {"dim", index.dim()}}
                     .dump()
              << "\n";
  } catch (const Error& e) {
    fail(e.what());
  }
  return kExitOk;
}

// ---- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string gold;
  std::string pred;
  std::string task = "ner";
};

std::vector<GoldDocument> parse_or_exit(const std::string& path) {
  try {
    return parse_pubtator_file(path);
  } catch (const Error& e) {
    fail(path + ": " + e.what());
  }
}

int cmd_eval(const EvalArgs& args) {
  const auto gold = parse_or_exit(args.gold);
  const auto pred = parse_or_exit(args.pred);
  char line[160];
  if (args.task == "ner") {
    const auto score = ner_f1(span_keys(gold), span_keys(pred));
    std::printf("%-10s %6s %6s %6s %9s %9s %9s\n", "type", "tp", "fp", "fn", "precision",
                "recall", "f1");
    auto row = [&](std::string_view name, const PrfCounts& c) {
      std::snprintf(line, sizeof(line), "%-10.*s %6zu %6zu %6zu %9.3f %9.3f %9.3f\n",
                    static_cast<int>(name.size()), name.data(), c.tp, c.fp, c.fn,
                    c.precision(), c.recall(), c.f1());
      std::fputs(line, stdout);
    };
    for (const auto& [type, c] : score.per_type) {
      if (c.tp + c.fp + c.fn > 0) row(to_string(type), c);
    }
    row("overall", score.overall);
    return kExitOk;
  }
  const auto items = nen_items(gold, pred);
  try {
    const double acc = nen_accuracy(items);
    std::size_t correct = static_cast<std::size_t>(acc * static_cast<double>(items.size()) + 0.5);
    std::printf("%-10s %8s %8s %9s\n", "type", "correct", "total", "accuracy");
    std::printf("%-10s %8zu %8zu %9.3f\n", "overall", correct, items.size(), acc);
  } catch (const EmptyEvaluation& e) {
    fail(std::string(e.what()) + " (no gold mentions carry CUIs)", kExitDocFailures);
  }
  return kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
  std::string docs;
  std::string config;
  std::string mode = "plain";
  int n = 10;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

int cmd_bench(const BenchArgs& args) {
  if (args.n < 1) fail("--n must be at least 1");
  std::ifstream probe(args.docs);
  if (!probe) fail("cannot read corpus " + args.docs);
  const Input input = read_docs(args.docs, "auto");
  const auto& docs = input.docs;
  if (docs.empty()) fail("corpus " + args.docs + " holds no documents");

  PipelineConfig config = read_config(args.config);
  const auto pipeline = make_pipeline(config);

  nlohmann::json report = {{"mode", args.mode}};
  try {
    if (args.mode == "plain") {
      std::vector<double> times;
      for (int i = 0; i < args.n; ++i) {
        const Document doc = input.document(static_cast<std::size_t>(i) % docs.size());
        const auto t = Clock::now();
        pipeline->annotate_text(doc);
        times.push_back(seconds_since(t));
      }
      report["report"] = to_json(summarize(times));
    } else {
      InMemoryFetcher fetcher;
      std::vector<std::string> pmids;
      for (int i = 0; i < args.n; ++i) {
        const auto& d = docs[static_cast<std::size_t>(i) % docs.size()];
        pmids.push_back(std::to_string(10000000 + i));
        fetcher.add(pmids.back(), d.title, d.abstract_text);
      }
      const auto dir = std::filesystem::temp_directory_path() /
                       ("bioann-bench-" + std::to_string(::getpid()));
      std::filesystem::create_directories(dir);
      std::vector<double> cold, warm;
      {
        AnnotationStore store(dir / "bench.bann");
        for (const auto& p : pmids) {
          auto t = Clock::now();
          pipeline->annotate_pmid(p, &store, fetcher);
          cold.push_back(seconds_since(t));
          t = Clock::now();
          pipeline->annotate_pmid(p, &store, fetcher);
          warm.push_back(seconds_since(t));
        }
      }
      std::filesystem::remove_all(dir);
      const auto c = summarize(cold);
      const auto w = summarize(warm);
      report["cold"] = to_json(c);
      report["warm"] = to_json(w);
      report["warm_over_cold"] = c.mean_s > 0 ? w.mean_s / c.mean_s : 0.0;
    }
  } catch (const Error& e) {
    fail(e.what(), kExitDocFailures);
  }
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biomedical named entity recognition and normalization"};
  app.require_subcommand(1);

  ServeArgs serve;
  auto* s = app.add_subcommand("serve", "Run the REST service");
  s->add_option("--config", serve.config, "Pipeline config JSON (or $BIOANN_CONFIG)");
  s->add_option("--addr", serve.addr, "host:port to listen on (or $BIOANN_ADDR)");

  AnnotateArgs annotate;
  auto* a = app.add_subcommand("annotate", "Annotate text lines or a PubTator file");
  a->add_option("input", annotate.input, "Input file; stdin when absent or '-'");
  a->add_option("--format", annotate.format, "Output format")
      ->check(CLI::IsMember({"json", "pubtator"}));
  a->add_option("--input-format", annotate.input_format, "Input format")
      ->check(CLI::IsMember({"auto", "text", "pubtator"}));
  a->add_option("--config", annotate.config, "Pipeline config JSON (or $BIOANN_CONFIG)");
  a->add_option("--jobs", annotate.jobs, "Worker threads")->check(CLI::Range(1, 64));

  IndexArgs index;
  auto* x = app.add_subcommand("index", "Build an embedding index from lexicons");
  x->add_option("--lexicon", index.lexicons, "Lexicon TSV file(s)")->required();
  x->add_option("--out", index.out, "Output index path")->required();
  x->add_option("--type", index.type, "Entity type of the lexicon rows");
  x->add_option("--dim", index.dim, "Embedding dimension");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Score predictions against gold PubTator");
  e->add_option("--gold", eval.gold, "Gold PubTator file")->required();
  e->add_option("--pred", eval.pred, "Predicted PubTator file")->required();
  e->add_option("--task", eval.task, "ner or nen")->check(CLI::IsMember({"ner", "nen"}));

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Time per-document annotation");
  b->add_option("--docs", bench.docs, "Corpus (PubTator or text lines)")->required();
  b->add_option("--n", bench.n, "Documents to annotate");
  b->add_option("--mode", bench.mode, "plain or pmid")->check(CLI::IsMember({"plain", "pmid"}));
  b->add_option("--config", bench.config, "Pipeline config JSON (or $BIOANN_CONFIG)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitUsage;
  }

  try {
    if (*s) return cmd_serve(serve);
    if (*a) return cmd_annotate(annotate);
    if (*x) return cmd_index(index);
    if (*e) return cmd_eval(eval);
    if (*b) return cmd_bench(bench);
  } catch (const Exit& exit) {
    return exit.code;
  } catch (const std::exception& ex) {
    std::cerr << "bioann: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
