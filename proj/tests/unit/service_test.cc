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


#include <regex>
#include <string>
#include <thread>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "bioann/error.h"
#include "bioann/ingest.h"
#include "bioann/remote_tagger.h"
#include "bioann/service.h"
#include "bioann/store.h"
#include "support/fixtures.h"
#include "support/stub_server.h"

namespace bioann {
namespace {

using nlohmann::json;
using testing::TempDir;

std::shared_ptr<InMemoryFetcher> two_docs() {
  auto f = std::make_shared<InMemoryFetcher>();
  f->add("10000001", "Atg7 suppresses tumor growth.", "Arginine is required.");
  f->add("10000002", "BRAF V600E in melanoma.", "No further mentions.");
  return f;
}

std::shared_ptr<const Pipeline> dead_backend_pipeline() {
  auto models = testing::data_models();
  models.tagger = std::make_shared<RemoteTagger>("http://127.0.0.1:1", 500);
  auto cfg = testing::data_config();
  cfg.backend = BackendKind::kRemote;
  cfg.remote_url = "http://127.0.0.1:1";
  return std::make_shared<const Pipeline>(cfg, std::move(models));
}

void check_error_body(const HttpReply& r) {
  const auto j = json::parse(r.body);
  CHECK(j.is_object());
  CHECK(j.size() == 1);
  CHECK(j["error"].is_string());
}

TEST_SUITE("service") {

TEST_CASE("/plain") {
  AnnotationService svc(testing::data_pipeline(), nullptr, nullptr);
  auto r = svc.plain(R"({"text": ""})");
  CHECK(r.status == 200);
  CHECK(json::parse(r.body)["annotations"].empty());

  r = svc.plain(json{{"text", testing::kExampleSentence}}.dump());
  REQUIRE(r.status == 200);
  bool found = false;
  const auto body = json::parse(r.body);
  for (const auto& a : body["annotations"]) {
    found = found || (a["obj"] == "drug" && a["id"] == json{"mesh:D001120"} &&
                      a["mention"] == "arginine");
  }
  CHECK(found);

  r = svc.plain(R"({"txt": "Atg7"})");
  CHECK(r.status == 400);
  check_error_body(r);
  CHECK(json::parse(r.body)["error"].get<std::string>().find("text") != std::string::npos);
  for (const char* bad : {"", "nope", "[1]", R"({"text": 5})", R"({"text": null})"}) {
    CAPTURE(bad);
    r = svc.plain(bad);
    CHECK(r.status == 400);
    check_error_body(r);
  }
  r = svc.plain(json{{"text", std::string(100001, 'a')}}.dump());
  CHECK(r.status == 400);
  check_error_body(r);
}

TEST_CASE("/plain with the tagging backend down") {
  AnnotationService svc(dead_backend_pipeline(), nullptr, nullptr);
  const auto r = svc.plain(R"({"text": "Atg7 acts."})");
  CHECK(r.status == 503);
  check_error_body(r);
  const auto h = svc.health();
  CHECK(h.status == 200);
  const auto j = json::parse(h.body);
  CHECK(j["status"] == "ok");
  CHECK(j["backend"] == "remote");
  CHECK(j["backend_ok"] == false);
}

TEST_CASE("/pmid and /health") {
  TempDir dir;
  auto store = std::make_shared<AnnotationStore>(dir / "s.bann");
  AnnotationService svc(testing::data_pipeline(), store, two_docs());

  auto h = json::parse(svc.health().body);
  CHECK(h["status"] == "ok");
  CHECK(h["cache_records"] == 0);
  CHECK(h["backend"] == "gazetteer");
  CHECK(h["backend_ok"] == true);
  CHECK(h["pipeline_version"] == kDefaultPipelineVersion);

  auto r = svc.pmid(R"({"pmids": ["10000001"]})");
  REQUIRE(r.status == 200);
  CHECK(json::parse(svc.health().body)["cache_records"] == 1);

  r = svc.pmid(R"({"pmids": ["10000002", "10000001"]})");
  REQUIRE(r.status == 200);
  const auto cold = json::parse(r.body);
  REQUIRE(cold.size() == 2);
  CHECK(cold[0]["pmid"] == "10000002");
  CHECK(cold[1]["pmid"] == "10000001");
  CHECK(cold[0]["status"] == "ok");
  CHECK(cold[1]["status"] == "ok");
  CHECK(cold[0]["result"]["pmid"] == "10000002");

  auto strip = [](json j) {
    for (auto& item : j) item["result"].erase("elapsed_ms");
    return j.dump();
  };
  const auto warm = json::parse(svc.pmid(R"({"pmids": ["10000002", "10000001"]})").body);
  CHECK(strip(warm) == strip(cold));

  r = svc.pmid(R"({"pmids": ["10000001", "4242", "10000002"]})");
  REQUIRE(r.status == 200);
  const auto mixed = json::parse(r.body);
  CHECK(mixed[0]["status"] == "ok");
  CHECK(mixed[1]["status"] == "not_found");
  CHECK(mixed[1]["error"].is_string());
  CHECK_FALSE(mixed[1].contains("result"));
  CHECK(mixed[2]["status"] == "ok");
  CHECK(json::parse(svc.health().body)["cache_records"] == 2);
}

TEST_CASE("/pmid request validation") {
  AnnotationService svc(testing::data_pipeline(), nullptr, two_docs());
  json many = {{"pmids", json::array()}};
  for (int i = 0; i < 101; ++i) many["pmids"].push_back(std::to_string(i + 1));
  for (const std::string& bad : {std::string(R"({"pmids": []})"), many.dump(),
                                std::string(R"({"pmids": ["12a"]})"),
                                std::string(R"({"pmids": [12]})"),
                                std::string(R"({"pmids": "12"})"), std::string("{}"),
                                std::string("nope")}) {
    const auto r = svc.pmid(bad);
    CHECK(r.status == 400);
    check_error_body(r);
  }
  many["pmids"].erase(100);
  CHECK(svc.pmid(many.dump()).status == 200);

  AnnotationService no_fetcher(testing::data_pipeline(), nullptr, nullptr);
  const auto r = json::parse(no_fetcher.pmid(R"({"pmids": ["1"]})").body);
  CHECK(r[0]["status"] == "error");
}

TEST_CASE("listen address parsing") {
  const auto a = parse_listen_address("127.0.0.1:8080");
  CHECK(a.host == "127.0.0.1");
  CHECK(a.port == 8080);
  const auto b = parse_listen_address(":0");
  CHECK(b.host == "0.0.0.0");
  CHECK(b.port == 0);
  for (const char* bad : {"localhost", "h:", "h:x", "h:70000", "h:-1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_listen_address(bad), ConfigError);
  }
}

TEST_CASE("http server end to end") {
  TempDir dir;
  auto store = std::make_shared<AnnotationStore>(dir / "s.bann");
  AnnotationService svc(testing::data_pipeline(), store, two_docs());
  HttpServer server(svc);
  const int port = server.bind({"127.0.0.1", 0});
  REQUIRE(port > 0);
  server.start();

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(health->get_header_value("Content-Type") == "application/json");

  auto plain = client.Post("/plain", json{{"text", testing::kExampleSentence}}.dump(),
                           "application/json");
  REQUIRE(plain);
  CHECK(plain->status == 200);
  CHECK(json::parse(plain->body)["annotations"].size() == 3);

  auto bad = client.Post("/plain", R"({"txt": 1})", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  CHECK(json::parse(bad->body)["error"].is_string());

  auto pm = client.Post("/pmid", R"({"pmids": ["10000001"]})", "application/json");
  REQUIRE(pm);
  CHECK(pm->status == 200);
  CHECK(json::parse(pm->body)[0]["status"] == "ok");

  for (const char* path : {"/nowhere", "/plain"}) {
    auto res = client.Get(path);
    REQUIRE(res);
    CHECK(res->status >= 400);
    CHECK(json::parse(res->body)["error"].is_string());
  }

  // Identical requests in parallel give identical bodies once elapsed_ms is cut.
  const std::regex elapsed(R"("elapsed_ms":[-+0-9.eE]+,?)");
  std::vector<std::string> bodies(8);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    threads.emplace_back([&, i] {
      httplib::Client c("127.0.0.1", port);
      auto res = c.Post("/plain", json{{"text", testing::kExampleSentence}}.dump(),
                        "application/json");
      if (res && res->status == 200) bodies[i] = std::regex_replace(res->body, elapsed, "");
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& b : bodies) {
    CHECK_FALSE(b.empty());
    CHECK(b == bodies[0]);
  }

  server.stop();
  HttpServer again(svc);
  CHECK_THROWS_AS(again.bind({"256.0.0.1", 1}), IoFailure);
}

}  // TEST_SUITE

}  // namespace
}  // namespace bioann
