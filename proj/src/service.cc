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

#include "bioann/service.h"

#include <charconv>
#include <iostream>

#include <json.hpp>

#include "bioann/error.h"
#include "bioann/result_json.h"

#include <httplib.h>  // last, see remote.cc

namespace bioann {

using nlohmann::json;

std::string error_body(std::string_view message) {
  return json{{"error", std::string(message)}}.dump();
}

AnnotationService::AnnotationService(std::shared_ptr<const Pipeline> pipeline,
                                     std::shared_ptr<AnnotationStore> store,
                                     std::shared_ptr<const AbstractFetcher> fetcher)
    : pipeline_(std::move(pipeline)), store_(std::move(store)), fetcher_(std::move(fetcher)) {
  if (!pipeline_) throw ConfigError("service needs a pipeline");
}

HttpReply AnnotationService::plain(std::string_view body) const {
  const auto j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return {400, error_body("body must be a JSON object")};
  if (!j.contains("text") || !j["text"].is_string()) {
    return {400, error_body("field 'text' is required and must be a string")};
  }
  try {
    const auto result = pipeline_->annotate_text(Document{std::nullopt, j["text"].get<std::string>()});
    return {200, to_api_json(result).dump()};
  } catch (const InvalidInput& e) {
    return {400, error_body(e.what())};
  } catch (const BackendUnavailable& e) {
    return {503, error_body(e.what())};
  } catch (const Error& e) {
    return {500, error_body(e.what())};
  }
}

HttpReply AnnotationService::pmid(std::string_view body) const {
  const auto j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return {400, error_body("body must be a JSON object")};
  if (!j.contains("pmids") || !j["pmids"].is_array()) {
    return {400, error_body("field 'pmids' is required and must be a list")};
  }
  const json& pmids = j["pmids"];
  if (pmids.empty()) return {400, error_body("'pmids' is empty")};
  if (pmids.size() > kMaxPmidsPerRequest) {
    return {400, error_body("at most " + std::to_string(kMaxPmidsPerRequest) +
                            " pmids per request")};
  }
  for (const auto& p : pmids) {
    if (!p.is_string() || !is_pmid(p.get<std::string>())) {
      return {400, error_body("every pmid must be a string of digits")};
    }
  }

  json out = json::array();
  for (const auto& p : pmids) {
    const std::string id = p.get<std::string>();
    json item = {{"pmid", id}};
    try {
      if (!fetcher_) throw FetchFailed("no fetcher configured");
      item["result"] = to_api_json(pipeline_->annotate_pmid(id, store_.get(), *fetcher_));
      item["status"] = "ok";
    } catch (const PmidNotFound& e) {
      item["status"] = "not_found";
      item["error"] = e.what();
    } catch (const Error& e) {
      item["status"] = "error";
      item["error"] = e.what();
    }
    out.push_back(std::move(item));
  }
  return {200, out.dump()};
}

HttpReply AnnotationService::health() const {
  const json j = {{"status", "ok"},
                  {"pipeline_version", pipeline_->config().pipeline_version},
                  {"backend", std::string(pipeline_->tagger().kind())},
                  {"backend_ok", pipeline_->tagger().healthy()},
                  {"cache_records", store_ ? store_->size() : 0}};
  return {200, j.dump()};
}

ListenAddress parse_listen_address(std::string_view addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("listen address '" + std::string(addr) + "' lacks a port");
  }
  ListenAddress out;
  out.host = colon == 0 ? "0.0.0.0" : std::string(addr.substr(0, colon));
  const auto port = addr.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), out.port);
  if (ec != std::errc() || ptr != port.data() + port.size() || out.port < 0 ||
      out.port > 65535) {
    throw ConfigError("bad port in listen address '" + std::string(addr) + "'");
  }
  return out;
}

HttpServer::HttpServer(const AnnotationService& service)
    : server_(std::make_unique<httplib::Server>()) {
  auto reply = [](httplib::Response& res, const HttpReply& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server_->Post("/plain", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.plain(req.body));
  });
  server_->Post("/pmid", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.pmid(req.body));
  });
  server_->Get("/health", [&service, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service.health());
  });
  server_->set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(error_body(httplib::status_message(res.status)), "application/json");
    }
  });
  server_->set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(error_body(what), "application/json");
      });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const ListenAddress& addr) {
  int port = addr.port;
  if (port == 0) {
    port = server_->bind_to_any_port(addr.host);
  } else if (!server_->bind_to_port(addr.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw IoFailure("cannot bind " + addr.host + ":" + std::to_string(addr.port));
  }
  return port;
}

void HttpServer::run() { server_->listen_after_bind(); }

void HttpServer::start() {
  worker_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void HttpServer::stop() {
  if (server_) server_->stop();
  if (worker_.joinable()) worker_.join();
}

}  // namespace bioann
