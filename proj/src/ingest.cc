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

#include "bioann/ingest.h"

#include <cstdlib>
#include <optional>
#include <random>
#include <thread>

#include <json.hpp>

#include "bioann/error.h"
#include "bioann/protocol.h"
#include "bioann/utf8.h"

#include <httplib.h>  // after the Eigen-using headers, see remote.cc

namespace bioann {
namespace {

struct Element {
  std::size_t inner_begin;
  std::size_t inner_end;
  std::size_t after;
};

// Finds <name ...>...</name> starting at `from`. A self-closing tag yields
// an empty element. Throws MalformedResponse when the element never closes.
std::optional<Element> find_element(std::string_view xml, std::string_view name,
                                    std::size_t from) {
  const std::string open = "<" + std::string(name);
  std::size_t pos = from;
  while ((pos = xml.find(open, pos)) != std::string_view::npos) {
    const std::size_t after_name = pos + open.size();
    if (after_name >= xml.size()) throw MalformedResponse("truncated tag <" + std::string(name));
    const char c = xml[after_name];
    if (c == '>' || c == ' ' || c == '/' || c == '\t' || c == '\n' || c == '\r') break;
    pos = after_name;
  }
  if (pos == std::string_view::npos) return std::nullopt;
  const std::size_t gt = xml.find('>', pos);
  if (gt == std::string_view::npos) throw MalformedResponse("truncated tag <" + std::string(name));
  if (xml[gt - 1] == '/') return Element{gt + 1, gt + 1, gt + 1};
  const std::string close = "</" + std::string(name) + ">";
  const std::size_t end = xml.find(close, gt + 1);
  if (end == std::string_view::npos) {
    throw MalformedResponse("unterminated <" + std::string(name) + ">");
  }
  return Element{gt + 1, end, end + close.size()};
}

void append_entity(std::string& out, std::string_view entity) {
  if (entity == "amp") return out.push_back('&');
  if (entity == "lt") return out.push_back('<');
  if (entity == "gt") return out.push_back('>');
  if (entity == "quot") return out.push_back('"');
  if (entity == "apos") return out.push_back('\'');
  if (entity.size() > 1 && entity[0] == '#') {
    const bool hex = entity[1] == 'x' || entity[1] == 'X';
    const std::string digits(entity.substr(hex ? 2 : 1));
    char* stop = nullptr;
    const unsigned long cp = std::strtoul(digits.c_str(), &stop, hex ? 16 : 10);
    if (!digits.empty() && *stop == '\0' && cp > 0 && cp <= 0x10FFFF &&
        !(cp >= 0xD800 && cp <= 0xDFFF)) {
      utf8::append(out, static_cast<char32_t>(cp));
      return;
    }
  }
  throw MalformedResponse("unknown XML entity &" + std::string(entity) + ";");
}

}  // namespace

std::string_view to_string(FetchMode mode) {
  return mode == FetchMode::kStubJson ? "stub_json" : "efetch_xml";
}

FetchMode fetch_mode_from_string(std::string_view name) {
  if (name == "efetch_xml") return FetchMode::kEfetchXml;
  if (name == "stub_json") return FetchMode::kStubJson;
  throw ConfigError("unknown fetch mode '" + std::string(name) + "'");
}

void FetcherConfig::validate() const {
  if (base_url.empty()) throw ConfigError("fetcher base_url is empty");
  protocol::split_url(base_url);
  if (timeout_ms <= 0) throw ConfigError("fetcher timeout_ms must be positive");
  if (retries < 0 || retries > 5) throw ConfigError("fetcher retries must be in [0, 5]");
  if (max_connections < 1 || max_connections > 64) {
    throw ConfigError("fetcher max_connections must be in [1, 64]");
  }
  if (backoff_ms < 0) throw ConfigError("fetcher backoff_ms must be nonnegative");
}

FetcherConfig with_env_override(FetcherConfig config) {
  if (const char* url = std::getenv(kFetchUrlEnv); url != nullptr && *url != '\0') {
    config.base_url = url;
  }
  return config;
}

std::chrono::milliseconds backoff_delay(int attempt, int base_ms, double u) {
  const double nominal = static_cast<double>(base_ms) * static_cast<double>(1LL << attempt);
  return std::chrono::milliseconds(static_cast<long long>(nominal * (0.75 + 0.5 * u)));
}

std::string xml_inner_text(std::string_view fragment) {
  std::string raw;
  raw.reserve(fragment.size());
  for (std::size_t i = 0; i < fragment.size();) {
    const char c = fragment[i];
    if (c == '<') {
      const std::size_t gt = fragment.find('>', i);
      if (gt == std::string_view::npos) throw MalformedResponse("unterminated inner tag");
      i = gt + 1;
    } else if (c == '&') {
      const std::size_t semi = fragment.find(';', i);
      if (semi == std::string_view::npos || semi - i > 10) {
        throw MalformedResponse("bad XML entity");
      }
      append_entity(raw, fragment.substr(i + 1, semi - i - 1));
      i = semi + 1;
    } else {
      raw.push_back(c);
      ++i;
    }
  }
  std::string out;
  bool pending_space = false;
  for (char c : raw) {
    if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

Document parse_efetch_xml(std::string_view body, const std::string& pmid) {
  const auto set = find_element(body, "PubmedArticleSet", 0);
  if (!set) throw MalformedResponse("no PubmedArticleSet element");
  const std::string_view inner =
      body.substr(set->inner_begin, set->inner_end - set->inner_begin);
  // unknown ids come back as an empty (possibly self-closed) set
  const auto article = find_element(inner, "PubmedArticle", 0);
  if (!article) throw PmidNotFound(pmid);
  const std::string_view art =
      inner.substr(article->inner_begin, article->inner_end - article->inner_begin);

  const auto title = find_element(art, "ArticleTitle", 0);
  if (!title) throw MalformedResponse("article has no ArticleTitle");
  std::string title_text =
      xml_inner_text(art.substr(title->inner_begin, title->inner_end - title->inner_begin));

  std::string abstract_text;
  for (std::size_t from = 0;;) {
    const auto part = find_element(art, "AbstractText", from);
    if (!part) break;
    const std::string piece =
        xml_inner_text(art.substr(part->inner_begin, part->inner_end - part->inner_begin));
    if (!piece.empty()) {
      if (!abstract_text.empty()) abstract_text.push_back(' ');
      abstract_text += piece;
    }
    from = part->after;
  }
  std::string text = title_text + " " + abstract_text;
  if (!utf8::is_valid(text)) throw MalformedResponse("abstract is not valid UTF-8");
  return Document{pmid, std::move(text)};
}

Document parse_stub_json(std::string_view body, const std::string& pmid) {
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw MalformedResponse("reply is not a JSON object");
  for (const char* key : {"title", "abstract"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw MalformedResponse(std::string("reply lacks string field '") + key + "'");
    }
  }
  if (j.contains("pmid") && j["pmid"] != pmid) {
    throw MalformedResponse("reply is for a different pmid");
  }
  std::string text = j["title"].get<std::string>() + " " + j["abstract"].get<std::string>();
  if (!utf8::is_valid(text)) throw MalformedResponse("abstract is not valid UTF-8");
  return Document{pmid, std::move(text)};
}

HttpFetcher::HttpFetcher(FetcherConfig config)
    : config_((config.validate(), std::move(config))), slots_(config_.max_connections) {}

Document HttpFetcher::fetch(const std::string& pmid) const {
  if (!is_pmid(pmid)) throw InvalidInput("invalid pmid '" + pmid + "'");
  const auto url = protocol::split_url(config_.base_url);
  std::string target;
  if (config_.mode == FetchMode::kStubJson) {
    target = url.path + "/" + pmid;
  } else {
    target = (url.path.empty() ? "/" : url.path) + "?db=pubmed&id=" + pmid +
             "&rettype=abstract&retmode=xml";
    if (!config_.api_key.empty()) target += "&api_key=" + config_.api_key;
  }

  thread_local std::mt19937_64 rng{std::random_device{}()};
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::string last_error;
  for (int attempt = 0; attempt <= config_.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff_delay(attempt - 1, config_.backoff_ms, jitter(rng)));
    }
    httplib::Result res{nullptr, httplib::Error::Unknown};
    {
      slots_.acquire();
      struct Release {
        std::counting_semaphore<64>& s;
        ~Release() { s.release(); }
      } release{slots_};
      httplib::Client client(url.origin);
      const auto timeout = std::chrono::milliseconds(config_.timeout_ms);
      client.set_connection_timeout(timeout);
      client.set_read_timeout(timeout);
      client.set_follow_location(true);
      ++attempts_;
      res = client.Get(target);
    }
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 404) throw PmidNotFound(pmid);
    if (res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw FetchFailed("PMID " + pmid + ": HTTP " + std::to_string(res->status));
    }
    return config_.mode == FetchMode::kStubJson ? parse_stub_json(res->body, pmid)
                                                : parse_efetch_xml(res->body, pmid);
  }
  throw FetchFailed("PMID " + pmid + ": " + last_error + " after " +
                    std::to_string(config_.retries + 1) + " attempts");
}

void InMemoryFetcher::add(const std::string& pmid, std::string title,
                          std::string abstract_text) {
  if (!is_pmid(pmid)) throw InvalidInput("invalid pmid '" + pmid + "'");
  docs_[pmid] = std::move(title) + " " + std::move(abstract_text);
}

Document InMemoryFetcher::fetch(const std::string& pmid) const {
  if (!is_pmid(pmid)) throw InvalidInput("invalid pmid '" + pmid + "'");
  auto it = docs_.find(pmid);
  if (it == docs_.end()) throw PmidNotFound(pmid);
  return Document{pmid, it->second};
}

}  // namespace bioann
