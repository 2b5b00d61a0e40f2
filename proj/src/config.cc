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

#include "bioann/config.h"

#include <filesystem>
#include <fstream>
#include <initializer_list>

#include "bioann/error.h"

namespace bioann {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || base_dir.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

EntityType type_key(const std::string& name, const std::string& where) {
  auto t = parse_entity_type(name);
  if (!t) throw ConfigError("unknown entity type '" + name + "' in " + where);
  return *t;
}

}  // namespace

std::string_view to_string(BackendKind kind) {
  return kind == BackendKind::kRemote ? "remote" : "gazetteer";
}

std::string_view to_string(EncoderKind kind) {
  return kind == EncoderKind::kRemote ? "remote" : "mock";
}

double PipelineConfig::threshold_for(EntityType type) const {
  auto it = thresholds.find(type);
  return it == thresholds.end() ? default_threshold : it->second;
}

void PipelineConfig::validate() const {
  if (enabled_types.empty()) throw ConfigError("enabled_types is empty");
  if (pipeline_version.empty()) throw ConfigError("pipeline_version is empty");
  if (max_len < 16) throw ConfigError("max_len must be at least 16");
  if (max_chars == 0) throw ConfigError("max_chars must be positive");
  auto check_tau = [](double t) {
    if (!(t >= -1.0 && t <= 1.0)) throw ConfigError("threshold outside [-1, 1]");
  };
  check_tau(default_threshold);
  for (const auto& [type, t] : thresholds) check_tau(t);
  if (backend == BackendKind::kRemote && remote_url.empty()) {
    throw ConfigError("remote backend needs a url");
  }
  if (encoder == EncoderKind::kRemote && encoder_url.empty()) {
    throw ConfigError("remote encoder needs a url");
  }
  if (encoder_dim <= 0) throw ConfigError("encoder dim must be positive");
  fetcher.validate();
}

PipelineConfig config_from_json(const json& j, const std::string& base_dir) {
  check_keys(j, "config",
             {"pipeline_version", "overlap_policy", "max_len", "max_chars",
              "enabled_types", "thresholds", "backend", "encoder", "lexicons",
              "indexes", "abbreviations", "store", "fetcher"});
  PipelineConfig c;
  const std::string w = "config";
  if (j.contains("pipeline_version")) {
    c.pipeline_version = get<std::string>(j, "pipeline_version", w);
  }
  if (j.contains("overlap_policy")) {
    try {
      c.overlap_policy = overlap_policy_from_string(get<std::string>(j, "overlap_policy", w));
    } catch (const InvalidInput& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("max_len")) c.max_len = get<std::size_t>(j, "max_len", w);
  if (j.contains("max_chars")) c.max_chars = get<std::size_t>(j, "max_chars", w);
  if (j.contains("enabled_types")) {
    c.enabled_types.clear();
    for (const auto& name : get<std::vector<std::string>>(j, "enabled_types", w)) {
      c.enabled_types.insert(type_key(name, "enabled_types"));
    }
  }
  if (j.contains("thresholds")) {
    const json& t = j["thresholds"];
    if (!t.is_object()) throw ConfigError("thresholds must be an object");
    for (const auto& [key, value] : t.items()) {
      if (!value.is_number()) throw ConfigError("thresholds." + key + " must be a number");
      if (key == "default") {
        c.default_threshold = value.get<double>();
      } else {
        c.thresholds[type_key(key, "thresholds")] = value.get<double>();
      }
    }
  }
  if (j.contains("backend")) {
    const json& b = j["backend"];
    check_keys(b, "backend", {"kind", "gazetteers", "from_lexicons", "url", "timeout_ms"});
    const auto kind = b.contains("kind") ? get<std::string>(b, "kind", "backend") : "gazetteer";
    if (kind == "gazetteer") {
      c.backend = BackendKind::kGazetteer;
    } else if (kind == "remote") {
      c.backend = BackendKind::kRemote;
    } else {
      throw ConfigError("unknown backend kind '" + kind + "'");
    }
    if (b.contains("gazetteers")) {
      for (const auto& p : get<std::vector<std::string>>(b, "gazetteers", "backend")) {
        c.gazetteer_paths.push_back(resolve(base_dir, p));
      }
    }
    if (b.contains("from_lexicons")) {
      c.gazetteer_from_lexicons = get<bool>(b, "from_lexicons", "backend");
    }
    if (b.contains("url")) c.remote_url = get<std::string>(b, "url", "backend");
    if (b.contains("timeout_ms")) c.remote_timeout_ms = get<int>(b, "timeout_ms", "backend");
  }
  if (j.contains("encoder")) {
    const json& e = j["encoder"];
    check_keys(e, "encoder", {"kind", "url", "dim", "timeout_ms"});
    const auto kind = e.contains("kind") ? get<std::string>(e, "kind", "encoder") : "mock";
    if (kind == "mock") {
      c.encoder = EncoderKind::kMock;
    } else if (kind == "remote") {
      c.encoder = EncoderKind::kRemote;
    } else {
      throw ConfigError("unknown encoder kind '" + kind + "'");
    }
    if (e.contains("url")) c.encoder_url = get<std::string>(e, "url", "encoder");
    if (e.contains("dim")) c.encoder_dim = get<int>(e, "dim", "encoder");
    if (e.contains("timeout_ms")) c.encoder_timeout_ms = get<int>(e, "timeout_ms", "encoder");
  }
  if (j.contains("lexicons")) {
    const json& l = j["lexicons"];
    if (!l.is_object()) throw ConfigError("lexicons must be an object");
    for (const auto& [key, value] : l.items()) {
      auto& paths = c.lexicon_paths[type_key(key, "lexicons")];
      if (value.is_string()) {
        paths.push_back(resolve(base_dir, value.get<std::string>()));
      } else if (value.is_array()) {
        for (const auto& p : value) {
          if (!p.is_string()) throw ConfigError("lexicons." + key + " must hold strings");
          paths.push_back(resolve(base_dir, p.get<std::string>()));
        }
      } else {
        throw ConfigError("lexicons." + key + " must be a path or list of paths");
      }
    }
  }
  if (j.contains("indexes")) {
    const json& x = j["indexes"];
    if (!x.is_object()) throw ConfigError("indexes must be an object");
    for (const auto& [key, value] : x.items()) {
      if (!value.is_string()) throw ConfigError("indexes." + key + " must be a path");
      c.index_paths[type_key(key, "indexes")] = resolve(base_dir, value.get<std::string>());
    }
  }
  if (j.contains("abbreviations")) {
    c.abbreviations_path = resolve(base_dir, get<std::string>(j, "abbreviations", w));
  }
  if (j.contains("store")) c.store_path = resolve(base_dir, get<std::string>(j, "store", w));
  if (j.contains("fetcher")) {
    const json& f = j["fetcher"];
    const std::string fw = "fetcher";
    check_keys(f, fw, {"base_url", "mode", "timeout_ms", "retries", "max_connections",
                       "backoff_ms", "api_key"});
    if (f.contains("base_url")) c.fetcher.base_url = get<std::string>(f, "base_url", fw);
    if (f.contains("mode")) c.fetcher.mode = fetch_mode_from_string(get<std::string>(f, "mode", fw));
    if (f.contains("timeout_ms")) c.fetcher.timeout_ms = get<int>(f, "timeout_ms", fw);
    if (f.contains("retries")) c.fetcher.retries = get<int>(f, "retries", fw);
    if (f.contains("max_connections")) {
      c.fetcher.max_connections = get<int>(f, "max_connections", fw);
    }
    if (f.contains("backoff_ms")) c.fetcher.backoff_ms = get<int>(f, "backoff_ms", fw);
    if (f.contains("api_key")) c.fetcher.api_key = get<std::string>(f, "api_key", fw);
  }
  c.validate();
  return c;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config " + path + " is not valid JSON");
  return config_from_json(j, std::filesystem::path(path).parent_path().string());
}

}  // namespace bioann
