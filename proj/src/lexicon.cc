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

#include "bioann/lexicon.h"

#include <algorithm>
#include <fstream>

#include "bioann/error.h"
#include "bioann/utf8.h"

namespace bioann {
namespace {

bool is_hyphen(char32_t c) {
  return c == U'-' || (c >= 0x2010 && c <= 0x2015) || c == 0x2212;
}

std::string_view greek_name(char32_t c) {
  static constexpr std::string_view kNames[] = {
      "alpha", "beta",  "gamma",   "delta", "epsilon", "zeta",
      "eta",   "theta", "iota",    "kappa", "lambda",  "mu",
      "nu",    "xi",    "omicron", "pi",    "rho",     "sigma",
      "sigma", "tau",   "upsilon", "phi",   "chi",     "psi",
      "omega",
  };
  if (c >= 0x3B1 && c <= 0x3C9) return kNames[c - 0x3B1];
  if (c == 0xB5) return "mu";  // micro sign
  return {};
}

std::u32string strip_punct(std::u32string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (utf8::is_punct(s[b]) || utf8::is_space(s[b]))) ++b;
  while (e > b && (utf8::is_punct(s[e - 1]) || utf8::is_space(s[e - 1]))) --e;
  return std::u32string(s.substr(b, e - b));
}

std::u32string collapse(std::u32string_view s) {
  std::u32string out;
  bool gap = false;
  for (char32_t c : s) {
    if (utf8::is_space(c) || is_hyphen(c)) {
      gap = true;
      continue;
    }
    if (gap && !out.empty()) out.push_back(U' ');
    gap = false;
    out.push_back(c);
  }
  return out;
}

std::u32string depluralize(std::u32string s) {
  const auto space = s.rfind(U' ');
  const std::size_t word_begin = space == std::u32string::npos ? 0 : space + 1;
  if (s.size() - word_begin > 3 && s.back() == U's') s.pop_back();
  return s;
}

std::u32string spell_greek(std::u32string_view s) {
  std::u32string out;
  for (char32_t c : s) {
    const auto name = greek_name(c);
    if (name.empty()) {
      out.push_back(c);
    } else {
      out.append(name.begin(), name.end());
    }
  }
  return out;
}

}  // namespace

Lexicon Lexicon::load(std::istream& in, EntityType etype, const std::string& source) {
  Lexicon lex(etype);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (auto tab = rest.find('\t'); tab != std::string_view::npos;
         tab = rest.find('\t')) {
      fields.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    fields.push_back(rest);

    if (fields.size() != 3) {
      throw LexiconFormatError(source, line_no,
                               "expected 3 tab-separated fields, got " +
                                   std::to_string(fields.size()));
    }
    if (!is_valid_cui(fields[0])) {
      throw LexiconFormatError(source, line_no,
                               "malformed CUI '" + std::string(fields[0]) + "'");
    }
    if (fields[1].empty() || !utf8::is_valid(fields[1])) {
      throw LexiconFormatError(source, line_no, "empty or invalid name");
    }
    if (fields[2] != "0" && fields[2] != "1") {
      throw LexiconFormatError(source, line_no, "canonical flag must be 0 or 1");
    }
    lex.add(fields[0], fields[1], fields[2] == "1");
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::string& path, EntityType etype) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon " + path);
  return load(in, etype, path);
}

void Lexicon::add(std::string_view cui, std::string_view name, bool canonical) {
  if (!is_valid_cui(cui)) throw InvalidInput("malformed CUI '" + std::string(cui) + "'");
  if (name.empty()) throw InvalidInput("empty lexicon name");

  auto& ids = entries_[utf8::to_lower(name)];
  if (std::find(ids.begin(), ids.end(), cui) == ids.end()) ids.emplace_back(cui);

  const std::string id(cui);
  if (canonical) {
    if (explicit_canonical_.insert(id).second) canonical_[id] = std::string(name);
  } else if (!canonical_.contains(id)) {
    canonical_[id] = std::string(name);
  }
}

void Lexicon::merge(const Lexicon& other) {
  for (const auto& [key, ids] : other.entries_) {
    auto& mine = entries_[key];
    for (const auto& id : ids) {
      if (std::find(mine.begin(), mine.end(), id) == mine.end()) mine.push_back(id);
    }
  }
  for (const auto& [id, name] : other.canonical_) {
    const bool theirs_explicit = other.explicit_canonical_.contains(id);
    if (theirs_explicit && explicit_canonical_.insert(id).second) {
      canonical_[id] = name;
    } else if (!canonical_.contains(id)) {
      canonical_[id] = name;
    }
  }
}

std::size_t Lexicon::pair_count() const {
  std::size_t n = 0;
  for (const auto& [_, ids] : entries_) n += ids.size();
  return n;
}

const std::vector<std::string>* Lexicon::lookup(std::string_view key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, std::string>> Lexicon::pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(pair_count());
  for (const auto& [key, ids] : entries_) {
    for (const auto& id : ids) out.emplace_back(key, id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> normalize_keys(std::string_view name) {
  if (name.empty()) throw InvalidInput("normalize_keys: empty name");

  std::vector<std::u32string> stages;
  stages.push_back(utf8::to_lower(utf8::decode(name)));
  stages.push_back(strip_punct(stages.back()));
  stages.push_back(collapse(stages.back()));
  stages.push_back(depluralize(stages.back()));
  stages.push_back(spell_greek(stages.back()));

  std::vector<std::string> keys;
  for (const auto& s : stages) {
    if (s.empty()) continue;
    auto key = utf8::encode(s);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      keys.push_back(std::move(key));
    }
  }
  return keys;
}

std::optional<RuleMatch> rule_normalize(std::string_view mention,
                                        const Lexicon& lexicon) {
  if (mention.empty()) return std::nullopt;
  for (auto& key : normalize_keys(mention)) {
    if (const auto* ids = lexicon.lookup(key)) return RuleMatch{*ids, std::move(key)};
  }
  return std::nullopt;
}

}  // namespace bioann
