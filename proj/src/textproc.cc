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

#include "bioann/textproc.h"

#include <fstream>

#include "bioann/error.h"
#include "bioann/utf8.h"

namespace bioann {
namespace {

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

TokenSpan make_token(std::u32string_view text, std::size_t b, std::size_t e) {
  return {b, e, utf8::encode(text.substr(b, e - b))};
}

}  // namespace

const AbbreviationList& AbbreviationList::defaults() {
  static const AbbreviationList list = [] {
    AbbreviationList l;
    for (std::string_view a :
         {"e.g.", "i.e.", "et al.", "Fig.", "Figs.", "vs.", "cf.", "approx.",
          "ca.", "Eq.", "Ref.", "Refs.", "Tab.", "resp.", "sp.", "spp.",
          "var.", "Dr.", "Prof.", "Inc.", "Ltd.", "Co."}) {
      l.add(a);
    }
    return l;
  }();
  return list;
}

AbbreviationList AbbreviationList::load(std::istream& in, bool include_defaults) {
  AbbreviationList list = include_defaults ? defaults() : AbbreviationList{};
  std::string line;
  while (std::getline(in, line)) {
    const auto entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    list.add(entry);
  }
  return list;
}

AbbreviationList AbbreviationList::load_file(const std::string& path,
                                             bool include_defaults) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open abbreviation list " + path);
  return load(in, include_defaults);
}

void AbbreviationList::add(std::string_view abbreviation) {
  auto entry = utf8::to_lower(utf8::decode(abbreviation));
  if (entry.empty() || entry.back() != U'.') entry.push_back(U'.');
  for (const auto& e : entries_) {
    if (e == entry) return;
  }
  entries_.push_back(std::move(entry));
}

bool AbbreviationList::protects(std::u32string_view text,
                                std::size_t period) const {
  const std::size_t end = period + 1;
  for (const auto& entry : entries_) {
    if (entry.size() > end) continue;
    const std::size_t start = end - entry.size();
    if (start > 0) {
      const char32_t before = text[start - 1];
      if (!utf8::is_space(before) && !utf8::is_punct(before)) continue;
    }
    bool match = true;
    for (std::size_t k = 0; k < entry.size() && match; ++k) {
      match = utf8::to_lower(text[start + k]) == entry[k];
    }
    if (match) return true;
  }
  return false;
}

std::vector<SentenceRange> segment_sentences(
    std::u32string_view text, const AbbreviationList& abbreviations) {
  std::vector<SentenceRange> out;
  auto emit = [&](std::size_t b, std::size_t e) {
    while (b < e && utf8::is_space(text[b])) ++b;
    while (e > b && utf8::is_space(text[e - 1])) --e;
    if (b < e) out.push_back({b, e});
  };

  std::size_t start = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (!is_terminator(text[i]) || !utf8::is_space(text[i + 1])) continue;
    std::size_t j = i + 1;
    while (j < text.size() && utf8::is_space(text[j])) ++j;
    if (j == text.size() || !utf8::is_upper(text[j])) continue;
    if (text[i] == U'.' && abbreviations.protects(text, i)) continue;
    emit(start, i + 1);
    start = i + 1;
  }
  emit(start, text.size());
  return out;
}

std::vector<SentenceRange> segment_sentences(
    std::string_view text, const AbbreviationList& abbreviations) {
  return segment_sentences(std::u32string_view(utf8::decode(text)),
                           abbreviations);
}

std::vector<TokenSpan> tokenize(std::u32string_view text) {
  std::vector<TokenSpan> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (utf8::is_space(text[i])) {
      ++i;
      continue;
    }
    std::size_t chunk_end = i;
    while (chunk_end < text.size() && !utf8::is_space(text[chunk_end])) {
      ++chunk_end;
    }

    std::size_t lead = i;
    while (lead < chunk_end && utf8::is_punct(text[lead])) {
      tokens.push_back(make_token(text, lead, lead + 1));
      ++lead;
    }
    std::size_t trail = chunk_end;
    while (trail > lead && utf8::is_punct(text[trail - 1])) --trail;
    if (lead < trail) tokens.push_back(make_token(text, lead, trail));
    for (std::size_t k = trail; k < chunk_end; ++k) {
      tokens.push_back(make_token(text, k, k + 1));
    }
    i = chunk_end;
  }
  return tokens;
}

std::vector<TokenSpan> tokenize(std::string_view text) {
  return tokenize(std::u32string_view(utf8::decode(text)));
}

}  // namespace bioann
