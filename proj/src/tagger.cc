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

#include "bioann/tagger.h"

#include <algorithm>
#include <fstream>

#include "bioann/error.h"
#include "bioann/utf8.h"

namespace bioann {

HeadMap TaggerBackend::tag(std::span<const TokenSpan> tokens,
                           const EntityTypeSet& types) const {
  if (types.contains(EntityType::kMutation)) {
    throw InvalidInput("mutation is not a tagger head; use recognize_mutations");
  }
  ++invocations_;
  HeadMap heads = do_tag(tokens, types);
  for (EntityType t : types) {
    auto it = heads.find(t);
    if (it == heads.end()) {
      throw ProtocolViolation("missing head '" + std::string(to_string(t)) + "'");
    }
    if (static_cast<std::size_t>(it->second.rows.rows()) != tokens.size()) {
      throw ProtocolViolation("head '" + std::string(to_string(t)) + "' has " +
                              std::to_string(it->second.rows.rows()) +
                              " rows for " + std::to_string(tokens.size()) +
                              " tokens");
    }
    if (!is_stochastic(it->second.rows)) {
      throw ProtocolViolation("head '" + std::string(to_string(t)) +
                              "' rows are not probability distributions");
    }
  }
  // Heads that were not requested are dropped.
  std::erase_if(heads, [&](const auto& kv) { return !types.contains(kv.first); });
  return heads;
}

// ---------------------------------------------------------------------------
// GazetteerTagger

GazetteerTagger GazetteerTagger::load(std::istream& in, const std::string& name) {
  GazetteerTagger g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError(name + ":" + std::to_string(line_no) +
                        ": expected '<type>\\t<phrase>'");
    }
    const auto type = parse_entity_type(std::string_view(line).substr(0, tab));
    if (!type || *type == EntityType::kMutation) {
      throw ConfigError(name + ":" + std::to_string(line_no) +
                        ": unknown or untaggable entity type");
    }
    g.add(*type, std::string_view(line).substr(tab + 1));
  }
  return g;
}

GazetteerTagger GazetteerTagger::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open gazetteer " + path);
  return load(in, path);
}

void GazetteerTagger::add(EntityType type, std::string_view phrase) {
  std::vector<std::string> seq;
  for (auto& tok : tokenize(phrase)) seq.push_back(utf8::to_lower(tok.surface));
  if (seq.empty()) return;
  auto& bucket = phrases_[type][seq.front()];
  if (std::find(bucket.begin(), bucket.end(), seq) == bucket.end()) {
    bucket.push_back(std::move(seq));
  }
}

void GazetteerTagger::merge(const GazetteerTagger& other) {
  for (const auto& [type, by_first] : other.phrases_) {
    for (const auto& [first, seqs] : by_first) {
      auto& bucket = phrases_[type][first];
      for (const auto& seq : seqs) {
        if (std::find(bucket.begin(), bucket.end(), seq) == bucket.end()) {
          bucket.push_back(seq);
        }
      }
    }
  }
}

std::size_t GazetteerTagger::phrase_count(EntityType type) const {
  auto it = phrases_.find(type);
  if (it == phrases_.end()) return 0;
  std::size_t n = 0;
  for (const auto& [_, seqs] : it->second) n += seqs.size();
  return n;
}

HeadMap GazetteerTagger::do_tag(std::span<const TokenSpan> tokens,
                                const EntityTypeSet& types) const {
  const auto n = static_cast<Eigen::Index>(tokens.size());
  constexpr double kRest = 1.0 - kHit;

  std::vector<std::string> lowered;
  lowered.reserve(tokens.size());
  for (const auto& t : tokens) lowered.push_back(utf8::to_lower(t.surface));

  HeadMap heads;
  for (EntityType type : types) {
    TagProbSeq seq{type, TagProbs(n, 3)};
    seq.rows.rowwise() = Eigen::RowVector3d(kRest / 2, kRest / 2, kHit);

    auto by_first = phrases_.find(type);
    if (by_first != phrases_.end()) {
      for (Eigen::Index i = 0; i < n;) {
        std::size_t best = 0;
        auto cands = by_first->second.find(lowered[static_cast<std::size_t>(i)]);
        if (cands != by_first->second.end()) {
          for (const auto& phrase : cands->second) {
            if (phrase.size() <= best ||
                static_cast<std::size_t>(i) + phrase.size() > tokens.size()) {
              continue;
            }
            if (std::equal(phrase.begin(), phrase.end(),
                           lowered.begin() + i)) {
              best = phrase.size();
            }
          }
        }
        if (best == 0) {
          ++i;
          continue;
        }
        seq.rows.row(i) << kHit, 0.0, kRest;
        for (std::size_t k = 1; k < best; ++k) {
          seq.rows.row(i + static_cast<Eigen::Index>(k)) << 0.0, kHit, kRest;
        }
        i += static_cast<Eigen::Index>(best);
      }
    }
    heads.emplace(type, std::move(seq));
  }
  return heads;
}

// ---------------------------------------------------------------------------
// Decoding

std::vector<Mention> decode_bio(const TagProbSeq& seq,
                                std::span<const TokenSpan> tokens,
                                std::u32string_view text) {
  if (static_cast<std::size_t>(seq.rows.rows()) != tokens.size()) {
    throw LengthMismatch("decode_bio: " + std::to_string(seq.rows.rows()) +
                         " rows for " + std::to_string(tokens.size()) + " tokens");
  }
  const auto labels = argmax_labels(seq.rows);

  std::vector<Mention> out;
  auto close = [&](std::size_t first, std::size_t last, double prob) {
    Mention m;
    m.begin = tokens[first].begin;
    m.end = tokens[last].end;
    m.etype = seq.etype;
    m.prob = prob;
    if (!text.empty()) {
      m.surface = utf8::encode(text.substr(m.begin, m.end - m.begin));
    } else {
      for (std::size_t k = first; k <= last; ++k) {
        if (k > first && tokens[k].begin > tokens[k - 1].end) m.surface += ' ';
        m.surface += tokens[k].surface;
      }
    }
    out.push_back(std::move(m));
  };

  bool open = false;
  std::size_t first = 0;
  double prob = 1.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto label = labels[i];
    const double win = seq.rows(static_cast<Eigen::Index>(i),
                                static_cast<Eigen::Index>(label));
    if (label == BioLabel::kO) {
      if (open) close(first, i - 1, prob);
      open = false;
    } else if (label == BioLabel::kB || !open) {
      if (open) close(first, i - 1, prob);
      open = true;
      first = i;
      prob = win;
    } else {
      prob = std::min(prob, win);
    }
  }
  if (open) close(first, labels.size() - 1, prob);
  return out;
}

std::string_view to_string(OverlapPolicy policy) {
  return policy == OverlapPolicy::kKeepAll ? "keep_all" : "longest_wins";
}

OverlapPolicy overlap_policy_from_string(std::string_view name) {
  if (name == "keep_all") return OverlapPolicy::kKeepAll;
  if (name == "longest_wins") return OverlapPolicy::kLongestWins;
  throw InvalidInput("unknown overlap policy '" + std::string(name) + "'");
}

std::vector<Mention> resolve_overlaps(std::vector<Mention> mentions,
                                      OverlapPolicy policy) {
  sort_mentions(mentions);
  if (policy == OverlapPolicy::kKeepAll) return mentions;

  auto beats = [](const Mention& winner, const Mention& loser) {
    if (winner.etype == loser.etype) return false;
    if (winner.begin > loser.begin || winner.end < loser.end) return false;
    const auto wl = winner.end - winner.begin;
    const auto ll = loser.end - loser.begin;
    if (wl != ll) return wl > ll;
    return priority_rank(winner.etype) < priority_rank(loser.etype);
  };

  std::vector<Mention> kept;
  kept.reserve(mentions.size());
  for (const auto& m : mentions) {
    const bool dominated = std::any_of(
        mentions.begin(), mentions.end(),
        [&](const Mention& other) { return beats(other, m); });
    if (!dominated) kept.push_back(m);
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Mutations

namespace {

bool is_amino_acid(char32_t c) {
  return c < 0x80 && std::u32string_view(U"ACDEFGHIKLMNPQRSTVWY").find(c) !=
                         std::u32string_view::npos;
}

bool is_base(char32_t c) { return c == U'A' || c == U'C' || c == U'G' || c == U'T'; }

std::size_t digits_at(std::u32string_view s, std::size_t i) {
  std::size_t j = i;
  while (j < s.size() && utf8::is_digit(s[j])) ++j;
  return j - i;
}

// Each matcher returns the match length at `i`, 0 if none.
std::size_t match_substitution(std::u32string_view s, std::size_t i) {
  if (i >= s.size() || !is_amino_acid(s[i])) return 0;
  const std::size_t d = digits_at(s, i + 1);
  if (d == 0 || i + 1 + d >= s.size() || !is_amino_acid(s[i + 1 + d])) return 0;
  return d + 2;
}

std::size_t match_protein(std::u32string_view s, std::size_t i) {
  if (s.substr(i, 2) != U"p.") return 0;
  const std::size_t n = match_substitution(s, i + 2);
  return n ? n + 2 : 0;
}

std::size_t match_coding(std::u32string_view s, std::size_t i) {
  if (s.substr(i, 2) != U"c.") return 0;
  const std::size_t d = digits_at(s, i + 2);
  std::size_t j = i + 2 + d;
  if (d == 0 || j + 3 > s.size()) return 0;
  if (!is_base(s[j]) || s[j + 1] != U'>' || !is_base(s[j + 2])) return 0;
  return j + 3 - i;
}

std::size_t match_dbsnp(std::u32string_view s, std::size_t i) {
  if (s.substr(i, 2) != U"rs") return 0;
  const std::size_t d = digits_at(s, i + 2);
  return d ? d + 2 : 0;
}

}  // namespace

std::vector<Mention> recognize_mutations(std::u32string_view text) {
  std::vector<Mention> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (i > 0 && utf8::is_alnum(text[i - 1])) {
      ++i;
      continue;
    }
    std::size_t best = 0;
    for (auto matcher : {match_protein, match_coding, match_dbsnp,
                         match_substitution}) {
      const std::size_t len = matcher(text, i);
      const std::size_t end = i + len;
      if (len > best && (end == text.size() || !utf8::is_alnum(text[end]))) {
        best = len;
      }
    }
    if (best == 0) {
      ++i;
      continue;
    }
    out.push_back({i, i + best, utf8::encode(text.substr(i, best)),
                   EntityType::kMutation, 1.0});
    i += best;
  }
  return out;
}

std::vector<Mention> recognize_mutations(std::string_view text) {
  return recognize_mutations(std::u32string_view(utf8::decode(text)));
}

// ---------------------------------------------------------------------------
// Chunking

std::vector<std::span<const TokenSpan>> chunk_tokens(
    std::span<const TokenSpan> tokens, std::span<const SentenceRange> sentences,
    std::size_t max_len) {
  if (max_len < 16) throw InvalidInput("chunk_tokens: max_len must be >= 16");

  // Runs of consecutive tokens that fall in the same sentence. Without
  // sentence ranges the whole list is one run.
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // (start, count)
  std::size_t s = 0;
  std::size_t current = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    while (s < sentences.size() && sentences[s].end <= tokens[i].begin) ++s;
    if (groups.empty() || s != current) {
      groups.emplace_back(i, 1);
      current = s;
    } else {
      ++groups.back().second;
    }
  }

  std::vector<std::span<const TokenSpan>> windows;
  std::size_t start = 0;
  std::size_t len = 0;
  auto flush = [&] {
    if (len > 0) windows.push_back(tokens.subspan(start, len));
    len = 0;
  };
  for (const auto& [gstart, glen] : groups) {
    if (glen > max_len) {
      flush();
      std::size_t pos = gstart;
      while (gstart + glen - pos > max_len) {
        windows.push_back(tokens.subspan(pos, max_len));
        pos += max_len;
      }
      start = pos;
      len = gstart + glen - pos;
    } else if (len + glen > max_len) {
      flush();
      start = gstart;
      len = glen;
    } else {
      if (len == 0) start = gstart;
      len += glen;
    }
  }
  flush();
  return windows;
}

std::vector<std::span<const TokenSpan>> chunk_tokens(
    std::span<const TokenSpan> tokens, std::size_t max_len) {
  return chunk_tokens(tokens, std::span<const SentenceRange>{}, max_len);
}

}  // namespace bioann
