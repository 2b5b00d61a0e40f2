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

#ifndef BIOANN_TEXTPROC_H_
#define BIOANN_TEXTPROC_H_

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "bioann/types.h"

namespace bioann {

struct SentenceRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const SentenceRange&) const = default;
};

// Abbreviations whose trailing period never ends a sentence. Matching is
// case-insensitive and anchored at a word start.
class AbbreviationList {
 public:
  AbbreviationList() = default;

  // e.g., i.e., et al., Fig., vs. and a few other common ones.
  static const AbbreviationList& defaults();

  // One entry per line; blank lines and '#' comments ignored.
  static AbbreviationList load(std::istream& in, bool include_defaults = true);
  static AbbreviationList load_file(const std::string& path,
                                    bool include_defaults = true);

  void add(std::string_view abbreviation);
  std::size_t size() const { return entries_.size(); }

  // True when text[0..period] ends with a listed abbreviation.
  bool protects(std::u32string_view text, std::size_t period) const;

 private:
  std::vector<std::u32string> entries_;
};

// Splits after '.', '!' or '?' when followed by whitespace and an uppercase
// letter. Ranges are trimmed, ascending and disjoint.
std::vector<SentenceRange> segment_sentences(
    std::string_view text,
    const AbbreviationList& abbreviations = AbbreviationList::defaults());
std::vector<SentenceRange> segment_sentences(
    std::u32string_view text,
    const AbbreviationList& abbreviations = AbbreviationList::defaults());

// Whitespace split, then leading and trailing punctuation peeled into
// one-character tokens. Interior hyphens and slashes stay put.
std::vector<TokenSpan> tokenize(std::string_view text);
std::vector<TokenSpan> tokenize(std::u32string_view text);

}  // namespace bioann

#endif  // BIOANN_TEXTPROC_H_
