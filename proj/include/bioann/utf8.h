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

// UTF-8 helpers. Every offset the library reports counts Unicode scalar
// values, so text is decoded to UTF-32 before any offset arithmetic.

#ifndef BIOANN_UTF8_H_
#define BIOANN_UTF8_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace bioann::utf8 {

// Throws InvalidUtf8 on overlong forms, surrogates, or truncated sequences.
std::u32string decode(std::string_view bytes);
std::optional<std::u32string> try_decode(std::string_view bytes);
bool is_valid(std::string_view bytes);

std::string encode(std::u32string_view scalars);
void append(std::string& out, char32_t scalar);

// Number of scalar values; throws InvalidUtf8.
std::size_t length(std::string_view bytes);

// Substring by scalar offsets [begin, end). Throws InvalidInput when the
// range is out of bounds.
std::string slice(std::string_view bytes, std::size_t begin, std::size_t end);

// Character classes used by the tokenizer, segmenter and recognizers. They
// cover ASCII, Latin-1 and the common general-punctuation block; anything
// else is treated as a letter.
bool is_space(char32_t c);
bool is_punct(char32_t c);
bool is_upper(char32_t c);
bool is_digit(char32_t c);
bool is_alnum(char32_t c);

char32_t to_lower(char32_t c);
std::u32string to_lower(std::u32string_view s);
std::string to_lower(std::string_view bytes);

}  // namespace bioann::utf8

#endif  // BIOANN_UTF8_H_
