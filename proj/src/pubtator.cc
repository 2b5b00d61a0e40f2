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

#include "bioann/pubtator.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "bioann/error.h"
#include "bioann/utf8.h"

namespace bioann {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::optional<std::size_t> parse_offset(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

std::string fold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c);
  });
  return out;
}

// A document under construction while its block is being read.
struct OpenDoc {
  GoldDocument doc;
  bool has_abstract = false;
  std::u32string text;
};

// Returns the section tag ('t' or 'a') and fills pmid/body for lines of the
// form "<pmid>|t|<body>".
char section_line(std::string_view line, std::string_view& pmid,
                  std::string_view& body) {
  const auto bar = line.find('|');
  if (bar == std::string_view::npos || bar == 0 || line.find('\t') < bar) {
    return 0;
  }
  if (bar + 2 >= line.size() || line[bar + 2] != '|') return 0;
  const char tag = line[bar + 1];
  if (tag != 't' && tag != 'a') return 0;
  pmid = line.substr(0, bar);
  body = line.substr(bar + 3);
  return tag;
}

}  // namespace

std::string GoldDocument::text() const { return title + " " + abstract_text; }

std::optional<EntityType> parse_pubtator_type(std::string_view name) {
  if (auto t = parse_entity_type(name)) return t;
  const std::string f = fold(name);
  if (f == "gene" || f == "geneorgeneproduct" || f == "protein") {
    return EntityType::kGene;
  }
  if (f == "disease" || f == "diseaseorphenotypicfeature") {
    return EntityType::kDisease;
  }
  if (f == "chemical" || f == "chemicalentity" || f == "drug") {
    return EntityType::kDrug;
  }
  if (f == "species" || f == "organismtaxon") return EntityType::kSpecies;
  if (f == "mutation" || f == "dnamutation" || f == "proteinmutation" ||
      f == "snp" || f == "sequencevariant") {
    return EntityType::kMutation;
  }
  if (f == "cellline" || f == "cell_line") return EntityType::kCellLine;
  if (f == "celltype" || f == "cell_type") return EntityType::kCellType;
  if (f == "dna") return EntityType::kDna;
  if (f == "rna") return EntityType::kRna;
  return std::nullopt;
}

std::vector<GoldDocument> parse_pubtator(std::istream& in) {
  std::vector<GoldDocument> docs;
  std::optional<OpenDoc> open;
  auto close = [&](std::size_t line_no) {
    if (!open) return;
    if (!open->has_abstract) {
      throw MalformedLine(line_no, "document " + open->doc.doc_id +
                                       " has no abstract line");
    }
    docs.push_back(std::move(open->doc));
    open.reset();
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      close(line_no);
      continue;
    }

    std::string_view pmid, body;
    if (const char tag = section_line(line, pmid, body); tag == 't') {
      close(line_no);
      open.emplace();
      open->doc.doc_id = std::string(pmid);
      open->doc.title = std::string(body);
      continue;
    } else if (tag == 'a') {
      if (!open || open->doc.doc_id != pmid || open->has_abstract) {
        throw MalformedLine(line_no, "abstract line without matching title");
      }
      open->doc.abstract_text = std::string(body);
      open->has_abstract = true;
      auto decoded = utf8::try_decode(open->doc.text());
      if (!decoded) throw MalformedLine(line_no, "text is not valid UTF-8");
      open->text = std::move(*decoded);
      continue;
    }

    const auto fields = split(line, '\t');
    if (fields.size() != 6) {
      throw MalformedLine(line_no, "expected 6 tab-separated fields, got " +
                                       std::to_string(fields.size()));
    }
    if (!open || !open->has_abstract) {
      throw MalformedLine(line_no, "annotation before title/abstract lines");
    }
    if (fields[0] != open->doc.doc_id) {
      throw MalformedLine(line_no, "annotation PMID " + std::string(fields[0]) +
                                       " does not match document " +
                                       open->doc.doc_id);
    }
    const auto begin = parse_offset(fields[1]);
    const auto end = parse_offset(fields[2]);
    if (!begin || !end) throw MalformedLine(line_no, "non-integer offset");
    const auto etype = parse_pubtator_type(fields[4]);
    if (!etype) {
      throw MalformedLine(line_no, "unknown entity type '" +
                                       std::string(fields[4]) + "'");
    }
    if (*begin >= *end || *end > open->text.size() ||
        utf8::encode(std::u32string_view(open->text).substr(*begin, *end - *begin)) !=
            fields[3]) {
      throw OffsetMismatch(open->doc.doc_id, line_no);
    }

    GoldMention m{*begin, *end, std::string(fields[3]), *etype, {}};
    if (fields[5] != "-" && !fields[5].empty()) {
      for (auto cui : split(fields[5], ',')) {
        if (cui.empty()) throw MalformedLine(line_no, "empty CUI in list");
        m.cuis.emplace_back(cui);
      }
    }
    open->doc.gold.push_back(std::move(m));
  }
  close(line_no + 1);
  return docs;
}

std::vector<GoldDocument> parse_pubtator(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pubtator(in);
}

std::vector<GoldDocument> parse_pubtator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path);
  return parse_pubtator(in);
}

void write_pubtator(std::ostream& out, const GoldDocument& doc) {
  out << doc.doc_id << "|t|" << doc.title << '\n';
  out << doc.doc_id << "|a|" << doc.abstract_text << '\n';
  for (const auto& m : doc.gold) {
    out << doc.doc_id << '\t' << m.begin << '\t' << m.end << '\t' << m.surface
        << '\t' << to_string(m.etype) << '\t';
    if (m.cuis.empty()) {
      out << '-';
    } else {
      for (std::size_t i = 0; i < m.cuis.size(); ++i) {
        if (i) out << ',';
        out << m.cuis[i];
      }
    }
    out << '\n';
  }
  out << '\n';
}

std::string serialize_pubtator(std::span<const GoldDocument> docs) {
  std::ostringstream out;
  for (const auto& doc : docs) write_pubtator(out, doc);
  return out.str();
}

}  // namespace bioann
