// Copyright 2026 The Entlink Authors
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

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "entlink/errors.hpp"
#include "entlink/eval.hpp"

namespace entlink {
namespace {

struct Term {
  enum class Kind { iri, literal };
  Kind kind = Kind::iri;
  std::string value;
};

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

class TripleScanner {
 public:
  TripleScanner(std::string_view line, std::size_t line_number)
      : line_(line), line_number_(line_number) {}

  void skip_space() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }

  Term term() {
    skip_space();
    if (pos_ >= line_.size()) fail("unexpected end of triple");
    char c = line_[pos_];
    if (c == '<') return iri();
    if (c == '"') return literal();
    if (c == '_') return blank_node();
    fail(std::string("unexpected character '") + c + "' in triple");
  }

  void expect_dot() {
    skip_space();
    if (pos_ >= line_.size() || line_[pos_] != '.') fail("triple does not end with '.'");
    ++pos_;
    skip_space();
    if (pos_ < line_.size()) fail("trailing characters after '.'");
  }

 private:
  Term iri() {
    std::size_t close = line_.find('>', pos_ + 1);
    if (close == std::string_view::npos) fail("unterminated IRI");
    Term term{Term::Kind::iri, std::string(line_.substr(pos_ + 1, close - pos_ - 1))};
    pos_ = close + 1;
    return term;
  }

  Term blank_node() {
    std::size_t end = pos_;
    while (end < line_.size() && line_[end] != ' ' && line_[end] != '\t') ++end;
    Term term{Term::Kind::iri, std::string(line_.substr(pos_, end - pos_))};
    pos_ = end;
    return term;
  }

  Term literal() {
    std::string value;
    std::size_t i = pos_ + 1;
    while (true) {
      if (i >= line_.size()) fail("unterminated literal");
      char c = line_[i];
      if (c == '"') break;
      if (c != '\\') {
        value.push_back(c);
        ++i;
        continue;
      }
      if (i + 1 >= line_.size()) fail("dangling escape in literal");
      char esc = line_[i + 1];
      switch (esc) {
        case 't': value.push_back('\t'); i += 2; break;
        case 'b': value.push_back('\b'); i += 2; break;
        case 'n': value.push_back('\n'); i += 2; break;
        case 'r': value.push_back('\r'); i += 2; break;
        case 'f': value.push_back('\f'); i += 2; break;
        case '"': value.push_back('"'); i += 2; break;
        case '\'': value.push_back('\''); i += 2; break;
        case '\\': value.push_back('\\'); i += 2; break;
        case 'u': value += unicode_escape(i, 4); i += 6; break;
        case 'U': value += unicode_escape(i, 8); i += 10; break;
        default: fail(std::string("unknown escape \\") + esc);
      }
    }
    pos_ = i + 1;
    // Datatype or language tags are recognized and discarded.
    if (pos_ < line_.size() && line_[pos_] == '^') {
      if (pos_ + 2 >= line_.size() || line_[pos_ + 1] != '^' || line_[pos_ + 2] != '<') {
        fail("malformed datatype suffix");
      }
      std::size_t close = line_.find('>', pos_ + 2);
      if (close == std::string_view::npos) fail("unterminated datatype IRI");
      pos_ = close + 1;
    } else if (pos_ < line_.size() && line_[pos_] == '@') {
      while (pos_ < line_.size() && line_[pos_] != ' ' && line_[pos_] != '\t') ++pos_;
    }
    return {Term::Kind::literal, std::move(value)};
  }

  std::string unicode_escape(std::size_t backslash, int digits) {
    if (backslash + 2 + digits > line_.size()) fail("truncated unicode escape");
    std::uint32_t cp = 0;
    for (int d = 0; d < digits; ++d) {
      int v = hex_value(line_[backslash + 2 + d]);
      if (v < 0) fail("bad hex digit in unicode escape");
      cp = cp * 16 + static_cast<std::uint32_t>(v);
    }
    std::string out;
    append_utf8(out, cp);
    return out;
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(message, line_number_);
  }

  std::string_view line_;
  std::size_t line_number_;
  std::size_t pos_ = 0;
};

std::string local_name(const std::string& iri) {
  std::size_t cut = iri.find_last_of("#/");
  return cut == std::string::npos ? iri : iri.substr(cut + 1);
}

std::string title_from_iri(const std::string& iri, std::size_t line_number) {
  std::string segment = local_name(iri);
  std::string title;
  title.reserve(segment.size());
  for (std::size_t i = 0; i < segment.size(); ++i) {
    char c = segment[i];
    if (c == '%') {
      if (i + 2 >= segment.size()) throw ParseError("truncated percent escape", line_number);
      int hi = hex_value(segment[i + 1]);
      int lo = hex_value(segment[i + 2]);
      if (hi < 0 || lo < 0) throw ParseError("bad percent escape", line_number);
      title.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    } else if (c == '_') {
      title.push_back(' ');
    } else {
      title.push_back(c);
    }
  }
  return title;
}

std::uint64_t parse_offset(const Term& term, const char* what, std::size_t line_number) {
  if (term.kind != Term::Kind::literal || term.value.empty() ||
      term.value.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(std::string(what) + " is not a non-negative integer", line_number);
  }
  return std::stoull(term.value);
}

struct PendingMention {
  std::optional<std::uint64_t> begin;
  std::optional<std::uint64_t> end;
  std::optional<std::string> anchor;
  std::optional<std::string> ident;
  std::optional<std::string> context;
  std::size_t line_number = 0;
};

// Byte offset of each character (codepoint) boundary, one past the end
// included. UTF-8 continuation bytes never start a character.
std::vector<std::size_t> char_boundaries(const std::string& text) {
  std::vector<std::size_t> bounds;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) bounds.push_back(i);
  }
  bounds.push_back(text.size());
  return bounds;
}

}  // namespace

Corpus parse_nif_corpus(std::istream& input) {
  std::map<std::string, std::string> context_text;
  std::vector<std::string> context_order;
  std::map<std::string, PendingMention> pending;
  std::vector<std::string> pending_order;

  auto mention_for = [&](const std::string& subject, std::size_t line_number)
      -> PendingMention& {
    auto [it, inserted] = pending.try_emplace(subject);
    if (inserted) {
      it->second.line_number = line_number;
      pending_order.push_back(subject);
    }
    return it->second;
  };

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    TripleScanner scanner(line, line_number);
    Term subject = scanner.term();
    Term predicate = scanner.term();
    Term object = scanner.term();
    scanner.expect_dot();
    if (predicate.kind != Term::Kind::iri) {
      throw ParseError("predicate must be an IRI", line_number);
    }

    std::string name = local_name(predicate.value);
    if (name == "isString") {
      if (object.kind != Term::Kind::literal) {
        throw ParseError("isString object must be a literal", line_number);
      }
      if (!context_text.emplace(subject.value, object.value).second) {
        throw ParseError("duplicate isString for context <" + subject.value + ">",
                         line_number);
      }
      context_order.push_back(subject.value);
    } else if (name == "referenceContext") {
      if (object.kind != Term::Kind::iri) {
        throw ParseError("referenceContext object must be an IRI", line_number);
      }
      mention_for(subject.value, line_number).context = object.value;
    } else if (name == "beginIndex") {
      mention_for(subject.value, line_number).begin =
          parse_offset(object, "beginIndex", line_number);
    } else if (name == "endIndex") {
      mention_for(subject.value, line_number).end =
          parse_offset(object, "endIndex", line_number);
    } else if (name == "anchorOf") {
      if (object.kind != Term::Kind::literal) {
        throw ParseError("anchorOf object must be a literal", line_number);
      }
      mention_for(subject.value, line_number).anchor = object.value;
    } else if (name == "taIdentRef") {
      if (object.kind != Term::Kind::iri) {
        throw ParseError("taIdentRef object must be an IRI", line_number);
      }
      mention_for(subject.value, line_number).ident = object.value;
    }
    // Everything else (rdf:type and friends) is irrelevant here.
  }

  // Mentions whose subject IRI carries only a taIdentRef and no
  // placement are context-level annotations; there is nothing to
  // anchor them to, so reject them for clarity.
  Corpus corpus;
  std::map<std::string, std::vector<Mention>> doc_mentions;
  for (const std::string& subject : pending_order) {
    const PendingMention& p = pending.at(subject);
    if (!p.context) {
      throw ParseError("mention <" + subject + "> has no referenceContext",
                       p.line_number);
    }
    auto text_it = context_text.find(*p.context);
    if (text_it == context_text.end()) {
      throw ParseError("mention <" + subject + "> references unknown context <" +
                       *p.context + ">", p.line_number);
    }
    if (!p.begin || !p.end) {
      throw ParseError("mention <" + subject + "> is missing beginIndex or endIndex",
                       p.line_number);
    }
    if (*p.end < *p.begin) {
      throw ParseError("mention <" + subject + "> has endIndex before beginIndex",
                       p.line_number);
    }

    const std::string& text = text_it->second;
    std::vector<std::size_t> bounds = char_boundaries(text);
    std::size_t chars = bounds.size() - 1;
    if (*p.end > chars) {
      throw ParseError("mention <" + subject + "> extends past the context text",
                       p.line_number);
    }

    Mention mention;
    mention.doc_id = *p.context;
    mention.start = bounds[static_cast<std::size_t>(*p.begin)];
    mention.end = bounds[static_cast<std::size_t>(*p.end)];
    mention.surface = text.substr(mention.start, mention.end - mention.start);
    if (p.anchor && *p.anchor != mention.surface) {
      throw ParseError("anchorOf \"" + *p.anchor + "\" does not match context slice \"" +
                       mention.surface + "\" for <" + subject + ">", p.line_number);
    }
    if (p.ident) mention.gold = title_from_iri(*p.ident, p.line_number);
    doc_mentions[*p.context].push_back(std::move(mention));
  }

  for (const std::string& context : context_order) {
    CorpusDocument doc;
    doc.doc.id = context;
    doc.doc.text = context_text.at(context);
    if (auto it = doc_mentions.find(context); it != doc_mentions.end()) {
      std::sort(it->second.begin(), it->second.end(), [](const Mention& a, const Mention& b) {
        return std::tie(a.start, a.end) < std::tie(b.start, b.end);
      });
      doc.mentions = std::move(it->second);
    }
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace entlink
