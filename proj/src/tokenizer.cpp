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

#include "entlink/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

namespace entlink {
namespace {

struct CodepointRange {
  char32_t lo;
  char32_t hi;
};

struct CaseFold {
  char32_t cp;
  char32_t folded[3];
  std::uint8_t len;
};

#include "unicode_tables.inc"

bool is_separator(char32_t cp) {
  auto it = std::upper_bound(
      std::begin(kSeparatorRanges), std::end(kSeparatorRanges), cp,
      [](char32_t value, const CodepointRange& range) { return value < range.lo; });
  if (it == std::begin(kSeparatorRanges)) return false;
  --it;
  return cp >= it->lo && cp <= it->hi;
}

// Appends the case-folded form of `cp` to `out` as UTF-8.
void append_folded(char32_t cp, std::string& out);

void append_utf8(char32_t cp, std::string& out) {
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

void append_folded(char32_t cp, std::string& out) {
  auto it = std::lower_bound(
      std::begin(kCaseFolds), std::end(kCaseFolds), cp,
      [](const CaseFold& fold, char32_t value) { return fold.cp < value; });
  if (it != std::end(kCaseFolds) && it->cp == cp) {
    for (std::uint8_t i = 0; i < it->len; ++i) append_utf8(it->folded[i], out);
  } else {
    append_utf8(cp, out);
  }
}

// Decodes one UTF-8 code point starting at `pos`. Returns false on an
// invalid sequence, in which case `pos` advances by one byte.
bool decode_utf8(std::string_view text, std::size_t& pos, char32_t& cp) {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  unsigned char lead = byte(pos);
  std::size_t len;
  char32_t value;
  if (lead < 0x80) {
    len = 1;
    value = lead;
  } else if ((lead & 0xE0) == 0xC0) {
    len = 2;
    value = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    value = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    value = lead & 0x07;
  } else {
    ++pos;
    return false;
  }
  if (pos + len > text.size()) {
    ++pos;
    return false;
  }
  for (std::size_t i = 1; i < len; ++i) {
    unsigned char cont = byte(pos + i);
    if ((cont & 0xC0) != 0x80) {
      ++pos;
      return false;
    }
    value = (value << 6) | (cont & 0x3F);
  }
  // Reject overlong encodings, surrogates and out-of-range values.
  static constexpr char32_t kMinByLen[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (value < kMinByLen[len] || value > 0x10FFFF ||
      (value >= 0xD800 && value <= 0xDFFF)) {
    ++pos;
    return false;
  }
  pos += len;
  cp = value;
  return true;
}

}  // namespace

std::vector<TokenSpan> tokenize_spans(std::string_view text) {
  std::vector<TokenSpan> tokens;
  std::string current;
  std::size_t token_start = 0;
  bool in_token = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t cp_start = pos;
    char32_t cp = 0;
    bool valid = decode_utf8(text, pos, cp);
    if (!valid || is_separator(cp)) {
      if (in_token) {
        tokens.push_back({std::move(current), token_start, cp_start});
        current.clear();
        in_token = false;
      }
      continue;
    }
    if (!in_token) {
      token_start = cp_start;
      in_token = true;
    }
    append_folded(cp, current);
  }
  if (in_token) tokens.push_back({std::move(current), token_start, text.size()});
  return tokens;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for (auto& span : tokenize_spans(text)) tokens.push_back(std::move(span.text));
  return tokens;
}

std::string case_fold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t before = pos;
    char32_t cp = 0;
    if (decode_utf8(text, pos, cp)) {
      append_folded(cp, out);
    } else {
      // Keep the invalid byte verbatim so folding never conflates
      // distinct malformed inputs.
      out.push_back(text[before]);
    }
  }
  return out;
}

}  // namespace entlink
