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

#ifndef ENTLINK_TOKENIZER_HPP_
#define ENTLINK_TOKENIZER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace entlink {

// A token together with the byte span it was cut from. `text` is the
// case-folded token; the span addresses the original input.
struct TokenSpan {
  std::string text;
  std::size_t start = 0;
  std::size_t end = 0;
};

// Language-independent tokenization: split on Unicode separator,
// punctuation and control code points, case-fold everything else.
// No stemming and no stop words. Invalid UTF-8 bytes act as breaks.
std::vector<std::string> tokenize(std::string_view text);

// Same rule, but keeps the source byte span of every token.
std::vector<TokenSpan> tokenize_spans(std::string_view text);

// Full Unicode case folding of a UTF-8 string (no splitting).
std::string case_fold(std::string_view text);

}  // namespace entlink

#endif  // ENTLINK_TOKENIZER_HPP_
