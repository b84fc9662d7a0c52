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

#ifndef ENTLINK_TYPES_HPP_
#define ENTLINK_TYPES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace entlink {

// Dense article identifier: 0 .. entity_count-1 in dump order.
using EntityId = std::uint32_t;

// One resolved outgoing link: target article and occurrence count.
struct LinkEntry {
  EntityId target = 0;
  std::uint32_t count = 0;

  friend bool operator==(const LinkEntry&, const LinkEntry&) = default;
};

// Aggregated link list of an article. Targets are unique and sorted
// ascending; counts are >= 1.
using LinkList = std::vector<LinkEntry>;

// Sparse bag-of-words with raw term frequencies, sorted by term.
using TermVector = std::vector<std::pair<std::string, std::uint32_t>>;

// The reserved gold marker for "no matching entity".
inline constexpr const char* kNilMarker = "NIL";

// A pre-detected entity mention inside a document. Offsets are byte
// offsets into the UTF-8 document text; `surface` must equal the slice
// [start, end). `gold` is only used for evaluation: either an entity
// title or the literal NIL marker.
struct Mention {
  std::string doc_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  std::optional<std::string> gold;
};

struct Document {
  std::string id;
  std::string text;
};

// A document paired with its mentions, the unit both the linker and
// the evaluator consume.
struct CorpusDocument {
  Document doc;
  std::vector<Mention> mentions;
};

using Corpus = std::vector<CorpusDocument>;

}  // namespace entlink

#endif  // ENTLINK_TYPES_HPP_
