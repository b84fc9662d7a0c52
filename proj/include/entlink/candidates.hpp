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

#ifndef ENTLINK_CANDIDATES_HPP_
#define ENTLINK_CANDIDATES_HPP_

#include <cstddef>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entlink/snapshot.hpp"
#include "entlink/types.hpp"

namespace entlink {

struct CandidateGenOptions {
  // Upper bound per mention; the head of the deterministic candidate
  // order is kept when a surface is wildly ambiguous.
  std::size_t max_candidates = 64;
};

// Candidate articles for one surface form, deduplicated, in a fixed
// order: the direct title or redirect match first, then the targets of
// a matching disambiguation page in page order.
std::vector<EntityId> generate_candidates(std::string_view surface,
                                          const KnowledgeSnapshot& snapshot,
                                          const CandidateGenOptions& options = {});

// Candidate sets for every mention of a document plus the union list
// CL used by the link-graph modules. `cl` maps each candidate entity
// to the sorted list of mention indexes proposing it.
struct CandidateContext {
  std::vector<Mention> mentions;
  std::vector<std::vector<EntityId>> per_mention;
  std::unordered_map<EntityId, std::vector<std::size_t>> cl;
};

// Validates mention spans against the document text (throws ParseError
// on an out-of-range or misaligned span) and generates candidates for
// each mention. Mentions with an empty surface take it from the text.
CandidateContext build_context(const Document& doc, std::vector<Mention> mentions,
                               const KnowledgeSnapshot& snapshot,
                               const CandidateGenOptions& options = {});

}  // namespace entlink

#endif  // ENTLINK_CANDIDATES_HPP_
