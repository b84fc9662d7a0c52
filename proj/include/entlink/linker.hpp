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

#ifndef ENTLINK_LINKER_HPP_
#define ENTLINK_LINKER_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "entlink/candidates.hpp"
#include "entlink/scoring.hpp"
#include "entlink/snapshot.hpp"
#include "entlink/types.hpp"
#include "json.hpp"

namespace entlink {

struct LinkerConfig {
  // A mention whose best final weight falls below this is left
  // unlinked (NIL) instead of being linked with low confidence.
  double nil_threshold = 0.05;
  CandidateGenOptions candidates;
  ScorerConfig scorer;
};

// One entry of the ranked ambiguity list of a mention.
struct RankedCandidate {
  EntityId id = 0;
  std::string title;
  double final_weight = 0.0;
  std::map<ScoreModule, double> module_weights;
};

struct LinkedAnnotation {
  Mention mention;
  // nullopt = NIL decision. decision_title mirrors it as a string for
  // output ("NIL" or the entity title).
  std::optional<EntityId> decision;
  std::string decision_title;
  // Final weight of the best candidate; 0 when there were none.
  double confidence = 0.0;
  // Normalized per-module weights of the chosen candidate; empty for
  // NIL.
  std::map<ScoreModule, double> decision_scores;
  // The rejected candidates, best first (weight descending, then
  // title). Holds every candidate when the decision is NIL.
  std::vector<RankedCandidate> ambiguity_list;
};

// Links every mention of one document: generate candidates, run the
// enabled modules, multiply normalized weights, pick the best, NIL
// below the threshold. Annotations come back in mention input order.
std::vector<LinkedAnnotation> link_document(const Document& doc,
                                            std::vector<Mention> mentions,
                                            const KnowledgeSnapshot& snapshot,
                                            const LinkerConfig& config = {});

// Links a corpus, optionally across worker threads (0 = hardware
// concurrency). Results are indexed like the corpus regardless of the
// worker count.
std::vector<std::vector<LinkedAnnotation>> link_corpus(const Corpus& corpus,
                                                       const KnowledgeSnapshot& snapshot,
                                                       const LinkerConfig& config = {},
                                                       std::size_t threads = 1);

// One JSONL record for an annotation. The ambiguity list is included
// only when `verbose_ambiguity` is set.
nlohmann::json annotation_to_json(const LinkedAnnotation& annotation,
                                  bool verbose_ambiguity = false);

// Writes one JSON line per mention, sorted by (doc id, start, end) so
// the bytes do not depend on worker scheduling.
void write_annotations_jsonl(std::ostream& out,
                             const std::vector<std::vector<LinkedAnnotation>>& annotations,
                             bool verbose_ambiguity = false);

// Multi-line human-readable breakdown of one annotation.
std::string explain_text(const LinkedAnnotation& annotation);

}  // namespace entlink

#endif  // ENTLINK_LINKER_HPP_
