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

#ifndef ENTLINK_SCORING_HPP_
#define ENTLINK_SCORING_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "entlink/candidates.hpp"
#include "entlink/snapshot.hpp"
#include "entlink/types.hpp"

namespace entlink {

// The four weighting modules. Each produces one raw weight per
// candidate; weights are max-normalized within a mention and the
// normalized weights of the enabled modules are multiplied.
enum class ScoreModule { infobox, textual, llc1, llc2 };

enum class GraphLevel { level1 = 1, level2 = 2 };

// Canonical names: "infobox", "textual", "llc1", "llc2".
std::string_view to_string(ScoreModule module);

// Parses a comma-separated module list ("infobox,textual,llc1,llc2").
// Throws ParseError on an unknown name or an empty list.
std::set<ScoreModule> parse_modules(std::string_view names);

inline std::set<ScoreModule> all_modules() {
  return {ScoreModule::infobox, ScoreModule::textual, ScoreModule::llc1,
          ScoreModule::llc2};
}

struct ScorerConfig {
  std::set<ScoreModule> enabled_modules = all_modules();

  // Infobox cue rules: case-folded infobox type -> cue terms expected
  // near a mention of that type. An entity whose type has a rule but
  // no cue in context is penalized; everything else stays neutral.
  std::map<std::string, std::vector<std::string>> infobox_rules;
  double infobox_penalty = 0.5;

  // Tokens scanned on each side of a mention when checking infobox
  // cues.
  std::size_t context_window = 50;

  // Tokens of document context taken on each side of the mention for
  // the textual module; 0 means the whole document.
  std::size_t textual_window = 0;

  // Floor applied after max-normalization so one abstaining module
  // cannot zero out the product.
  double smoothing_eps = 0.01;

  // When false (default), link-graph edges to entities that appear
  // only as competing candidates of the same mention are ignored.
  bool intra_mention_edges = false;
};

// Per-candidate outcome of scoring one mention.
struct ScoreVector {
  std::map<ScoreModule, double> raw;
  std::map<ScoreModule, double> normalized;
  double final_weight = 1.0;
};

// Loads infobox cue rules from a JSON file mapping infobox type to an
// array of cue terms. Types and cues are case-folded on load.
std::map<std::string, std::vector<std::string>> load_infobox_rules(
    const std::filesystem::path& path);

// Cue check for the candidate's infobox type: 1.0 when the type has no
// rule or any cue term occurs in the context, `infobox_penalty`
// otherwise.
double infobox_score(const Entity& entity, const Document& doc, const Mention& mention,
                     const ScorerConfig& config);

// TF-IDF cosine similarity between two raw term-frequency vectors,
// with IDF taken from the snapshot vocabulary. Inputs must be sorted
// by term.
double tfidf_cosine(const TermVector& a, const TermVector& b,
                    const KnowledgeSnapshot& snapshot);

// Cosine between the candidate's stored term vector and the mention
// context (whole document or a token window, per config).
double textual_score(const Entity& entity, const Document& doc, const Mention& mention,
                     const KnowledgeSnapshot& snapshot, const ScorerConfig& config);

// Link-graph weight of one candidate of one mention: the sum of the
// candidate's level-1 or level-2 link counts toward entities that are
// candidates of the document's other mentions. Throws ContractError
// when `candidate` is not in the mention's candidate set.
std::uint64_t linkgraph_weight(EntityId candidate, const CandidateContext& context,
                               std::size_t mention_index, GraphLevel level,
                               const KnowledgeSnapshot& snapshot,
                               const ScorerConfig& config);

// Divides by the maximum and applies the smoothing floor. A mention
// where every candidate scored zero gets all 1.0 (the module
// abstains). Throws ContractError on an empty value set.
void normalize_mention_scores(std::vector<double>& values, double eps);

// Runs every enabled module over every candidate of every mention and
// multiplies the normalized weights into final_weight.
std::vector<std::vector<ScoreVector>> score_all(const Document& doc,
                                                const CandidateContext& context,
                                                const KnowledgeSnapshot& snapshot,
                                                const ScorerConfig& config);

}  // namespace entlink

#endif  // ENTLINK_SCORING_HPP_
