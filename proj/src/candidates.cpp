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

#include "entlink/candidates.hpp"

#include <algorithm>
#include <string>

#include "entlink/errors.hpp"

namespace entlink {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<EntityId> generate_candidates(std::string_view surface,
                                          const KnowledgeSnapshot& snapshot,
                                          const CandidateGenOptions& options) {
  std::vector<EntityId> candidates;
  std::string_view key = trim(surface);
  if (key.empty() || options.max_candidates == 0) return candidates;

  auto push = [&](EntityId id) {
    if (candidates.size() >= options.max_candidates) return;
    if (std::find(candidates.begin(), candidates.end(), id) == candidates.end()) {
      candidates.push_back(id);
    }
  };

  if (auto direct = snapshot.resolve_title(key)) push(*direct);
  if (const auto* targets = snapshot.disambig_targets(key)) {
    for (EntityId id : *targets) push(id);
  }
  return candidates;
}

CandidateContext build_context(const Document& doc, std::vector<Mention> mentions,
                               const KnowledgeSnapshot& snapshot,
                               const CandidateGenOptions& options) {
  CandidateContext context;
  context.mentions = std::move(mentions);
  context.per_mention.reserve(context.mentions.size());

  for (Mention& mention : context.mentions) {
    if (mention.start >= mention.end || mention.end > doc.text.size()) {
      throw ParseError("mention span [" + std::to_string(mention.start) + ", " +
                       std::to_string(mention.end) + ") out of range in document \"" +
                       doc.id + "\" (" + std::to_string(doc.text.size()) + " bytes)");
    }
    std::string_view slice(doc.text.data() + mention.start, mention.end - mention.start);
    if (mention.surface.empty()) {
      mention.surface = std::string(slice);
    } else if (mention.surface != slice) {
      throw ParseError("mention surface \"" + mention.surface +
                       "\" does not match document \"" + doc.id + "\" at [" +
                       std::to_string(mention.start) + ", " + std::to_string(mention.end) +
                       ")");
    }
    if (mention.doc_id.empty()) mention.doc_id = doc.id;
  }

  for (std::size_t i = 0; i < context.mentions.size(); ++i) {
    auto candidates = generate_candidates(context.mentions[i].surface, snapshot, options);
    for (EntityId id : candidates) context.cl[id].push_back(i);
    context.per_mention.push_back(std::move(candidates));
  }
  return context;
}

}  // namespace entlink
