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

#include "entlink/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "entlink/errors.hpp"
#include "entlink/tokenizer.hpp"

namespace entlink {
namespace {

// Walks the redirect map without consulting the article index, so the
// caller can decide what the final key points at. Returns the folded
// key where the chain stops; cycles and over-deep chains throw.
std::string follow_redirects(const std::string& folded_start, const std::string& raw_start,
                             const RedirectMap& redirects) {
  std::string key = folded_start;
  std::vector<std::string> visited;
  std::string path = raw_start;
  while (true) {
    auto it = redirects.find(key);
    if (it == redirects.end()) return key;
    if (visited.size() == kMaxRedirectDepth) {
      throw ConflictError("redirect chain deeper than " +
                          std::to_string(kMaxRedirectDepth) + ": " + path + " -> ...");
    }
    visited.push_back(key);
    path += " -> " + it->second;
    std::string next = case_fold(it->second);
    if (std::find(visited.begin(), visited.end(), next) != visited.end()) {
      throw ConflictError("redirect cycle: " + path);
    }
    key = std::move(next);
  }
}

std::vector<std::pair<std::string, std::uint32_t>> build_term_vector(
    const std::string& body) {
  std::map<std::string, std::uint32_t> counts;
  for (auto& token : tokenize(body)) ++counts[std::move(token)];
  return {counts.begin(), counts.end()};
}

}  // namespace

KnowledgeSnapshot KnowledgeSnapshot::from_records(const std::vector<DumpRecord>& records,
                                                  const BuildOptions& options) {
  KnowledgeSnapshot snap;
  snap.llc2_second_hop_factor_ = options.llc2_second_hop_factor;

  // Pass 1: assign ids to articles in dump order and collect the raw
  // redirect map. Folded-title collisions keep the earliest page.
  RedirectMap raw_redirects;
  for (const auto& record : records) {
    switch (record.kind) {
      case PageKind::article: {
        EntityId id = static_cast<EntityId>(snap.entities_.size());
        snap.title_index_.emplace(case_fold(record.title), id);
        Entity entity;
        entity.id = id;
        entity.title = record.title;
        entity.infobox_type = record.infobox_type;
        entity.term_vector = build_term_vector(record.body);
        snap.entities_.push_back(std::move(entity));
        break;
      }
      case PageKind::redirect:
        raw_redirects.emplace(case_fold(record.title), *record.redirect_target);
        break;
      case PageKind::disambiguation:
        break;
    }
  }

  // Pass 2: disambiguation pages, targets resolved through redirects.
  for (const auto& record : records) {
    if (record.kind != PageKind::disambiguation) continue;
    std::vector<EntityId> targets;
    for (const auto& target : record.disambig_targets) {
      auto id = resolve_redirect_chain(target, snap.title_index_, raw_redirects);
      if (!id) continue;  // dangling target, drop
      if (std::find(targets.begin(), targets.end(), *id) == targets.end()) {
        targets.push_back(*id);
      }
    }
    snap.disambig_index_.emplace(case_fold(record.title), std::move(targets));
  }

  // Pass 3: pre-resolve every redirect. Redirects landing on an
  // article join the title lookup; redirects landing on a
  // disambiguation page become aliases of it; the rest dangle and are
  // dropped.
  for (const auto& record : records) {
    if (record.kind != PageKind::redirect) continue;
    std::string folded = case_fold(record.title);
    std::string final_key = follow_redirects(folded, record.title, raw_redirects);
    if (auto it = snap.title_index_.find(final_key); it != snap.title_index_.end()) {
      snap.redirect_index_.emplace(folded, it->second);
    } else if (snap.disambig_index_.count(final_key) != 0) {
      snap.disambig_aliases_.emplace(folded, final_key);
    }
  }

  // Pass 4: link lists and document frequencies.
  {
    std::size_t article_index = 0;
    for (const auto& record : records) {
      if (record.kind != PageKind::article) continue;
      Entity& entity = snap.entities_[article_index++];
      entity.llc1 =
          extract_links(record.body, snap.title_index_, raw_redirects, entity.id);
      for (const auto& term_count : entity.term_vector) {
        ++snap.doc_freq_[term_count.first];
      }
    }
  }

  snap.manifest_.entity_count = snap.entities_.size();
  snap.manifest_.redirect_count =
      snap.redirect_index_.size() + snap.disambig_aliases_.size();
  snap.manifest_.disambig_count = snap.disambig_index_.size();
  snap.manifest_.vocabulary_size = snap.doc_freq_.size();
  snap.manifest_.build_timestamp = options.timestamp;
  return snap;
}

const Entity& KnowledgeSnapshot::entity(EntityId id) const {
  if (id >= entities_.size()) {
    throw std::out_of_range("entity id " + std::to_string(id) + " out of range (" +
                            std::to_string(entities_.size()) + " entities)");
  }
  return entities_[id];
}

std::optional<EntityId> KnowledgeSnapshot::resolve_title(std::string_view title) const {
  std::string key = case_fold(title);
  if (auto it = title_index_.find(key); it != title_index_.end()) return it->second;
  if (auto it = redirect_index_.find(key); it != redirect_index_.end()) return it->second;
  return std::nullopt;
}

const LinkList& KnowledgeSnapshot::llc1(EntityId id) const { return entity(id).llc1; }

LinkList KnowledgeSnapshot::llc2(EntityId id) const {
  const LinkList& base = llc1(id);  // validates the id
  {
    std::lock_guard<std::mutex> lock(*llc2_mutex_);
    if (auto it = llc2_cache_.find(id); it != llc2_cache_.end()) return it->second;
  }

  std::map<EntityId, std::uint64_t> merged;
  for (const auto& entry : base) merged[entry.target] += entry.count;
  for (const auto& entry : base) {
    for (const auto& hop : entities_[entry.target].llc1) {
      auto scaled = static_cast<std::uint64_t>(
          std::llround(llc2_second_hop_factor_ * static_cast<double>(hop.count)));
      if (scaled == 0) continue;
      merged[hop.target] += scaled;
    }
  }
  merged.erase(id);

  LinkList result;
  result.reserve(merged.size());
  for (const auto& [target, count] : merged) {
    auto clamped = std::min<std::uint64_t>(count, std::numeric_limits<std::uint32_t>::max());
    result.push_back({target, static_cast<std::uint32_t>(clamped)});
  }

  std::lock_guard<std::mutex> lock(*llc2_mutex_);
  return llc2_cache_.emplace(id, std::move(result)).first->second;
}

std::uint64_t KnowledgeSnapshot::doc_freq(std::string_view term) const {
  auto it = doc_freq_.find(std::string(term));
  return it == doc_freq_.end() ? 0 : it->second;
}

double KnowledgeSnapshot::idf(std::string_view term) const {
  double n = static_cast<double>(entities_.size());
  double df = static_cast<double>(doc_freq(term));
  return std::log(1.0 + n / (1.0 + df));
}

const std::vector<EntityId>* KnowledgeSnapshot::disambig_targets(
    std::string_view title) const {
  std::string key = case_fold(title);
  auto it = disambig_index_.find(key);
  if (it == disambig_index_.end()) {
    auto alias = disambig_aliases_.find(key);
    if (alias == disambig_aliases_.end()) return nullptr;
    it = disambig_index_.find(alias->second);
    if (it == disambig_index_.end()) return nullptr;
  }
  return &it->second;
}

KnowledgeSnapshot build_snapshot(const std::vector<DumpRecord>& records,
                                 const std::filesystem::path& path,
                                 const BuildOptions& options) {
  KnowledgeSnapshot snap = KnowledgeSnapshot::from_records(records, options);
  save_snapshot(snap, path);
  return snap;
}

}  // namespace entlink
