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

#ifndef ENTLINK_SNAPSHOT_HPP_
#define ENTLINK_SNAPSHOT_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "entlink/dump.hpp"
#include "entlink/types.hpp"

namespace entlink {

// One knowledge-base article. Term vectors are sorted by term and link
// lists by target id so that lookups can binary-search and serialized
// output is stable.
struct Entity {
  EntityId id = 0;
  std::string title;
  std::optional<std::string> infobox_type;
  TermVector term_vector;
  LinkList llc1;
};

struct SnapshotManifest {
  std::uint32_t format_version = 1;
  std::uint64_t entity_count = 0;
  std::uint64_t redirect_count = 0;
  std::uint64_t disambig_count = 0;
  std::uint64_t vocabulary_size = 0;
  std::uint64_t build_timestamp = 0;
};

struct BuildOptions {
  // Stored in the manifest. Zero keeps snapshot bytes reproducible; the
  // CLI fills it from SOURCE_DATE_EPOCH when that is set.
  std::uint64_t timestamp = 0;
  // Scale applied to second-hop counts when expanding level-2 lists.
  double llc2_second_hop_factor = 1.0;
};

// Immutable in-memory index over a parsed dump. All const member
// functions are safe to call concurrently; llc2() memoizes behind a
// mutex.
class KnowledgeSnapshot {
 public:
  KnowledgeSnapshot(KnowledgeSnapshot&&) noexcept = default;
  KnowledgeSnapshot& operator=(KnowledgeSnapshot&&) noexcept = default;
  KnowledgeSnapshot(const KnowledgeSnapshot&) = delete;
  KnowledgeSnapshot& operator=(const KnowledgeSnapshot&) = delete;

  static KnowledgeSnapshot from_records(const std::vector<DumpRecord>& records,
                                        const BuildOptions& options = {});

  const SnapshotManifest& manifest() const { return manifest_; }
  std::size_t entity_count() const { return entities_.size(); }

  // Throws std::out_of_range for unknown ids.
  const Entity& entity(EntityId id) const;

  // Case-folds and follows stored redirects. Disambiguation titles do
  // not resolve; they are reachable through disambig_targets() only.
  std::optional<EntityId> resolve_title(std::string_view title) const;

  // Direct (level-1) link counts of an article.
  const LinkList& llc1(EntityId id) const;

  // Level-2 expansion: the level-1 list merged with the level-1 lists
  // of every linked article, counts summed and the article itself
  // removed. Results are cached per id.
  LinkList llc2(EntityId id) const;

  std::uint64_t doc_freq(std::string_view term) const;

  // ln(1 + N / (1 + df)) where N is the number of entities. Terms
  // absent from the vocabulary get the maximal value ln(1 + N).
  double idf(std::string_view term) const;

  // Targets of a disambiguation page, nullptr when the title (after
  // case folding and redirect aliases) is not a disambiguation page.
  const std::vector<EntityId>* disambig_targets(std::string_view title) const;

  std::size_t vocabulary_size() const { return doc_freq_.size(); }
  double llc2_second_hop_factor() const { return llc2_second_hop_factor_; }

 private:
  friend KnowledgeSnapshot load_snapshot(const std::filesystem::path& path);
  friend void save_snapshot(const KnowledgeSnapshot& snapshot,
                            const std::filesystem::path& path);

  KnowledgeSnapshot() = default;

  SnapshotManifest manifest_;
  std::vector<Entity> entities_;
  std::unordered_map<std::string, EntityId> title_index_;
  std::unordered_map<std::string, EntityId> redirect_index_;
  std::unordered_map<std::string, std::vector<EntityId>> disambig_index_;
  std::unordered_map<std::string, std::string> disambig_aliases_;
  std::unordered_map<std::string, std::uint64_t> doc_freq_;
  double llc2_second_hop_factor_ = 1.0;

  mutable std::unique_ptr<std::mutex> llc2_mutex_ = std::make_unique<std::mutex>();
  mutable std::unordered_map<EntityId, LinkList> llc2_cache_;
};

// Writes the snapshot to disk (JSON container with a checksummed
// payload). The file is written to a temporary sibling first and
// renamed into place.
void save_snapshot(const KnowledgeSnapshot& snapshot, const std::filesystem::path& path);

// Builds from parsed records and persists to `path` in one step.
KnowledgeSnapshot build_snapshot(const std::vector<DumpRecord>& records,
                                 const std::filesystem::path& path,
                                 const BuildOptions& options = {});

// Throws IoError when the file is missing, SnapshotVersionError on a
// format mismatch and SnapshotCorruptionError when the payload does not
// match its checksum or violates structural invariants.
KnowledgeSnapshot load_snapshot(const std::filesystem::path& path);

}  // namespace entlink

#endif  // ENTLINK_SNAPSHOT_HPP_
