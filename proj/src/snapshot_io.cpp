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

#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "entlink/errors.hpp"
#include "entlink/snapshot.hpp"
#include "entlink/tokenizer.hpp"
#include "json.hpp"

namespace entlink {
namespace {

constexpr std::string_view kFormatName = "entlink-snapshot";
constexpr std::uint32_t kFormatVersion = 1;

std::uint32_t payload_checksum(std::string_view bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  std::size_t offset = 0;
  while (offset < bytes.size()) {
    auto chunk = std::min<std::size_t>(bytes.size() - offset, 1u << 30);
    crc = ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + offset),
                  static_cast<uInt>(chunk));
    offset += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

[[noreturn]] void corrupt(const std::string& detail) {
  throw SnapshotCorruptionError("snapshot corrupt: " + detail);
}

}  // namespace

static void to_json(nlohmann::json& j, const LinkEntry& entry) {
  j = nlohmann::json::array({entry.target, entry.count});
}

static void from_json(const nlohmann::json& j, LinkEntry& entry) {
  j.at(0).get_to(entry.target);
  j.at(1).get_to(entry.count);
}

static void to_json(nlohmann::json& j, const SnapshotManifest& m) {
  j = nlohmann::json{{"format_version", m.format_version},
                     {"entity_count", m.entity_count},
                     {"redirect_count", m.redirect_count},
                     {"disambig_count", m.disambig_count},
                     {"vocabulary_size", m.vocabulary_size},
                     {"build_timestamp", m.build_timestamp}};
}

static void from_json(const nlohmann::json& j, SnapshotManifest& m) {
  j.at("format_version").get_to(m.format_version);
  j.at("entity_count").get_to(m.entity_count);
  j.at("redirect_count").get_to(m.redirect_count);
  j.at("disambig_count").get_to(m.disambig_count);
  j.at("vocabulary_size").get_to(m.vocabulary_size);
  j.at("build_timestamp").get_to(m.build_timestamp);
}

static void to_json(nlohmann::json& j, const Entity& entity) {
  j = nlohmann::json{{"id", entity.id},
                     {"title", entity.title},
                     {"terms", entity.term_vector},
                     {"links", entity.llc1}};
  if (entity.infobox_type) {
    j["infobox"] = *entity.infobox_type;
  } else {
    j["infobox"] = nullptr;
  }
}

static void from_json(const nlohmann::json& j, Entity& entity) {
  j.at("id").get_to(entity.id);
  j.at("title").get_to(entity.title);
  j.at("terms").get_to(entity.term_vector);
  j.at("links").get_to(entity.llc1);
  const auto& infobox = j.at("infobox");
  if (infobox.is_null()) {
    entity.infobox_type = std::nullopt;
  } else {
    entity.infobox_type = infobox.get<std::string>();
  }
}

void save_snapshot(const KnowledgeSnapshot& snapshot, const std::filesystem::path& path) {
  nlohmann::json payload;
  payload["entities"] = snapshot.entities_;
  payload["redirects"] = snapshot.redirect_index_;
  payload["disambig"] = snapshot.disambig_index_;
  payload["disambig_aliases"] = snapshot.disambig_aliases_;
  payload["doc_freq"] = snapshot.doc_freq_;
  payload["llc2_second_hop_factor"] = snapshot.llc2_second_hop_factor_;

  std::string payload_bytes = payload.dump();
  nlohmann::json container;
  container["format"] = kFormatName;
  container["manifest"] = snapshot.manifest_;
  container["payload"] = std::move(payload);
  container["payload_crc32"] = payload_checksum(payload_bytes);

  std::error_code ec;
  if (auto parent = path.parent_path(); !parent.empty()) {
    std::filesystem::create_directories(parent, ec);
  }
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write snapshot file: " + temp.string());
    out << container.dump();
    out.flush();
    if (!out) throw IoError("short write to snapshot file: " + temp.string());
  }
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw IoError("cannot move snapshot into place: " + path.string() + ": " + ec.message());
  }
}

KnowledgeSnapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string bytes = std::move(buffer).str();

  nlohmann::json container = nlohmann::json::parse(bytes, nullptr, false);
  if (container.is_discarded()) corrupt("not valid JSON");

  try {
    if (container.value("format", "") != kFormatName) {
      throw SnapshotVersionError("not an entlink snapshot: " + path.string());
    }
    KnowledgeSnapshot snap;
    container.at("manifest").get_to(snap.manifest_);
    if (snap.manifest_.format_version != kFormatVersion) {
      throw SnapshotVersionError(
          "unsupported snapshot format version " +
          std::to_string(snap.manifest_.format_version) + " (supported: " +
          std::to_string(kFormatVersion) + ")");
    }

    const auto& payload = container.at("payload");
    auto expected_crc = container.at("payload_crc32").get<std::uint32_t>();
    if (payload_checksum(payload.dump()) != expected_crc) {
      corrupt("payload checksum mismatch");
    }

    payload.at("entities").get_to(snap.entities_);
    payload.at("redirects").get_to(snap.redirect_index_);
    payload.at("disambig").get_to(snap.disambig_index_);
    payload.at("disambig_aliases").get_to(snap.disambig_aliases_);
    payload.at("doc_freq").get_to(snap.doc_freq_);
    snap.llc2_second_hop_factor_ = payload.value("llc2_second_hop_factor", 1.0);

    if (snap.entities_.size() != snap.manifest_.entity_count) {
      corrupt("entity count disagrees with manifest");
    }
    for (std::size_t i = 0; i < snap.entities_.size(); ++i) {
      const Entity& entity = snap.entities_[i];
      if (entity.id != i) corrupt("entity ids are not contiguous");
      for (std::size_t k = 1; k < entity.term_vector.size(); ++k) {
        if (entity.term_vector[k - 1].first >= entity.term_vector[k].first) {
          corrupt("term vector out of order for \"" + entity.title + "\"");
        }
      }
      EntityId previous = 0;
      bool first = true;
      for (const auto& link : entity.llc1) {
        if (link.target >= snap.entities_.size()) {
          corrupt("link target out of range for \"" + entity.title + "\"");
        }
        if (link.count == 0) corrupt("zero link count for \"" + entity.title + "\"");
        if (!first && link.target <= previous) {
          corrupt("link list out of order for \"" + entity.title + "\"");
        }
        previous = link.target;
        first = false;
      }
    }
    for (const auto& [title, id] : snap.redirect_index_) {
      if (id >= snap.entities_.size()) corrupt("redirect \"" + title + "\" out of range");
    }
    for (const auto& [title, targets] : snap.disambig_index_) {
      for (EntityId id : targets) {
        if (id >= snap.entities_.size()) {
          corrupt("disambiguation target out of range for \"" + title + "\"");
        }
      }
    }
    for (const auto& [alias, key] : snap.disambig_aliases_) {
      if (snap.disambig_index_.count(key) == 0) {
        corrupt("disambiguation alias \"" + alias + "\" points nowhere");
      }
    }

    snap.title_index_.reserve(snap.entities_.size());
    for (const Entity& entity : snap.entities_) {
      snap.title_index_.emplace(case_fold(entity.title), entity.id);
    }
    return snap;
  } catch (const nlohmann::json::exception& e) {
    corrupt(e.what());
  }
}

}  // namespace entlink
