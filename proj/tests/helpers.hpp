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

#ifndef ENTLINK_TESTS_HELPERS_HPP_
#define ENTLINK_TESTS_HELPERS_HPP_

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "entlink/dump.hpp"
#include "entlink/snapshot.hpp"
#include "entlink/types.hpp"

namespace entlink::test {

inline std::filesystem::path fixture_path(std::string_view name) {
  return std::filesystem::path(ENTLINK_FIXTURE_DIR) / name;
}

inline std::vector<DumpRecord> parse_records(std::string_view dump_text) {
  std::istringstream in{std::string(dump_text)};
  return parse_dump(in);
}

inline KnowledgeSnapshot snapshot_from_dump(std::string_view dump_text,
                                            const BuildOptions& options = {}) {
  return KnowledgeSnapshot::from_records(parse_records(dump_text), options);
}

inline KnowledgeSnapshot saadi_snapshot(const BuildOptions& options = {}) {
  return KnowledgeSnapshot::from_records(parse_dump_file(fixture_path("saadi_dump.txt")),
                                         options);
}

inline Mention make_mention(std::string doc_id, std::size_t start, std::size_t end,
                            std::string surface,
                            std::optional<std::string> gold = std::nullopt) {
  Mention mention;
  mention.doc_id = std::move(doc_id);
  mention.start = start;
  mention.end = end;
  mention.surface = std::move(surface);
  mention.gold = std::move(gold);
  return mention;
}

// Builds a document by appending surfaces separated by filler text,
// recording the mention span of each appended surface.
class DocBuilder {
 public:
  explicit DocBuilder(std::string doc_id) { doc_.id = std::move(doc_id); }

  DocBuilder& word(std::string_view text) {
    separate();
    doc_.text += text;
    return *this;
  }

  DocBuilder& mention(std::string_view surface,
                      std::optional<std::string> gold = std::nullopt) {
    separate();
    std::size_t start = doc_.text.size();
    doc_.text += surface;
    mentions_.push_back(make_mention(doc_.id, start, doc_.text.size(),
                                     std::string(surface), std::move(gold)));
    return *this;
  }

  const Document& doc() const { return doc_; }
  const std::vector<Mention>& mentions() const { return mentions_; }

  CorpusDocument corpus_document() const { return {doc_, mentions_}; }

 private:
  void separate() {
    if (!doc_.text.empty()) doc_.text += ' ';
  }

  Document doc_;
  std::vector<Mention> mentions_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

inline void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// Self-cleaning scratch directory for snapshot and CLI round trips.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    std::uniform_int_distribution<std::uint64_t> dist;
    std::ostringstream name;
    name << "entlink-test-" << std::hex << dist(rd);
    path_ = std::filesystem::temp_directory_path() / name.str();
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace entlink::test

#endif  // ENTLINK_TESTS_HELPERS_HPP_
