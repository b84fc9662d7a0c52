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

#ifndef ENTLINK_DUMP_HPP_
#define ENTLINK_DUMP_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entlink/types.hpp"

namespace entlink {

enum class PageKind { article, redirect, disambiguation };

std::string_view to_string(PageKind kind);

// One page of a dump. Body text is kept verbatim (including `[[...]]`
// link markup) so links can be extracted later.
struct DumpRecord {
  std::string title;
  PageKind kind = PageKind::article;
  std::optional<std::string> infobox_type;
  std::optional<std::string> redirect_target;
  std::vector<std::string> disambig_targets;
  std::string body;
};

// Parses the line-delimited dump format:
//
//   #PAGE<TAB>kind<TAB>title
//   #INFOBOX<TAB>type          (optional)
//   #REDIRECT<TAB>target       (required for kind=redirect)
//   #DISAMBIG<TAB>target       (one per target, kind=disambiguation)
//   body lines ...             (articles only; leading `#` escaped as `##`)
//
// Throws ParseError (with line number) on malformed input and
// ConflictError on duplicate titles. A title may be shared between a
// disambiguation page and one article or redirect, never within the
// same group.
std::vector<DumpRecord> parse_dump(std::istream& input);
std::vector<DumpRecord> parse_dump_file(const std::filesystem::path& path);

// Case-folded article title -> entity id.
using TitleIndex = std::unordered_map<std::string, EntityId>;
// Case-folded redirect title -> raw target title.
using RedirectMap = std::unordered_map<std::string, std::string>;

// Longest redirect chain that will be followed before giving up.
inline constexpr std::size_t kMaxRedirectDepth = 16;

// Follows a redirect chain to the final article id. Returns nullopt
// when the chain leaves the known title space. Throws ConflictError on
// a cycle (naming it) or a chain deeper than 16 hops.
std::optional<EntityId> resolve_redirect_chain(std::string_view title,
                                               const TitleIndex& title_index,
                                               const RedirectMap& redirect_map);

// Extracts `[[Target]]` / `[[Target|anchor]]` links from wiki-markup
// body text and aggregates them per resolved target article. Targets
// are matched case-folded; redirects are followed to the final
// article; unknown targets and links back to `self` are dropped.
// The result is sorted by target id.
LinkList extract_links(std::string_view body, const TitleIndex& title_index,
                       const RedirectMap& redirect_map,
                       std::optional<EntityId> self = std::nullopt);

}  // namespace entlink

#endif  // ENTLINK_DUMP_HPP_
