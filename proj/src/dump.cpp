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

#include "entlink/dump.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "entlink/errors.hpp"
#include "entlink/tokenizer.hpp"

namespace entlink {
namespace {


std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  return text;
}

std::optional<PageKind> parse_kind(std::string_view text) {
  if (text == "article") return PageKind::article;
  if (text == "redirect") return PageKind::redirect;
  if (text == "disambiguation") return PageKind::disambiguation;
  return std::nullopt;
}

// Splits a directive line "#NAME<TAB>value" into name and value.
struct Directive {
  std::string_view name;
  std::string_view value;
};

std::optional<Directive> parse_directive(std::string_view line) {
  if (line.empty() || line[0] != '#') return std::nullopt;
  auto tab = line.find('\t');
  if (tab == std::string_view::npos) return Directive{line.substr(1), {}};
  return Directive{line.substr(1, tab - 1), line.substr(tab + 1)};
}

class RecordValidator {
 public:
  // Titles share a namespace within {article, redirect} and a separate
  // one for disambiguation pages, so an article and a same-titled
  // disambiguation page may coexist.
  void check_and_register(const DumpRecord& record, std::size_t line) {
    auto& seen = record.kind == PageKind::disambiguation ? disambig_titles_ : page_titles_;
    if (!seen.insert(record.title).second) {
      throw ConflictError("duplicate title \"" + record.title + "\" in dump");
    }
    if (record.kind == PageKind::redirect) {
      if (!record.redirect_target) {
        throw ParseError("redirect page \"" + record.title + "\" has no #REDIRECT target", line);
      }
      if (!is_blank(record.body)) {
        throw ParseError("redirect page \"" + record.title + "\" must have an empty body", line);
      }
    } else if (record.redirect_target) {
      throw ParseError("#REDIRECT is only valid on redirect pages (page \"" + record.title + "\")",
                       line);
    }
    if (record.kind == PageKind::disambiguation) {
      if (record.disambig_targets.empty()) {
        throw ParseError(
            "disambiguation page \"" + record.title + "\" lists no #DISAMBIG targets", line);
      }
      if (!is_blank(record.body)) {
        throw ParseError(
            "disambiguation page \"" + record.title + "\" must have an empty body", line);
      }
    } else if (!record.disambig_targets.empty()) {
      throw ParseError(
          "#DISAMBIG is only valid on disambiguation pages (page \"" + record.title + "\")", line);
    }
  }

 private:
  static bool is_blank(std::string_view body) {
    return body.find_first_not_of(" \t\r\n") == std::string_view::npos;
  }

  std::unordered_set<std::string> page_titles_;
  std::unordered_set<std::string> disambig_titles_;
};

}  // namespace

std::string_view to_string(PageKind kind) {
  switch (kind) {
    case PageKind::article: return "article";
    case PageKind::redirect: return "redirect";
    case PageKind::disambiguation: return "disambiguation";
  }
  return "?";
}

std::vector<DumpRecord> parse_dump(std::istream& input) {
  std::vector<DumpRecord> records;
  RecordValidator validator;

  std::optional<DumpRecord> current;
  std::vector<std::string> body_lines;
  bool in_body = false;
  std::size_t page_line = 0;

  auto flush = [&]() {
    if (!current) return;
    while (!body_lines.empty() && body_lines.back().empty()) body_lines.pop_back();
    std::string body;
    for (std::size_t i = 0; i < body_lines.size(); ++i) {
      if (i > 0) body.push_back('\n');
      body += body_lines[i];
    }
    current->body = std::move(body);
    validator.check_and_register(*current, page_line);
    records.push_back(std::move(*current));
    current.reset();
    body_lines.clear();
    in_body = false;
  };

  std::string line;
  std::size_t line_no = 0;
  bool first_line = true;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first_line && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line.erase(0, 3);  // UTF-8 BOM
    }
    first_line = false;

    if (line.rfind("##", 0) == 0) {
      // Escaped body line: "##..." stands for "#...".
      if (!current) throw ParseError("body text before the first #PAGE header", line_no);
      body_lines.push_back(line.substr(1));
      in_body = true;
      continue;
    }
    if (!line.empty() && line[0] == '#') {
      auto directive = parse_directive(line);
      if (directive->name == "PAGE") {
        flush();
        auto rest = directive->value;
        auto tab = rest.find('\t');
        if (tab == std::string_view::npos) {
          throw ParseError("malformed #PAGE header, expected #PAGE<TAB>kind<TAB>title", line_no);
        }
        auto kind = parse_kind(trim(rest.substr(0, tab)));
        auto title = trim(rest.substr(tab + 1));
        if (!kind) {
          throw ParseError("unknown page kind \"" + std::string(rest.substr(0, tab)) + "\"",
                           line_no);
        }
        if (title.empty()) throw ParseError("empty page title", line_no);
        current = DumpRecord{};
        current->title = std::string(title);
        current->kind = *kind;
        page_line = line_no;
        continue;
      }
      if (!current) {
        throw ParseError("directive #" + std::string(directive->name) + " before any #PAGE header",
                         line_no);
      }
      if (in_body) {
        throw ParseError("directive #" + std::string(directive->name) + " after body text", line_no);
      }
      if (directive->name == "INFOBOX") {
        if (current->infobox_type) throw ParseError("duplicate #INFOBOX directive", line_no);
        auto value = trim(directive->value);
        if (value.empty()) throw ParseError("empty #INFOBOX type", line_no);
        current->infobox_type = std::string(value);
      } else if (directive->name == "REDIRECT") {
        if (current->kind != PageKind::redirect) {
          throw ParseError("#REDIRECT on a non-redirect page", line_no);
        }
        if (current->redirect_target) throw ParseError("duplicate #REDIRECT directive", line_no);
        auto value = trim(directive->value);
        if (value.empty()) throw ParseError("empty #REDIRECT target", line_no);
        current->redirect_target = std::string(value);
      } else if (directive->name == "DISAMBIG") {
        if (current->kind != PageKind::disambiguation) {
          throw ParseError("#DISAMBIG on a non-disambiguation page", line_no);
        }
        auto value = trim(directive->value);
        if (value.empty()) throw ParseError("empty #DISAMBIG target", line_no);
        current->disambig_targets.emplace_back(value);
      } else {
        throw ParseError("unknown directive #" + std::string(directive->name) +
                             " (escape literal # at line start as ##)",
                         line_no);
      }
      continue;
    }

    // Plain body line.
    if (!current) {
      if (trim(line).empty()) continue;  // leading blank lines are fine
      throw ParseError("body text before the first #PAGE header", line_no);
    }
    if (!line.empty()) in_body = true;
    body_lines.push_back(line);
  }
  flush();
  return records;
}

std::vector<DumpRecord> parse_dump_file(const std::filesystem::path& path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) throw IoError("cannot open dump file: " + path.string());
  return parse_dump(input);
}

std::optional<EntityId> resolve_redirect_chain(std::string_view title,
                                               const TitleIndex& title_index,
                                               const RedirectMap& redirect_map) {
  std::string key = case_fold(title);
  std::vector<std::string> visited;  // folded keys, for cycle detection
  std::string path(title);
  while (true) {
    if (auto it = title_index.find(key); it != title_index.end()) return it->second;
    auto redirect = redirect_map.find(key);
    if (redirect == redirect_map.end()) return std::nullopt;
    if (visited.size() == kMaxRedirectDepth) {
      throw ConflictError("redirect chain deeper than " + std::to_string(kMaxRedirectDepth) +
                          ": " + path + " -> ...");
    }
    visited.push_back(key);
    path += " -> " + redirect->second;
    std::string next = case_fold(redirect->second);
    if (std::find(visited.begin(), visited.end(), next) != visited.end()) {
      throw ConflictError("redirect cycle: " + path);
    }
    key = std::move(next);
  }
}

LinkList extract_links(std::string_view body, const TitleIndex& title_index,
                       const RedirectMap& redirect_map, std::optional<EntityId> self) {
  std::map<EntityId, std::uint32_t> counts;
  std::size_t pos = 0;
  while (pos + 1 < body.size()) {
    if (body[pos] != '[' || body[pos + 1] != '[') {
      ++pos;
      continue;
    }
    std::size_t start = pos + 2;
    std::size_t close = body.find("]]", start);
    std::size_t reopen = body.find("[[", start);
    if (close == std::string_view::npos) break;
    if (reopen != std::string_view::npos && reopen < close) {
      // Stray opener without a matching close before the next link;
      // drop it and rescan from the inner one.
      pos = reopen;
      continue;
    }
    std::string_view inner = body.substr(start, close - start);
    std::string_view target = trim(inner.substr(0, inner.find('|')));
    pos = close + 2;
    if (target.empty() || target.find('\n') != std::string_view::npos) continue;
    std::optional<EntityId> resolved =
        resolve_redirect_chain(target, title_index, redirect_map);
    if (!resolved || resolved == self) continue;
    ++counts[*resolved];
  }
  LinkList links;
  links.reserve(counts.size());
  for (const auto& [target, count] : counts) links.push_back({target, count});
  return links;
}

}  // namespace entlink
