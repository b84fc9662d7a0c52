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

#include "entlink/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "entlink/errors.hpp"
#include "entlink/tokenizer.hpp"
#include "json.hpp"

namespace entlink {
namespace {

// Tokens considered "context" of a mention: the whole document when
// window is 0, otherwise the mention's own tokens plus up to `window`
// tokens on each side.
std::vector<std::string> context_tokens(const Document& doc, const Mention& mention,
                                        std::size_t window) {
  if (window == 0) return tokenize(doc.text);

  std::vector<TokenSpan> spans = tokenize_spans(doc.text);
  std::size_t first = 0;
  while (first < spans.size() && spans[first].end <= mention.start) ++first;
  std::size_t last = first;
  while (last < spans.size() && spans[last].start < mention.end) ++last;

  std::size_t from = first > window ? first - window : 0;
  std::size_t to = std::min(spans.size(), last + window);
  std::vector<std::string> tokens;
  tokens.reserve(to - from);
  for (std::size_t i = from; i < to; ++i) tokens.push_back(std::move(spans[i].text));
  return tokens;
}

TermVector count_terms(std::vector<std::string> tokens) {
  std::map<std::string, std::uint32_t> counts;
  for (auto& token : tokens) ++counts[std::move(token)];
  return {counts.begin(), counts.end()};
}

double module_raw(ScoreModule module, const Entity& entity, const Document& doc,
                  const CandidateContext& context, std::size_t mention_index,
                  const KnowledgeSnapshot& snapshot, const ScorerConfig& config) {
  const Mention& mention = context.mentions[mention_index];
  switch (module) {
    case ScoreModule::infobox:
      return infobox_score(entity, doc, mention, config);
    case ScoreModule::textual:
      return textual_score(entity, doc, mention, snapshot, config);
    case ScoreModule::llc1:
      return static_cast<double>(linkgraph_weight(entity.id, context, mention_index,
                                                  GraphLevel::level1, snapshot, config));
    case ScoreModule::llc2:
      return static_cast<double>(linkgraph_weight(entity.id, context, mention_index,
                                                  GraphLevel::level2, snapshot, config));
  }
  throw ContractError("unhandled score module");
}

}  // namespace

std::string_view to_string(ScoreModule module) {
  switch (module) {
    case ScoreModule::infobox: return "infobox";
    case ScoreModule::textual: return "textual";
    case ScoreModule::llc1: return "llc1";
    case ScoreModule::llc2: return "llc2";
  }
  return "unknown";
}

std::set<ScoreModule> parse_modules(std::string_view names) {
  std::set<ScoreModule> modules;
  std::size_t begin = 0;
  while (begin <= names.size()) {
    std::size_t comma = names.find(',', begin);
    if (comma == std::string_view::npos) comma = names.size();
    std::string_view name = names.substr(begin, comma - begin);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    if (!name.empty()) {
      if (name == "infobox") {
        modules.insert(ScoreModule::infobox);
      } else if (name == "textual") {
        modules.insert(ScoreModule::textual);
      } else if (name == "llc1" || name == "linkgraph_l1") {
        modules.insert(ScoreModule::llc1);
      } else if (name == "llc2" || name == "linkgraph_l2") {
        modules.insert(ScoreModule::llc2);
      } else {
        throw ParseError("unknown score module \"" + std::string(name) +
                         "\" (expected infobox, textual, llc1, llc2)");
      }
    }
    begin = comma + 1;
  }
  if (modules.empty()) throw ParseError("empty score module list");
  return modules;
}

std::map<std::string, std::vector<std::string>> load_infobox_rules(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open infobox rules file: " + path.string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw ParseError("infobox rules must be a JSON object: " + path.string());
  }
  std::map<std::string, std::vector<std::string>> rules;
  for (const auto& [type, cues] : j.items()) {
    if (!cues.is_array()) {
      throw ParseError("cue list for \"" + type + "\" must be an array: " + path.string());
    }
    std::vector<std::string> folded;
    folded.reserve(cues.size());
    for (const auto& cue : cues) {
      if (!cue.is_string()) {
        throw ParseError("cue for \"" + type + "\" must be a string: " + path.string());
      }
      folded.push_back(case_fold(cue.get<std::string>()));
    }
    rules[case_fold(type)] = std::move(folded);
  }
  return rules;
}

double infobox_score(const Entity& entity, const Document& doc, const Mention& mention,
                     const ScorerConfig& config) {
  if (!entity.infobox_type) return 1.0;
  auto rule = config.infobox_rules.find(case_fold(*entity.infobox_type));
  if (rule == config.infobox_rules.end() || rule->second.empty()) return 1.0;

  std::vector<std::string> window = context_tokens(doc, mention, config.context_window);
  for (const auto& cue : rule->second) {
    std::vector<std::string> cue_tokens = tokenize(cue);
    if (cue_tokens.empty() || cue_tokens.size() > window.size()) continue;
    for (std::size_t at = 0; at + cue_tokens.size() <= window.size(); ++at) {
      if (std::equal(cue_tokens.begin(), cue_tokens.end(), window.begin() + at)) {
        return 1.0;
      }
    }
  }
  return config.infobox_penalty;
}

double tfidf_cosine(const TermVector& a, const TermVector& b,
                    const KnowledgeSnapshot& snapshot) {
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    int cmp = a[i].first.compare(b[j].first);
    if (cmp < 0) {
      double wa = a[i].second * snapshot.idf(a[i].first);
      norm_a += wa * wa;
      ++i;
    } else if (cmp > 0) {
      double wb = b[j].second * snapshot.idf(b[j].first);
      norm_b += wb * wb;
      ++j;
    } else {
      double idf = snapshot.idf(a[i].first);
      double wa = a[i].second * idf;
      double wb = b[j].second * idf;
      dot += wa * wb;
      norm_a += wa * wa;
      norm_b += wb * wb;
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) {
    double wa = a[i].second * snapshot.idf(a[i].first);
    norm_a += wa * wa;
  }
  for (; j < b.size(); ++j) {
    double wb = b[j].second * snapshot.idf(b[j].first);
    norm_b += wb * wb;
  }
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
}

double textual_score(const Entity& entity, const Document& doc, const Mention& mention,
                     const KnowledgeSnapshot& snapshot, const ScorerConfig& config) {
  TermVector context = count_terms(context_tokens(doc, mention, config.textual_window));
  return tfidf_cosine(entity.term_vector, context, snapshot);
}

std::uint64_t linkgraph_weight(EntityId candidate, const CandidateContext& context,
                               std::size_t mention_index, GraphLevel level,
                               const KnowledgeSnapshot& snapshot,
                               const ScorerConfig& config) {
  if (mention_index >= context.per_mention.size()) {
    throw ContractError("mention index " + std::to_string(mention_index) +
                        " out of range (" + std::to_string(context.per_mention.size()) +
                        " mentions)");
  }
  const auto& own = context.per_mention[mention_index];
  if (std::find(own.begin(), own.end(), candidate) == own.end()) {
    throw ContractError("entity " + std::to_string(candidate) +
                        " is not a candidate of mention " + std::to_string(mention_index));
  }

  auto accumulate = [&](const LinkList& links) {
    std::uint64_t total = 0;
    for (const auto& link : links) {
      auto it = context.cl.find(link.target);
      if (it == context.cl.end()) continue;
      if (!config.intra_mention_edges) {
        const auto& proposers = it->second;
        bool elsewhere = std::any_of(proposers.begin(), proposers.end(),
                                     [&](std::size_t m) { return m != mention_index; });
        if (!elsewhere) continue;
      }
      total += link.count;
    }
    return total;
  };

  if (level == GraphLevel::level1) return accumulate(snapshot.llc1(candidate));
  return accumulate(snapshot.llc2(candidate));
}

void normalize_mention_scores(std::vector<double>& values, double eps) {
  if (values.empty()) throw ContractError("cannot normalize an empty score set");
  double max = *std::max_element(values.begin(), values.end());
  if (max <= 0.0) {
    std::fill(values.begin(), values.end(), 1.0);
    return;
  }
  for (double& value : values) value = std::max(value / max, eps);
}

std::vector<std::vector<ScoreVector>> score_all(const Document& doc,
                                                const CandidateContext& context,
                                                const KnowledgeSnapshot& snapshot,
                                                const ScorerConfig& config) {
  std::vector<std::vector<ScoreVector>> result(context.per_mention.size());
  for (std::size_t mi = 0; mi < context.per_mention.size(); ++mi) {
    const auto& candidates = context.per_mention[mi];
    if (candidates.empty()) continue;
    result[mi].resize(candidates.size());
    for (ScoreModule module : config.enabled_modules) {
      std::vector<double> raw(candidates.size());
      for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        raw[ci] = module_raw(module, snapshot.entity(candidates[ci]), doc, context, mi,
                             snapshot, config);
      }
      std::vector<double> normalized = raw;
      normalize_mention_scores(normalized, config.smoothing_eps);
      for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        result[mi][ci].raw[module] = raw[ci];
        result[mi][ci].normalized[module] = normalized[ci];
        result[mi][ci].final_weight *= normalized[ci];
      }
    }
  }
  return result;
}

}  // namespace entlink
