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

#include "entlink/eval.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "entlink/errors.hpp"

namespace entlink {
namespace {

using MentionKey = std::tuple<std::string, std::size_t, std::size_t>;

struct MentionKeyHash {
  std::size_t operator()(const MentionKey& key) const {
    std::size_t h = std::hash<std::string>{}(std::get<0>(key));
    h ^= std::hash<std::size_t>{}(std::get<1>(key)) + 0x9e3779b97f4a7c15ULL + (h << 6);
    h ^= std::hash<std::size_t>{}(std::get<2>(key)) + 0x9e3779b97f4a7c15ULL + (h << 6);
    return h;
  }
};

bool gold_is_nil(const std::optional<std::string>& gold) {
  return !gold || *gold == kNilMarker;
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "native") return CorpusFormat::native;
  if (name == "nif") return CorpusFormat::nif;
  throw ParseError("unknown corpus format \"" + std::string(name) +
                   "\" (expected native or nif)");
}

double precision(const EvalCounts& counts) {
  std::uint64_t denom = counts.tp + counts.fp;
  if (denom == 0) return 1.0;
  return static_cast<double>(counts.tp) / static_cast<double>(denom);
}

double recall(const EvalCounts& counts) {
  std::uint64_t denom = counts.tp + counts.fn;
  if (denom == 0) return 1.0;
  return static_cast<double>(counts.tp) / static_cast<double>(denom);
}

double f1_score(const EvalCounts& counts) {
  double p = precision(counts);
  double r = recall(counts);
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

Corpus parse_native_corpus(std::istream& input) {
  Corpus corpus;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError("invalid JSON document record", line_number);
    }
    try {
      CorpusDocument doc;
      doc.doc.id = j.at("id").get<std::string>();
      doc.doc.text = j.at("text").get<std::string>();
      if (!seen_ids.insert(doc.doc.id).second) {
        throw ParseError("duplicate document id \"" + doc.doc.id + "\"", line_number);
      }
      if (auto mentions = j.find("mentions"); mentions != j.end()) {
        for (const auto& m : *mentions) {
          Mention mention;
          mention.doc_id = doc.doc.id;
          mention.start = m.at("start").get<std::size_t>();
          mention.end = m.at("end").get<std::size_t>();
          if (auto s = m.find("surface"); s != m.end() && !s->is_null()) {
            mention.surface = s->get<std::string>();
          }
          if (auto g = m.find("gold"); g != m.end() && !g->is_null()) {
            mention.gold = g->get<std::string>();
          }
          doc.mentions.push_back(std::move(mention));
        }
      }
      corpus.push_back(std::move(doc));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad document record: ") + e.what(), line_number);
    }
  }
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path.string());
  switch (format) {
    case CorpusFormat::native: return parse_native_corpus(in);
    case CorpusFormat::nif: return parse_nif_corpus(in);
  }
  throw ContractError("unhandled corpus format");
}

EvalReport evaluate(const std::vector<std::vector<LinkedAnnotation>>& system,
                    const Corpus& gold, const KnowledgeSnapshot& snapshot) {
  EvalReport report;

  // Resolve each gold mention once, keyed by placement.
  struct GoldSlot {
    std::optional<EntityId> entity;
    bool matched = false;
  };
  std::unordered_map<MentionKey, GoldSlot, MentionKeyHash> gold_slots;
  std::map<std::string, EvalCounts> extra_docs;
  std::vector<std::string> doc_order;
  std::unordered_map<std::string, std::size_t> doc_index;
  std::unordered_set<std::string> warned_titles;

  for (const auto& doc : gold) {
    if (doc_index.emplace(doc.doc.id, doc_order.size()).second) {
      doc_order.push_back(doc.doc.id);
    }
    for (const Mention& mention : doc.mentions) {
      GoldSlot slot;
      if (!gold_is_nil(mention.gold)) {
        slot.entity = snapshot.resolve_title(*mention.gold);
        if (!slot.entity && warned_titles.insert(*mention.gold).second) {
          report.warnings.push_back("gold entity \"" + *mention.gold +
                                    "\" is not in the snapshot; treated as NIL");
        }
      }
      gold_slots[{doc.doc.id, mention.start, mention.end}] = slot;
    }
  }

  std::vector<EvalCounts> per_doc(doc_order.size());
  auto counts_for = [&](const std::string& doc_id) -> EvalCounts& {
    if (auto it = doc_index.find(doc_id); it != doc_index.end()) {
      return per_doc[it->second];
    }
    return extra_docs[doc_id];
  };

  for (const auto& doc_annotations : system) {
    for (const LinkedAnnotation& annotation : doc_annotations) {
      EvalCounts& counts = counts_for(annotation.mention.doc_id);
      std::optional<EntityId> gold_entity;
      auto slot = gold_slots.find(
          {annotation.mention.doc_id, annotation.mention.start, annotation.mention.end});
      if (slot != gold_slots.end()) {
        slot->second.matched = true;
        gold_entity = slot->second.entity;
      }
      if (annotation.decision) {
        if (gold_entity && *gold_entity == *annotation.decision) {
          ++counts.tp;
        } else if (gold_entity) {
          ++counts.fp;
          ++counts.fn;
        } else {
          ++counts.fp;
        }
      } else if (gold_entity) {
        ++counts.fn;
      }
    }
  }

  // Gold mentions the system never produced count as misses.
  for (const auto& doc : gold) {
    for (const Mention& mention : doc.mentions) {
      auto slot = gold_slots.find({doc.doc.id, mention.start, mention.end});
      if (slot != gold_slots.end() && !slot->second.matched && slot->second.entity) {
        ++counts_for(doc.doc.id).fn;
      }
    }
  }

  for (std::size_t i = 0; i < doc_order.size(); ++i) {
    report.per_document.push_back({doc_order[i], per_doc[i]});
    report.counts += per_doc[i];
  }
  for (const auto& [doc_id, counts] : extra_docs) {
    report.per_document.push_back({doc_id, counts});
    report.counts += counts;
  }

  report.precision = precision(report.counts);
  report.recall = recall(report.counts);
  report.f1 = f1_score(report.counts);
  return report;
}

EvalReport evaluate_corpus(const Corpus& gold, const KnowledgeSnapshot& snapshot,
                           const LinkerConfig& config, std::size_t threads) {
  return evaluate(link_corpus(gold, snapshot, config, threads), gold, snapshot);
}

nlohmann::json report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["micro"] = {{"tp", report.counts.tp},       {"fp", report.counts.fp},
                {"fn", report.counts.fn},       {"precision", report.precision},
                {"recall", report.recall},      {"f1", report.f1}};
  nlohmann::json docs = nlohmann::json::array();
  for (const auto& doc : report.per_document) {
    docs.push_back({{"doc_id", doc.doc_id},
                    {"tp", doc.counts.tp},
                    {"fp", doc.counts.fp},
                    {"fn", doc.counts.fn},
                    {"precision", precision(doc.counts)},
                    {"recall", recall(doc.counts)},
                    {"f1", f1_score(doc.counts)}});
  }
  j["per_document"] = std::move(docs);
  j["warnings"] = report.warnings;
  return j;
}

std::string report_to_text(const EvalReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "documents: " << report.per_document.size() << '\n';
  out << "tp: " << report.counts.tp << "  fp: " << report.counts.fp
      << "  fn: " << report.counts.fn << '\n';
  out << "micro_precision: " << report.precision << '\n';
  out << "micro_recall: " << report.recall << '\n';
  out << "micro_f1: " << report.f1 << '\n';
  for (const auto& warning : report.warnings) {
    out << "warning: " << warning << '\n';
  }
  return out.str();
}

}  // namespace entlink
