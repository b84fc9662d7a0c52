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

#include "entlink/linker.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace entlink {

std::vector<LinkedAnnotation> link_document(const Document& doc,
                                            std::vector<Mention> mentions,
                                            const KnowledgeSnapshot& snapshot,
                                            const LinkerConfig& config) {
  CandidateContext context =
      build_context(doc, std::move(mentions), snapshot, config.candidates);
  auto scores = score_all(doc, context, snapshot, config.scorer);

  std::vector<LinkedAnnotation> annotations;
  annotations.reserve(context.mentions.size());
  for (std::size_t mi = 0; mi < context.mentions.size(); ++mi) {
    LinkedAnnotation annotation;
    annotation.mention = context.mentions[mi];
    annotation.decision_title = kNilMarker;

    const auto& candidates = context.per_mention[mi];
    std::vector<RankedCandidate> ranked;
    ranked.reserve(candidates.size());
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      RankedCandidate candidate;
      candidate.id = candidates[ci];
      candidate.title = snapshot.entity(candidates[ci]).title;
      candidate.final_weight = scores[mi][ci].final_weight;
      candidate.module_weights = scores[mi][ci].normalized;
      ranked.push_back(std::move(candidate));
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const RankedCandidate& a, const RankedCandidate& b) {
                if (a.final_weight != b.final_weight) return a.final_weight > b.final_weight;
                if (a.title != b.title) return a.title < b.title;
                return a.id < b.id;
              });

    if (!ranked.empty()) {
      const RankedCandidate& best = ranked.front();
      annotation.confidence = best.final_weight;
      if (best.final_weight >= config.nil_threshold) {
        annotation.decision = best.id;
        annotation.decision_title = best.title;
        annotation.decision_scores = best.module_weights;
        ranked.erase(ranked.begin());
      }
    }
    annotation.ambiguity_list = std::move(ranked);
    annotations.push_back(std::move(annotation));
  }
  return annotations;
}

std::vector<std::vector<LinkedAnnotation>> link_corpus(const Corpus& corpus,
                                                       const KnowledgeSnapshot& snapshot,
                                                       const LinkerConfig& config,
                                                       std::size_t threads) {
  std::vector<std::vector<LinkedAnnotation>> results(corpus.size());
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = std::max<std::size_t>(1, std::min(threads, corpus.size()));

  if (threads == 1) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      results[i] = link_document(corpus[i].doc, corpus[i].mentions, snapshot, config);
    }
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= corpus.size()) return;
      try {
        results[i] = link_document(corpus[i].doc, corpus[i].mentions, snapshot, config);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

nlohmann::json annotation_to_json(const LinkedAnnotation& annotation,
                                  bool verbose_ambiguity) {
  nlohmann::json j;
  j["doc_id"] = annotation.mention.doc_id;
  j["start"] = annotation.mention.start;
  j["end"] = annotation.mention.end;
  j["surface"] = annotation.mention.surface;
  j["decision_title"] = annotation.decision_title;
  j["confidence"] = annotation.confidence;

  nlohmann::json scores = nlohmann::json::object();
  for (const auto& [module, weight] : annotation.decision_scores) {
    scores[std::string(to_string(module))] = weight;
  }
  j["scores"] = std::move(scores);

  if (verbose_ambiguity) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& ranked : annotation.ambiguity_list) {
      nlohmann::json modules = nlohmann::json::object();
      for (const auto& [module, weight] : ranked.module_weights) {
        modules[std::string(to_string(module))] = weight;
      }
      list.push_back({{"title", ranked.title},
                      {"weight", ranked.final_weight},
                      {"modules", std::move(modules)}});
    }
    j["ambiguity_list"] = std::move(list);
  }
  return j;
}

void write_annotations_jsonl(std::ostream& out,
                             const std::vector<std::vector<LinkedAnnotation>>& annotations,
                             bool verbose_ambiguity) {
  std::vector<const LinkedAnnotation*> flat;
  for (const auto& doc : annotations) {
    for (const auto& annotation : doc) flat.push_back(&annotation);
  }
  std::sort(flat.begin(), flat.end(), [](const LinkedAnnotation* a,
                                         const LinkedAnnotation* b) {
    return std::tie(a->mention.doc_id, a->mention.start, a->mention.end) <
           std::tie(b->mention.doc_id, b->mention.start, b->mention.end);
  });
  for (const LinkedAnnotation* annotation : flat) {
    out << annotation_to_json(*annotation, verbose_ambiguity).dump() << '\n';
  }
}

std::string explain_text(const LinkedAnnotation& annotation) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << annotation.mention.doc_id << " [" << annotation.mention.start << ", "
      << annotation.mention.end << ") \"" << annotation.mention.surface << "\" -> "
      << annotation.decision_title << " (confidence " << annotation.confidence << ")\n";

  auto print_row = [&](const std::string& title, double final_weight,
                       const std::map<ScoreModule, double>& modules, const char* tag) {
    out << "  " << tag << ' ' << title << ": final=" << final_weight;
    for (const auto& [module, weight] : modules) {
      out << ' ' << to_string(module) << '=' << weight;
    }
    out << '\n';
  };

  if (annotation.decision) {
    print_row(annotation.decision_title, annotation.confidence,
              annotation.decision_scores, "*");
  }
  for (const auto& ranked : annotation.ambiguity_list) {
    print_row(ranked.title, ranked.final_weight, ranked.module_weights, "-");
  }
  return out.str();
}

}  // namespace entlink
