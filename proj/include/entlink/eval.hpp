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

#ifndef ENTLINK_EVAL_HPP_
#define ENTLINK_EVAL_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "entlink/linker.hpp"
#include "entlink/snapshot.hpp"
#include "entlink/types.hpp"
#include "json.hpp"

namespace entlink {

enum class CorpusFormat { native, nif };

// "native" or "nif"; anything else throws ParseError.
CorpusFormat parse_corpus_format(std::string_view name);

// Micro counts. A system link that hits the gold entity is a tp; a
// link to the wrong entity is both fp and fn; a link where gold is NIL
// is an fp; a NIL where gold has an entity is an fn; NIL against NIL
// counts nothing.
struct EvalCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  EvalCounts& operator+=(const EvalCounts& other) {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    return *this;
  }
  friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

// Empty denominators count as perfect, and F1 is 0 when both P and R
// are 0.
double precision(const EvalCounts& counts);
double recall(const EvalCounts& counts);
double f1_score(const EvalCounts& counts);

struct DocumentEval {
  std::string doc_id;
  EvalCounts counts;
};

struct EvalReport {
  EvalCounts counts;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
  std::vector<DocumentEval> per_document;
  std::vector<std::string> warnings;
};

// Native corpus: one JSON document per line with "id", "text" and a
// "mentions" array of {start, end, surface?, gold?}. Offsets are byte
// offsets; gold is an entity title or "NIL".
Corpus parse_native_corpus(std::istream& input);

// NIF subset: line-oriented N-Triples carrying nif:isString,
// nif:beginIndex / nif:endIndex (character offsets), nif:anchorOf,
// nif:referenceContext and itsrdf:taIdentRef. Character offsets are
// converted to byte offsets; a mention without taIdentRef is gold-NIL.
Corpus parse_nif_corpus(std::istream& input);

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

// Scores system annotations against the gold mentions, matching by
// (doc id, start, end). Gold titles are resolved through the snapshot;
// titles that resolve nowhere are treated as NIL and reported in
// warnings.
EvalReport evaluate(const std::vector<std::vector<LinkedAnnotation>>& system,
                    const Corpus& gold, const KnowledgeSnapshot& snapshot);

// Links the gold corpus and scores the result in one step.
EvalReport evaluate_corpus(const Corpus& gold, const KnowledgeSnapshot& snapshot,
                           const LinkerConfig& config = {}, std::size_t threads = 1);

nlohmann::json report_to_json(const EvalReport& report);

// Plain-text report; metric lines use four decimal places.
std::string report_to_text(const EvalReport& report);

}  // namespace entlink

#endif  // ENTLINK_EVAL_HPP_
