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

// Python bindings over the C++ core. Entities travel as plain ints,
// annotations and reports as plain dicts, so the module needs no
// Python-side wrapper types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "entlink/candidates.hpp"
#include "entlink/dump.hpp"
#include "entlink/errors.hpp"
#include "entlink/eval.hpp"
#include "entlink/linker.hpp"
#include "entlink/scoring.hpp"
#include "entlink/snapshot.hpp"
#include "entlink/tokenizer.hpp"
#include "entlink/types.hpp"

namespace py = pybind11;

namespace entlink {
namespace {

// (start, end, surface) or (start, end, surface, gold).
using MentionTuple =
    std::tuple<std::size_t, std::size_t, std::string, std::optional<std::string>>;

std::vector<Mention> to_mentions(const std::string& doc_id,
                                 const std::vector<MentionTuple>& entries) {
  std::vector<Mention> mentions;
  mentions.reserve(entries.size());
  for (const auto& [start, end, surface, gold] : entries) {
    Mention mention;
    mention.doc_id = doc_id;
    mention.start = start;
    mention.end = end;
    mention.surface = surface;
    mention.gold = gold;
    mentions.push_back(std::move(mention));
  }
  return mentions;
}

LinkerConfig make_config(const std::string& modules, double nil_threshold,
                         const std::optional<std::string>& infobox_rules,
                         std::size_t textual_window, std::size_t cue_window) {
  LinkerConfig config;
  config.nil_threshold = nil_threshold;
  config.scorer.enabled_modules = parse_modules(modules);
  config.scorer.textual_window = textual_window;
  config.scorer.context_window = cue_window;
  if (infobox_rules) config.scorer.infobox_rules = load_infobox_rules(*infobox_rules);
  return config;
}

py::dict manifest_dict(const SnapshotManifest& manifest) {
  py::dict out;
  out["format_version"] = manifest.format_version;
  out["entity_count"] = manifest.entity_count;
  out["redirect_count"] = manifest.redirect_count;
  out["disambig_count"] = manifest.disambig_count;
  out["vocabulary_size"] = manifest.vocabulary_size;
  out["build_timestamp"] = manifest.build_timestamp;
  return out;
}

py::dict module_weights_dict(const std::map<ScoreModule, double>& weights) {
  py::dict out;
  for (const auto& [module, weight] : weights) {
    out[py::str(std::string(to_string(module)))] = weight;
  }
  return out;
}

py::dict annotation_dict(const LinkedAnnotation& annotation, bool verbose) {
  py::dict out;
  out["doc_id"] = annotation.mention.doc_id;
  out["start"] = annotation.mention.start;
  out["end"] = annotation.mention.end;
  out["surface"] = annotation.mention.surface;
  out["decision_title"] = annotation.decision_title;
  out["decision_id"] =
      annotation.decision ? py::cast(*annotation.decision) : py::none();
  out["confidence"] = annotation.confidence;
  out["scores"] = module_weights_dict(annotation.decision_scores);
  if (verbose) {
    py::list ranked;
    for (const RankedCandidate& candidate : annotation.ambiguity_list) {
      py::dict entry;
      entry["id"] = candidate.id;
      entry["title"] = candidate.title;
      entry["weight"] = candidate.final_weight;
      entry["modules"] = module_weights_dict(candidate.module_weights);
      ranked.append(std::move(entry));
    }
    out["ambiguity_list"] = std::move(ranked);
  }
  return out;
}

py::dict report_dict(const EvalReport& report) {
  py::dict micro;
  micro["tp"] = report.counts.tp;
  micro["fp"] = report.counts.fp;
  micro["fn"] = report.counts.fn;
  micro["precision"] = report.precision;
  micro["recall"] = report.recall;
  micro["f1"] = report.f1;

  py::list docs;
  for (const DocumentEval& doc : report.per_document) {
    py::dict entry;
    entry["doc_id"] = doc.doc_id;
    entry["tp"] = doc.counts.tp;
    entry["fp"] = doc.counts.fp;
    entry["fn"] = doc.counts.fn;
    entry["precision"] = precision(doc.counts);
    entry["recall"] = recall(doc.counts);
    entry["f1"] = f1_score(doc.counts);
    docs.append(std::move(entry));
  }

  py::dict out;
  out["micro"] = std::move(micro);
  out["per_document"] = std::move(docs);
  out["warnings"] = report.warnings;
  return out;
}

}  // namespace

PYBIND11_MODULE(_entlink, m) {
  m.doc() = "Unsupervised, language-independent entity disambiguation";
  m.attr("__version__") = "1.0.0";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("tokenize", [](const std::string& text) { return tokenize(text); },
        py::arg("text"), "Case-folded tokens of a UTF-8 string.");
  m.def("case_fold", [](const std::string& text) { return case_fold(text); },
        py::arg("text"), "Full Unicode case folding of a UTF-8 string.");

  m.def(
      "build_snapshot",
      [](const std::string& dump_path, const std::string& snapshot_path,
         std::uint64_t timestamp, double second_hop_factor) {
        BuildOptions options;
        options.timestamp = timestamp;
        options.llc2_second_hop_factor = second_hop_factor;
        KnowledgeSnapshot snapshot =
            build_snapshot(parse_dump_file(dump_path), snapshot_path, options);
        return manifest_dict(snapshot.manifest());
      },
      py::arg("dump_path"), py::arg("snapshot_path"), py::arg("timestamp") = 0,
      py::arg("second_hop_factor") = 1.0,
      "Parse a dump file, write a snapshot, and return its manifest.");

  py::class_<KnowledgeSnapshot>(m, "Snapshot",
                                "Immutable in-memory index over a parsed dump.")
      .def_static(
          "load", [](const std::string& path) { return load_snapshot(path); },
          py::arg("path"), "Load a serialized snapshot from disk.")
      .def_static(
          "from_dump",
          [](const std::string& path) {
            return KnowledgeSnapshot::from_records(parse_dump_file(path));
          },
          py::arg("path"), "Build an in-memory snapshot straight from a dump file.")
      .def("manifest",
           [](const KnowledgeSnapshot& snapshot) {
             return manifest_dict(snapshot.manifest());
           })
      .def("entity_count", &KnowledgeSnapshot::entity_count)
      .def("vocabulary_size", &KnowledgeSnapshot::vocabulary_size)
      .def(
          "title",
          [](const KnowledgeSnapshot& snapshot, EntityId id) {
            return snapshot.entity(id).title;
          },
          py::arg("entity_id"))
      .def(
          "infobox_type",
          [](const KnowledgeSnapshot& snapshot, EntityId id) {
            return snapshot.entity(id).infobox_type;
          },
          py::arg("entity_id"))
      .def(
          "resolve_title",
          [](const KnowledgeSnapshot& snapshot, const std::string& title) {
            return snapshot.resolve_title(title);
          },
          py::arg("title"),
          "Entity id for a title or redirect alias, None when unknown.")
      .def(
          "llc1",
          [](const KnowledgeSnapshot& snapshot, EntityId id) {
            std::vector<std::pair<EntityId, std::uint32_t>> out;
            for (const LinkEntry& entry : snapshot.llc1(id)) {
              out.emplace_back(entry.target, entry.count);
            }
            return out;
          },
          py::arg("entity_id"), "Direct link counts as (target, count) pairs.")
      .def(
          "llc2",
          [](const KnowledgeSnapshot& snapshot, EntityId id) {
            std::vector<std::pair<EntityId, std::uint32_t>> out;
            for (const LinkEntry& entry : snapshot.llc2(id)) {
              out.emplace_back(entry.target, entry.count);
            }
            return out;
          },
          py::arg("entity_id"), "Level-2 link counts as (target, count) pairs.")
      .def(
          "idf",
          [](const KnowledgeSnapshot& snapshot, const std::string& term) {
            return snapshot.idf(term);
          },
          py::arg("term"))
      .def(
          "candidates",
          [](const KnowledgeSnapshot& snapshot, const std::string& surface,
             std::size_t max_candidates) {
            CandidateGenOptions options;
            options.max_candidates = max_candidates;
            return generate_candidates(surface, snapshot, options);
          },
          py::arg("surface"), py::arg("max_candidates") = 64,
          "Candidate entity ids for a surface form.");

  m.def(
      "link_document",
      [](const KnowledgeSnapshot& snapshot, const std::string& doc_id,
         const std::string& text, const std::vector<MentionTuple>& mentions,
         const std::string& modules, double nil_threshold,
         const std::optional<std::string>& infobox_rules, std::size_t textual_window,
         std::size_t cue_window, bool verbose_ambiguity) {
        LinkerConfig config = make_config(modules, nil_threshold, infobox_rules,
                                          textual_window, cue_window);
        auto annotations =
            link_document({doc_id, text}, to_mentions(doc_id, mentions), snapshot,
                          config);
        py::list out;
        for (const LinkedAnnotation& annotation : annotations) {
          out.append(annotation_dict(annotation, verbose_ambiguity));
        }
        return out;
      },
      py::arg("snapshot"), py::arg("doc_id"), py::arg("text"), py::arg("mentions"),
      py::arg("modules") = "infobox,textual,llc1,llc2", py::arg("nil_threshold") = 0.05,
      py::arg("infobox_rules") = py::none(), py::arg("textual_window") = 0,
      py::arg("cue_window") = 50, py::arg("verbose_ambiguity") = false,
      "Link the mentions (start, end, surface[, gold]) of one document.");

  m.def(
      "evaluate_file",
      [](const KnowledgeSnapshot& snapshot, const std::string& corpus_path,
         const std::string& format, const std::string& modules, double nil_threshold,
         const std::optional<std::string>& infobox_rules, std::size_t threads) {
        LinkerConfig config = make_config(modules, nil_threshold, infobox_rules, 0, 50);
        Corpus corpus = load_corpus(corpus_path, parse_corpus_format(format));
        return report_dict(evaluate_corpus(corpus, snapshot, config, threads));
      },
      py::arg("snapshot"), py::arg("corpus_path"), py::arg("format") = "native",
      py::arg("modules") = "infobox,textual,llc1,llc2", py::arg("nil_threshold") = 0.05,
      py::arg("infobox_rules") = py::none(), py::arg("threads") = 1,
      "Link a gold corpus file and score the decisions (micro P/R/F1).");
}

}  // namespace entlink
