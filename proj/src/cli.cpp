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

#include "entlink/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "entlink/dump.hpp"
#include "entlink/errors.hpp"
#include "entlink/eval.hpp"
#include "entlink/linker.hpp"
#include "entlink/scoring.hpp"
#include "entlink/snapshot.hpp"

namespace entlink {
namespace {

constexpr const char* kVersion = "entlink 1.0.0";

// Flags shared by `disambiguate` and `evaluate`.
struct LinkFlags {
  std::string snapshot_path;
  std::string input_path;
  std::string format = "native";
  std::string modules = "infobox,textual,llc1,llc2";
  double nil_threshold = 0.05;
  std::string infobox_rules_path;
  std::size_t threads = 1;
  std::size_t textual_window = 0;
  std::size_t cue_window = 50;
};

void add_link_flags(CLI::App* cmd, LinkFlags* flags) {
  cmd->add_option("--snapshot", flags->snapshot_path, "Snapshot file to load")
      ->required();
  cmd->add_option("--input", flags->input_path, "Corpus file to read")->required();
  cmd->add_option("--format", flags->format, "Corpus format")
      ->check(CLI::IsMember({"native", "nif"}))
      ->capture_default_str();
  cmd->add_option("--modules", flags->modules,
                  "Comma-separated list of enabled weighting modules")
      ->check([](const std::string& value) -> std::string {
        try {
          parse_modules(value);
          return {};
        } catch (const ParseError& e) {
          return e.what();
        }
      })
      ->capture_default_str();
  cmd->add_option("--nil-threshold", flags->nil_threshold,
                  "Best final weight below this yields NIL")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--infobox-rules", flags->infobox_rules_path,
                  "JSON file mapping infobox types to cue terms");
  cmd->add_option("--threads", flags->threads,
                  "Worker threads for linking (0 = all cores)")
      ->capture_default_str();
  cmd->add_option("--window", flags->textual_window,
                  "Context tokens per side for text matching (0 = whole document)")
      ->capture_default_str();
  cmd->add_option("--cue-window", flags->cue_window,
                  "Context tokens per side for infobox cue checks")
      ->capture_default_str();
}

LinkerConfig linker_config_from(const LinkFlags& flags) {
  LinkerConfig config;
  config.nil_threshold = flags.nil_threshold;
  config.scorer.enabled_modules = parse_modules(flags.modules);
  config.scorer.textual_window = flags.textual_window;
  config.scorer.context_window = flags.cue_window;
  if (!flags.infobox_rules_path.empty()) {
    config.scorer.infobox_rules = load_infobox_rules(flags.infobox_rules_path);
  }
  return config;
}

// Opens `path` for writing, "-" meaning stdout.
class OutputFile {
 public:
  explicit OutputFile(const std::string& path) {
    if (path == "-") return;
    file_.emplace(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw IoError("cannot write output file: " + path);
  }

  std::ostream& stream() { return file_ ? *file_ : std::cout; }

  void finish(const std::string& path) {
    if (!file_) {
      std::cout.flush();
      return;
    }
    file_->flush();
    if (!*file_) throw IoError("short write to output file: " + path);
  }

 private:
  std::optional<std::ofstream> file_;
};

std::uint64_t timestamp_from_env() {
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (epoch == nullptr || *epoch == '\0') return 0;
  char* end = nullptr;
  unsigned long long value = std::strtoull(epoch, &end, 10);
  if (end == nullptr || *end != '\0') return 0;
  return value;
}

int cmd_build_snapshot(const std::string& input, const std::string& output,
                       double second_hop_factor) {
  std::vector<DumpRecord> records = parse_dump_file(input);
  BuildOptions options;
  options.timestamp = timestamp_from_env();
  options.llc2_second_hop_factor = second_hop_factor;
  KnowledgeSnapshot snapshot = build_snapshot(records, output, options);
  const SnapshotManifest& m = snapshot.manifest();
  std::cout << "snapshot written: " << output << " (" << m.entity_count << " entities, "
            << m.redirect_count << " redirects, " << m.disambig_count
            << " disambiguation pages, " << m.vocabulary_size << " terms)\n";
  return 0;
}

int cmd_disambiguate(const LinkFlags& flags, const std::string& output,
                     bool verbose_ambiguity) {
  KnowledgeSnapshot snapshot = load_snapshot(flags.snapshot_path);
  Corpus corpus = load_corpus(flags.input_path, parse_corpus_format(flags.format));
  LinkerConfig config = linker_config_from(flags);

  auto annotations = link_corpus(corpus, snapshot, config, flags.threads);
  std::size_t mention_count = 0;
  for (const auto& doc : annotations) mention_count += doc.size();

  OutputFile out(output);
  write_annotations_jsonl(out.stream(), annotations, verbose_ambiguity);
  out.finish(output);
  std::cerr << "linked " << mention_count << " mentions across " << corpus.size()
            << " documents\n";
  return 0;
}

int cmd_evaluate(const LinkFlags& flags, const std::string& output,
                 const std::string& report_format) {
  KnowledgeSnapshot snapshot = load_snapshot(flags.snapshot_path);
  Corpus corpus = load_corpus(flags.input_path, parse_corpus_format(flags.format));
  LinkerConfig config = linker_config_from(flags);

  auto annotations = link_corpus(corpus, snapshot, config, flags.threads);
  EvalReport report = evaluate(annotations, corpus, snapshot);

  OutputFile out(output);
  if (report_format == "json") {
    out.stream() << report_to_json(report).dump(2) << '\n';
  } else {
    out.stream() << report_to_text(report);
  }
  out.finish(output);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Unsupervised, language-independent entity disambiguation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // build-snapshot
  std::string build_input;
  std::string build_output;
  double second_hop_factor = 1.0;
  CLI::App* build = app.add_subcommand(
      "build-snapshot", "Parse a dump file and write a knowledge snapshot");
  build->add_option("--input", build_input, "Dump file to parse")->required();
  build->add_option("--output", build_output, "Snapshot file to write")->required();
  build->add_option("--second-hop-factor", second_hop_factor,
                    "Scale for second-hop counts in level-2 link lists")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  // disambiguate
  LinkFlags link_flags;
  std::string link_output = "-";
  bool verbose_ambiguity = false;
  CLI::App* disambiguate =
      app.add_subcommand("disambiguate", "Link corpus mentions against a snapshot");
  add_link_flags(disambiguate, &link_flags);
  disambiguate->add_option("--output", link_output, "Annotation JSONL file (- = stdout)")
      ->capture_default_str();
  disambiguate->add_flag("--verbose-ambiguity", verbose_ambiguity,
                         "Include the full ranked candidate list per mention");

  // evaluate
  LinkFlags eval_flags;
  std::string eval_output = "-";
  std::string report_format = "text";
  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Link a gold corpus and score the decisions");
  add_link_flags(evaluate_cmd, &eval_flags);
  evaluate_cmd->add_option("--output", eval_output, "Report file (- = stdout)")
      ->capture_default_str();
  evaluate_cmd->add_option("--report", report_format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return cmd_build_snapshot(build_input, build_output, second_hop_factor);
    if (*disambiguate) return cmd_disambiguate(link_flags, link_output, verbose_ambiguity);
    if (*evaluate_cmd) return cmd_evaluate(eval_flags, eval_output, report_format);
  } catch (const Error& e) {
    // Bad or missing input data.
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("entlink");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace entlink
