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

#ifndef ENTLINK_CLI_HPP_
#define ENTLINK_CLI_HPP_

#include <string>
#include <vector>

namespace entlink {

// Entry point behind the `entlink` binary. Subcommands:
//   build-snapshot  parse a dump and write a snapshot
//   disambiguate    link a corpus, write JSONL annotations
//   evaluate        link a gold corpus and report micro P/R/F1
// Returns 0 on success, 1 on runtime failure, 2 on usage errors.
int run_cli(int argc, const char* const* argv);

// Same, for in-process callers; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace entlink

#endif  // ENTLINK_CLI_HPP_
