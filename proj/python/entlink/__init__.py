# Copyright 2026 The Entlink Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Unsupervised, language-independent entity disambiguation.

The heavy lifting happens in the compiled ``_entlink`` extension; this
package only re-exports its surface:

- ``build_snapshot(dump_path, snapshot_path, ...)`` parses a wiki-style
  dump and writes a reusable knowledge snapshot.
- ``Snapshot.load(path)`` / ``Snapshot.from_dump(path)`` give an
  immutable index with ``resolve_title``, ``candidates``, ``llc1``,
  ``llc2`` and ``idf`` lookups.
- ``link_document(snapshot, doc_id, text, mentions)`` disambiguates
  pre-detected mentions and returns one dict per mention.
- ``evaluate_file(snapshot, corpus_path)`` links a gold corpus (native
  JSONL or NIF) and reports micro precision/recall/F1.
"""

from ._entlink import (
    Snapshot,
    __version__,
    build_snapshot,
    case_fold,
    evaluate_file,
    link_document,
    tokenize,
)

__all__ = [
    "Snapshot",
    "__version__",
    "build_snapshot",
    "case_fold",
    "evaluate_file",
    "link_document",
    "tokenize",
]
