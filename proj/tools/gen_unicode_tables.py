#!/usr/bin/env python3
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
"""Regenerates src/unicode_tables.inc from the Python unicodedata database.

The tokenizer treats Unicode separator (Z*), punctuation (P*) and control
(Cc) code points as token boundaries and applies full case folding to the
rest. Both tables are emitted as sorted constexpr arrays so the C++ side
can binary-search them without any runtime Unicode dependency.
"""

import sys
import unicodedata

MAX_CP = 0x110000
SURROGATE_LO = 0xD800
SURROGATE_HI = 0xDFFF


def is_separator(cp: int) -> bool:
    cat = unicodedata.category(chr(cp))
    return cat[0] in ("Z", "P") or cat == "Cc"


def separator_ranges():
    ranges = []
    lo = None
    for cp in range(MAX_CP):
        if SURROGATE_LO <= cp <= SURROGATE_HI:
            sep = False
        else:
            sep = is_separator(cp)
        if sep and lo is None:
            lo = cp
        elif not sep and lo is not None:
            ranges.append((lo, cp - 1))
            lo = None
    if lo is not None:
        ranges.append((lo, MAX_CP - 1))
    return ranges


def case_folds():
    folds = []
    for cp in range(MAX_CP):
        if SURROGATE_LO <= cp <= SURROGATE_HI:
            continue
        ch = chr(cp)
        folded = ch.casefold()
        if folded != ch:
            cps = [ord(c) for c in folded]
            if len(cps) > 3:
                raise RuntimeError(f"fold of U+{cp:04X} expands to >3 code points")
            folds.append((cp, cps))
    return folds


def main(out_path: str) -> None:
    ranges = separator_ranges()
    folds = case_folds()
    with open(out_path, "w", encoding="utf-8") as out:
        out.write("// Generated by tools/gen_unicode_tables.py -- do not edit by hand.\n")
        out.write(f"// Unicode character database version {unicodedata.unidata_version}.\n\n")
        out.write(f"inline constexpr CodepointRange kSeparatorRanges[{len(ranges)}] = {{\n")
        for lo, hi in ranges:
            out.write(f"    {{0x{lo:X}, 0x{hi:X}}},\n")
        out.write("};\n\n")
        out.write(f"inline constexpr CaseFold kCaseFolds[{len(folds)}] = {{\n")
        for cp, cps in folds:
            padded = cps + [0] * (3 - len(cps))
            body = ", ".join(f"0x{c:X}" for c in padded)
            out.write(f"    {{0x{cp:X}, {{{body}}}, {len(cps)}}},\n")
        out.write("};\n")
    sys.stderr.write(f"wrote {out_path}: {len(ranges)} separator ranges, {len(folds)} folds\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/unicode_tables.inc")
