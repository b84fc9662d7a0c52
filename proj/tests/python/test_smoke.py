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

"""End-to-end smoke test of the Python bindings.

Runs as a plain script (no test framework) so it can execute in any
interpreter that can import the package:

    PYTHONPATH=build/python ENTLINK_FIXTURE_DIR=tests/fixtures \
        python3 tests/python/test_smoke.py
"""

import math
import os
import tempfile

import entlink

FIXTURES = os.environ.get("ENTLINK_FIXTURE_DIR", os.path.join("tests", "fixtures"))


def fixture(name):
    return os.path.join(FIXTURES, name)


def test_tokenize():
    assert entlink.tokenize("Saadi was born in Shiraz.") == [
        "saadi",
        "was",
        "born",
        "in",
        "shiraz",
    ]
    assert entlink.case_fold("Straße") == "strasse"


def test_snapshot_round_trip(tmpdir):
    path = os.path.join(tmpdir, "fixture.snapshot")
    manifest = entlink.build_snapshot(fixture("saadi_dump.txt"), path, timestamp=42)
    assert manifest["entity_count"] == 7
    assert manifest["redirect_count"] == 1
    assert manifest["disambig_count"] == 1
    assert manifest["build_timestamp"] == 42

    snap = entlink.Snapshot.load(path)
    assert snap.entity_count() == 7
    assert snap.manifest()["entity_count"] == 7

    saadi = snap.resolve_title("saadi")
    assert saadi == 0
    assert snap.title(saadi) == "Saadi"
    assert snap.infobox_type(saadi) == "poet"
    assert snap.resolve_title("Old Shiraz") == snap.resolve_title("Shiraz")
    assert snap.resolve_title("Atlantis") is None

    assert snap.llc1(saadi) == [(1, 10), (2, 4), (3, 12)]
    assert snap.llc2(saadi) == [(1, 11), (2, 5), (3, 13), (6, 2)]
    assert snap.candidates("Saadi") == [0, 4]
    assert snap.candidates("Saadi", max_candidates=1) == [0]
    assert snap.idf("nonexistent-term") == math.log(1 + 7)
    return snap


def test_linking(snap):
    text = "Saadi was born in the city of Shiraz."
    mentions = [(0, 5, "Saadi", None), (22, 26, "city", None), (30, 36, "Shiraz", None)]
    rows = entlink.link_document(
        snap, "doc-1", text, mentions, verbose_ambiguity=True
    )
    assert [r["decision_title"] for r in rows] == ["Saadi", "City", "Shiraz"]
    assert rows[0]["decision_id"] == 0
    assert rows[0]["confidence"] == 1.0
    assert rows[0]["scores"]["llc1"] == 1.0
    assert [c["title"] for c in rows[0]["ambiguity_list"]] == ["Saadi Township"]

    nil = entlink.link_document(snap, "doc-2", "Rumi", [(0, 4, "Rumi", None)])
    assert nil[0]["decision_title"] == "NIL"
    assert nil[0]["decision_id"] is None

    try:
        entlink.link_document(snap, "doc-3", "short", [(0, 99, "short", None)])
    except ValueError:
        pass
    else:
        raise AssertionError("bad span did not raise")


def test_evaluation(snap):
    report = entlink.evaluate_file(snap, fixture("saadi_eval_mixed.jsonl"))
    assert report["micro"]["tp"] == 1
    assert report["micro"]["fp"] == 1
    assert report["micro"]["fn"] == 1
    assert report["micro"]["f1"] == 0.5

    nif = entlink.evaluate_file(snap, fixture("saadi.nt"), format="nif")
    assert (nif["micro"]["tp"], nif["micro"]["fp"], nif["micro"]["fn"]) == (2, 1, 1)

    try:
        entlink.evaluate_file(snap, fixture("missing.jsonl"))
    except OSError:
        pass
    else:
        raise AssertionError("missing corpus did not raise")


def main():
    test_tokenize()
    with tempfile.TemporaryDirectory() as tmpdir:
        snap = test_snapshot_round_trip(tmpdir)
        test_linking(snap)
        test_evaluation(snap)
    print("python smoke: all checks passed (entlink %s)" % entlink.__version__)


if __name__ == "__main__":
    main()
