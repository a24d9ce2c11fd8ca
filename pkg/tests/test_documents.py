"""Table documents, the disk cache, and reference-sequence parsing."""

from __future__ import annotations

import json

import pytest

from asmref.documents import (
    OeisReference,
    TOOL_VERSION,
    TableCache,
    TableDocument,
    document_from_entries,
    parse_b_file,
)
from asmref.errors import BFileError, ValidationError


SAMPLE_ENTRIES = {(1,): 2, (2,): 3, (3,): 2}


def sample_doc(stamped: bool = False) -> TableDocument:
    return document_from_entries(3, 1, "refined", SAMPLE_ENTRIES, stamped=stamped)


def test_json_round_trip():
    doc = sample_doc()
    again = TableDocument.from_json_text(doc.to_json_text())
    assert again == doc
    assert again.int_entries() == SAMPLE_ENTRIES


def test_unstamped_json_has_no_timestamp():
    data = json.loads(sample_doc().to_json_text())
    assert set(data["meta"]) == {"tool", "version"}
    stamped = json.loads(sample_doc(stamped=True).to_json_text())
    assert "generated" in stamped["meta"]


def test_json_text_is_deterministic():
    assert sample_doc().to_json_text() == sample_doc().to_json_text()
    assert sample_doc().to_json_text().endswith("\n")


def test_csv_rendering():
    text = sample_doc().to_csv_text()
    lines = text.strip().split("\n")
    assert lines[0] == "indices,value"
    assert "1,2" in lines[1]


def test_entry_count_is_validated():
    with pytest.raises(ValidationError):
        document_from_entries(3, 1, "refined", {(1,): 2})
    with pytest.raises(ValidationError):
        document_from_entries(2, 2, "extended", {(1, 1): 0})


def test_entries_must_be_canonical_decimals():
    with pytest.raises(ValidationError):
        TableDocument(
            n=1, d=1, kind="refined", entries=(((1,), "007"),)
        )
    with pytest.raises(ValidationError):
        TableDocument(n=1, d=1, kind="refined", entries=(((1,), "1.5"),))
    with pytest.raises(ValidationError):
        TableDocument(n=1, d=1, kind="refined", entries=(((1,), "-0"),))
    TableDocument(n=1, d=1, kind="refined", entries=(((1,), "-7"),))


def test_malformed_json_rejected():
    with pytest.raises(ValidationError):
        TableDocument.from_json_text("{not json")
    with pytest.raises(ValidationError):
        TableDocument.from_json_text(json.dumps({"n": 3}))


def test_cache_round_trip(tmp_path):
    cache = TableCache(tmp_path)
    assert cache.load("refined", 3, 1) is None
    cache.store(sample_doc())
    loaded = cache.load("refined", 3, 1)
    assert loaded is not None
    assert loaded.int_entries() == SAMPLE_ENTRIES
    # stored files carry a timestamp even when the source document had none
    assert loaded.generated is not None


def test_cache_rejects_version_mismatch(tmp_path):
    cache = TableCache(tmp_path)
    cache.store(sample_doc())
    path = cache.path_for("refined", 3, 1)
    data = json.loads(path.read_text())
    data["meta"]["version"] = "0.0.0"
    path.write_text(json.dumps(data))
    assert cache.load("refined", 3, 1) is None


def test_cache_rejects_corrupt_file(tmp_path):
    cache = TableCache(tmp_path)
    path = cache.path_for("refined", 3, 1)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("garbage")
    assert cache.load("refined", 3, 1) is None


def test_cache_key_mismatch(tmp_path):
    cache = TableCache(tmp_path)
    cache.store(sample_doc())
    assert cache.load("refined", 4, 1) is None
    assert cache.load("extended", 3, 1) is None


def test_parse_b_file():
    text = "# comment\n0 1\n1 1\n2 2\n\n3 7\n"
    assert parse_b_file(text) == [(0, 1), (1, 1), (2, 2), (3, 7)]


def test_parse_b_file_errors():
    with pytest.raises(BFileError):
        parse_b_file("0 1 2\n")
    with pytest.raises(BFileError):
        parse_b_file("zero one\n")


def test_reference_from_b_file():
    ref = OeisReference.from_b_file("1 1\n2 2\n3 7\n", "A005130")
    assert ref.offset == 1
    assert list(ref.items()) == [(1, 1), (2, 2), (3, 7)]


def test_reference_requires_contiguous_indices():
    with pytest.raises(BFileError):
        OeisReference.from_b_file("1 1\n3 7\n", "A005130")
    with pytest.raises(BFileError):
        OeisReference.from_b_file("# only comments\n", "A005130")


def test_tool_version_matches_package():
    import asmref

    assert TOOL_VERSION == asmref.__version__
