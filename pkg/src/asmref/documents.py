"""Table documents, their serialization formats, disk caching, and b-files.

All numeric values cross the serialization boundary as decimal strings so that
exact integers of any size survive a round trip unchanged.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator

from .errors import BFileError, ValidationError

TOOL_NAME = "asmref"
TOOL_VERSION = "0.1.0"

_KINDS = ("refined", "extended", "coefficients")


def _expected_entry_count(kind: str, n: int, d: int) -> int:
    if kind == "refined":
        return math.comb(n, d)
    return n**d


def _check_decimal(text: str) -> str:
    try:
        value = int(text)
    except (TypeError, ValueError):
        raise ValidationError(f"not a decimal integer: {text!r}") from None
    if str(value) != text:
        raise ValidationError(f"not a canonical decimal integer: {text!r}")
    return text


@dataclass(frozen=True)
class TableDocument:
    """One complete table of exact values with decimal-string entries."""

    n: int
    d: int
    kind: str
    entries: tuple[tuple[tuple[int, ...], str], ...]
    tool: str = TOOL_NAME
    version: str = TOOL_VERSION
    generated: str | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValidationError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        expected = _expected_entry_count(self.kind, self.n, self.d)
        if len(self.entries) != expected:
            raise ValidationError(
                f"a {self.kind} table at n={self.n}, d={self.d} needs {expected} "
                f"entries, got {len(self.entries)}"
            )
        for indices, value in self.entries:
            if len(indices) != self.d:
                raise ValidationError(f"index tuple {indices} does not have depth {self.d}")
            _check_decimal(value)

    def int_entries(self) -> dict[tuple[int, ...], int]:
        return {indices: int(value) for indices, value in self.entries}

    def to_json_dict(self) -> dict:
        meta = {"tool": self.tool, "version": self.version}
        if self.generated is not None:
            meta["generated"] = self.generated
        return {
            "n": self.n,
            "d": self.d,
            "kind": self.kind,
            "entries": [[list(indices), value] for indices, value in self.entries],
            "meta": meta,
        }

    def to_json_text(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv_text(self) -> str:
        lines = ["indices,value"]
        for indices, value in self.entries:
            lines.append(f"{' '.join(str(i) for i in indices)},{value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "TableDocument":
        try:
            meta = data["meta"]
            entries = tuple(
                (tuple(int(i) for i in indices), str(value))
                for indices, value in data["entries"]
            )
            return cls(
                n=int(data["n"]),
                d=int(data["d"]),
                kind=str(data["kind"]),
                entries=entries,
                tool=str(meta["tool"]),
                version=str(meta["version"]),
                generated=meta.get("generated"),
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed table document: {exc}") from exc

    @classmethod
    def from_json_text(cls, text: str) -> "TableDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from exc
        return cls.from_json_dict(data)


def document_from_entries(
    n: int, d: int, kind: str, entries: dict[tuple[int, ...], int], stamped: bool = False
) -> TableDocument:
    """Build a document from integer entries, optionally with a timestamp."""
    generated = (
        datetime.now(timezone.utc).isoformat(timespec="seconds") if stamped else None
    )
    return TableDocument(
        n=n,
        d=d,
        kind=kind,
        entries=tuple((indices, str(value)) for indices, value in entries.items()),
        generated=generated,
    )


@dataclass(frozen=True)
class TableCache:
    """Directory-backed cache of table documents, keyed by kind, n, d, version."""

    directory: Path

    def path_for(self, kind: str, n: int, d: int) -> Path:
        return Path(self.directory) / f"{kind}-n{n}-d{d}.json"

    def load(self, kind: str, n: int, d: int) -> TableDocument | None:
        """The cached document, or None when missing, stale, or unreadable."""
        path = self.path_for(kind, n, d)
        try:
            doc = TableDocument.from_json_text(path.read_text())
        except (OSError, ValidationError):
            return None
        if (doc.kind, doc.n, doc.d) != (kind, n, d) or doc.version != TOOL_VERSION:
            return None
        return doc

    def store(self, doc: TableDocument) -> None:
        directory = Path(self.directory)
        directory.mkdir(parents=True, exist_ok=True)
        if doc.generated is None:
            doc = replace(
                doc,
                generated=datetime.now(timezone.utc).isoformat(timespec="seconds"),
            )
        self.path_for(doc.kind, doc.n, doc.d).write_text(doc.to_json_text())


def parse_b_file(text: str) -> list[tuple[int, int]]:
    """Parse b-file lines of the form "index value"; '#' comment lines allowed."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileError(f"line {lineno}: expected 'index value', got {raw!r}")
        try:
            out.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise BFileError(f"line {lineno}: {exc}") from exc
    return out


@dataclass(frozen=True)
class OeisReference:
    """A parsed reference sequence: id plus contiguously indexed decimal terms."""

    sequence_id: str
    offset: int
    terms: tuple[str, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValidationError("a reference sequence needs at least one term")
        for term in self.terms:
            _check_decimal(term)

    @classmethod
    def from_b_file(cls, text: str, sequence_id: str) -> "OeisReference":
        pairs = parse_b_file(text)
        if not pairs:
            raise BFileError("b-file holds no terms")
        for (a, _), (b, _) in zip(pairs, pairs[1:]):
            if b != a + 1:
                raise BFileError(f"indices must be contiguous, got {a} then {b}")
        return cls(
            sequence_id=sequence_id,
            offset=pairs[0][0],
            terms=tuple(str(v) for _, v in pairs),
        )

    def items(self) -> Iterator[tuple[int, int]]:
        for pos, term in enumerate(self.terms):
            yield self.offset + pos, int(term)
