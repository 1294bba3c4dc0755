"""Parsed view of a harness CSV report.

The CSV contract: header ``kind,N,seed,value,normalizer,ratio``, one data row
per measurement, then ``#``-prefixed footer lines of ``key=value`` tokens
carrying fit summaries.  This module consumes only that contract.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

__all__ = ["SCHEMA_COLUMNS", "SchemaMismatchError", "ReportRow", "ReportFrame"]

SCHEMA_COLUMNS = ("kind", "N", "seed", "value", "normalizer", "ratio")


class SchemaMismatchError(ValueError):
    """Raised when the CSV header deviates from the schema; carries the diff."""

    def __init__(self, found: tuple[str, ...]):
        self.found = found
        missing = [c for c in SCHEMA_COLUMNS if c not in found]
        unexpected = [c for c in found if c not in SCHEMA_COLUMNS]
        parts = [f"expected columns {list(SCHEMA_COLUMNS)}", f"found {list(found)}"]
        if missing:
            parts.append(f"missing: {missing}")
        if unexpected:
            parts.append(f"unexpected: {unexpected}")
        if not missing and not unexpected:
            parts.append("order differs")
        super().__init__("; ".join(parts))


@dataclass(frozen=True)
class ReportRow:
    kind: str
    N: float
    seed: int
    value: float
    normalizer: float
    ratio: float


@dataclass
class ReportFrame:
    rows: list[ReportRow] = field(default_factory=list)
    footers: list[dict[str, str]] = field(default_factory=list)

    @classmethod
    def parse(cls, text: str) -> "ReportFrame":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty report file")
        header = tuple(next(csv.reader([lines[0]])))
        if header != SCHEMA_COLUMNS:
            raise SchemaMismatchError(header)
        frame = cls()
        for ln in lines[1:]:
            if ln.startswith("#"):
                tokens = ln.lstrip("#").split()
                frame.footers.append(dict(t.split("=", 1) for t in tokens if "=" in t))
                continue
            vals = next(csv.reader([ln]))
            if len(vals) != len(SCHEMA_COLUMNS):
                raise ValueError(f"malformed data row: {ln!r}")
            frame.rows.append(
                ReportRow(
                    kind=vals[0],
                    N=float(vals[1]),
                    seed=int(vals[2]),
                    value=float(vals[3]),
                    normalizer=float(vals[4]),
                    ratio=float(vals[5]),
                )
            )
        return frame

    @classmethod
    def read(cls, path) -> "ReportFrame":
        with open(path) as fh:
            return cls.parse(fh.read())

    def series(self) -> dict[str, list[ReportRow]]:
        """Rows grouped by their (possibly suffixed) kind label, input order."""
        out: dict[str, list[ReportRow]] = {}
        for row in self.rows:
            out.setdefault(row.kind, []).append(row)
        return out
