"""CSV report format shared by the harness and downstream consumers.

Data section: header `kind,N,seed,value,normalizer,ratio`, one row per
measurement.  Footer: `#`-prefixed comment lines carrying the fit summary
(key=value tokens) so every verdict is recomputable from the file alone.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

__all__ = ["CSV_COLUMNS", "ReportRow", "ReportDocument"]

CSV_COLUMNS = ("kind", "N", "seed", "value", "normalizer", "ratio")


@dataclass(frozen=True)
class ReportRow:
    kind: str
    N: float
    seed: int
    value: float
    normalizer: float
    ratio: float


@dataclass
class ReportDocument:
    rows: list[ReportRow] = field(default_factory=list)
    footers: list[dict[str, str]] = field(default_factory=list)

    def add_row(self, kind: str, N: float, seed: int, value: float, normalizer: float):
        ratio = value / normalizer if normalizer else float("nan")
        self.rows.append(
            ReportRow(kind=kind, N=N, seed=seed, value=value, normalizer=normalizer, ratio=ratio)
        )

    def add_footer(self, **fields):
        self.footers.append({k: str(v) for k, v in fields.items()})

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow(
                [r.kind, f"{r.N:.10g}", r.seed, f"{r.value:.12g}", f"{r.normalizer:.12g}", f"{r.ratio:.12g}"]
            )
        for footer in self.footers:
            tokens = " ".join(f"{k}={v}" for k, v in footer.items())
            buf.write(f"# {tokens}\n")
        return buf.getvalue()

    def write(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_csv())

    @classmethod
    def parse(cls, text: str) -> "ReportDocument":
        doc = cls()
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty report")
        header = next(csv.reader([lines[0]]))
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"unexpected columns {header}, want {list(CSV_COLUMNS)}")
        for ln in lines[1:]:
            if ln.startswith("#"):
                tokens = ln.lstrip("#").split()
                doc.footers.append(dict(t.split("=", 1) for t in tokens if "=" in t))
                continue
            vals = next(csv.reader([ln]))
            doc.rows.append(
                ReportRow(
                    kind=vals[0],
                    N=float(vals[1]),
                    seed=int(vals[2]),
                    value=float(vals[3]),
                    normalizer=float(vals[4]),
                    ratio=float(vals[5]),
                )
            )
        return doc
