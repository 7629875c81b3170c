"""Report rows and their CSV / JSON serializations."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

MEASURES = ("coherence", "discord", "gm")
CSV_FIELDS = ("state_label", "measure", "split", "value", "exact_expr", "paper_value")
SWEEP_FIELDS = ("b0", "stage", "gm_lemma", "gm_numeric")


class ReportError(ValueError):
    pass


def fmt(x: float | None) -> str:
    """12 significant digits; None becomes an empty field."""
    if x is None:
        return ""
    x = float(x)
    return format(x if x != 0 else 0.0, ".12g")


@dataclass(frozen=True)
class ReportRow:
    state_label: str
    measure: str
    split: str
    value: float
    exact_expr: str | None = None
    paper_value: float | None = None

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ReportError(f"unknown measure {self.measure!r}")
        if not math.isfinite(self.value):
            raise ReportError(f"non-finite value for {self.state_label}/{self.measure}")

    def as_strings(self) -> dict[str, str]:
        return {
            "state_label": self.state_label,
            "measure": self.measure,
            "split": self.split or "",
            "value": fmt(self.value),
            "exact_expr": self.exact_expr or "",
            "paper_value": fmt(self.paper_value),
        }

    def as_json(self) -> dict:
        return {
            "state_label": self.state_label,
            "measure": self.measure,
            "split": self.split or "",
            "value": float(fmt(self.value)),
            "exact_expr": self.exact_expr or "",
            "paper_value": None if self.paper_value is None else float(fmt(self.paper_value)),
        }


def _csv(fields, rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def rows_to_csv(rows: list[ReportRow]) -> str:
    return _csv(CSV_FIELDS, [r.as_strings() for r in rows])


def rows_to_json(rows: list[ReportRow]) -> str:
    return json.dumps([r.as_json() for r in rows], indent=2) + "\n"


def render(rows: list[ReportRow], fmt_name: str) -> str:
    if fmt_name == "csv":
        return rows_to_csv(rows)
    if fmt_name == "json":
        return rows_to_json(rows)
    raise ReportError(f"unknown format {fmt_name!r}")


@dataclass(frozen=True)
class SweepRow:
    b0: float
    stage: int
    gm_lemma: float
    gm_numeric: float


def sweep_to_csv(rows: list[SweepRow]) -> str:
    return _csv(
        SWEEP_FIELDS,
        [{"b0": fmt(r.b0), "stage": str(r.stage), "gm_lemma": fmt(r.gm_lemma), "gm_numeric": fmt(r.gm_numeric)} for r in rows],
    )
