"""Centrality reports and their CSV / JSON renderings."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

__all__ = ["CentralityReport", "DiameterInfo", "dense_ranks", "ranked_rows",
           "to_csv", "to_json"]


@dataclass(frozen=True, eq=False)
class CentralityReport:
    """Per-vertex closeness centrality, exact or sampled.

    ``inverse`` holds the inverse centralities (scaled average distances)
    the values were derived from; it stays finite even where ``values`` is
    infinite because every sampled source was the vertex itself.
    """

    values: np.ndarray
    inverse: np.ndarray
    method: str
    k: Optional[int] = None
    seed: Optional[int] = None
    elapsed: Optional[float] = None
    flagged: tuple = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in ("exact", "sampled"):
            raise ValueError(f"unknown method {self.method!r}")
        self.values.flags.writeable = False
        self.inverse.flags.writeable = False

    @property
    def n(self):
        return len(self.values)

    def same_values(self, other) -> bool:
        return (np.array_equal(self.values, other.values)
                and np.array_equal(self.inverse, other.inverse))


@dataclass(frozen=True)
class DiameterInfo:
    lower: float
    upper: float
    exact: bool

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")
        if self.exact and self.lower != self.upper:
            raise ValueError("exact diameter must have lower == upper")

    @property
    def value(self):
        if not self.exact:
            raise ValueError("diameter is only bracketed, not known exactly")
        return self.lower


def dense_ranks(values) -> list[int]:
    """Dense ranks by descending value; equal values share a rank."""
    distinct = sorted(set(float(v) for v in values), reverse=True)
    rank_of = {v: i + 1 for i, v in enumerate(distinct)}
    return [rank_of[float(v)] for v in values]


def ranked_rows(report: CentralityReport) -> list[tuple[int, float, int]]:
    """``(vertex, centrality, rank)`` ordered by rank, then vertex id."""
    ranks = dense_ranks(report.values)
    rows = [(u, float(c), r) for u, (c, r) in enumerate(zip(report.values, ranks))]
    rows.sort(key=lambda row: (row[2], row[0]))
    return rows


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, np.generic):
        return _jsonable(x.item())
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def to_csv(report: CentralityReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["vertex", "centrality", "rank"])
    for u, c, r in ranked_rows(report):
        writer.writerow([u, repr(c), r])
    return buf.getvalue()


def to_json(report: CentralityReport, meta: Optional[dict] = None) -> str:
    """JSON object ``{"meta": ..., "rows": [...]}``; infinities become null."""
    payload = {
        "meta": _jsonable(meta if meta is not None else {"method": report.method}),
        "rows": [{"vertex": u, "centrality": _jsonable(c), "rank": r}
                 for u, c, r in ranked_rows(report)],
    }
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"
