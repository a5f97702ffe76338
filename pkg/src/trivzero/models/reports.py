# reports.py

from __future__ import annotations

from typing import Any

from pydantic import Field
from pydantic.dataclasses import dataclass

from trivzero.constants import CSV_COLUMNS


@dataclass
class TrivialZeroReport:
    ring: str
    j: int
    v0: int
    v1: int
    l_p: int
    l_r: int
    np_slopes: str = ''
    place: str = 'infty'

    def __hash__(self):
        return hash((self.ring, self.place, self.j))

    @property
    def nonclassical(self) -> bool:
        return self.v1 > self.v0

    def row(self) -> dict[str, Any]:
        values = {
            'j': self.j,
            'l_p': self.l_p,
            'l_r': self.l_r,
            'v0': self.v0,
            'v1': self.v1,
            'nonclassical': str(self.nonclassical).lower(),
            'np_slopes': self.np_slopes,
        }
        return {k: values[k] for k in CSV_COLUMNS}


@dataclass
class GrowthPoint:
    bound: int
    max_lp: int | None


@dataclass
class ScanReport:
    ring: str
    place: str
    j_max: int
    entries: list[TrivialZeroReport] = Field(default_factory=list)
    nonclassical_set: list[int] = Field(default_factory=list)
    max_lp_nonclassical: int | None = None
    closure_violations: list[tuple[int, int]] = Field(default_factory=list)
    growth: list[GrowthPoint] = Field(default_factory=list)
    anomalies: list[int] = Field(default_factory=list)
    metadata: dict[str, Any] = Field(default_factory=dict)

    @property
    def scanned(self) -> list[int]:
        return [e.j for e in self.entries]

    def entry(self, j: int) -> TrivialZeroReport | None:
        for e in self.entries:
            if e.j == j:
                return e
        return None


@dataclass
class ClosureAnalysis:
    bounded_evidence: int | None
    histogram_nonclassical: dict[int, int]
    histogram_all: dict[int, int]
    closure_ok: bool


@dataclass
class HayesRow:
    j: int
    l_p: int
    l_p_next: int
    nonclassical_shifted: bool
