# series.py

from __future__ import annotations

from typing import Any

from pydantic import Field
from pydantic.dataclasses import dataclass

from trivzero._exceptions import InvalidInput
from trivzero.fields import digits as base_digits


@dataclass
class SeriesRecord:
    """Serialized special polynomial; coefficients in the ring's text format."""

    ring: str
    char: str
    j: int
    coeffs: list[str]
    d_max_used: int
    tail_certified: bool
    metadata: dict[str, Any] = Field(default_factory=dict)


@dataclass
class VadicRecord:
    ring: str
    char: str
    v: str
    d_v: int
    j: int
    coeffs: list[str]
    special: SeriesRecord


@dataclass
class ProfileRow:
    j: int
    degree: int
    l_r: int
    bound: int

    @property
    def within(self) -> bool:
        return self.degree <= self.bound


@dataclass(frozen=True)
class PadicExponent:
    """y in Z_p by its base-p digits, least significant first.

    ``exact`` marks a non-negative integer: digits past the list are zero.
    """

    p: int
    digits: tuple[int, ...] = ()
    exact: bool = False

    def __post_init__(self) -> None:
        if any(not 0 <= d < self.p for d in self.digits):
            err_msg = f'digits {list(self.digits)} are not base-{self.p} digits'
            raise InvalidInput(err_msg)

    @classmethod
    def from_int(cls, j: int, p: int) -> PadicExponent:
        return cls(p=p, digits=tuple(base_digits(j, p)), exact=True)

    def digit(self, i: int) -> int | None:
        if i < len(self.digits):
            return self.digits[i]
        return 0 if self.exact else None
