# rings.py

"""Base rings A, selected by name, with the strata power sums of their zeta sums."""

from __future__ import annotations

import functools
import logging
import math
import re
from abc import ABC
from abc import abstractmethod
from typing import TYPE_CHECKING
from typing import Any

from trivzero._exceptions import InvalidInput
from trivzero._exceptions import SpecMismatch
from trivzero.characters import character_power_sum
from trivzero.constants import CURVE_VARIABLE
from trivzero.constants import DMAX_CUSHION
from trivzero.constants import SUPPORTED_R
from trivzero.curves import CurveElement
from trivzero.curves import CurveSpec
from trivzero.curves import curve_power_sum
from trivzero.curves import curve_spec
from trivzero.curves import element_degree
from trivzero.curves import parse_curve_element
from trivzero.curves import render_curve_element
from trivzero.fields import digit_sum
from trivzero.fields import field_for_order
from trivzero.fields import field_spec
from trivzero.polys import BasePolynomial
from trivzero.polys import frobenius_power_sum
from trivzero.polys import monic_count
from trivzero.polys import parse_poly
from trivzero.polys import partial_power_sum
from trivzero.polys import stratum_blocks
from trivzero.polys import vanishes_by_digits

if TYPE_CHECKING:
    from trivzero.characters import DirichletCharacter
    from trivzero.datatypes import Coefficient

log = logging.getLogger(__name__)

_FQT = re.compile(r'^fqt:(?P<r>\d+)$')


class BaseRing(ABC):
    label: str
    p: int
    r: int
    genus: int
    experimental: bool = False

    @abstractmethod
    def one(self, chi: DirichletCharacter | None = None) -> Coefficient: ...

    @abstractmethod
    def zero(self, chi: DirichletCharacter | None = None) -> Coefficient: ...

    @abstractmethod
    def power_sum(self, d: int, j: int, chi: DirichletCharacter | None = None, blocks: int = 1) -> Coefficient:
        """c_d: sum over degree-d positive elements of chi(a) a^j."""

    @abstractmethod
    def stratum_size(self, d: int) -> int: ...

    @abstractmethod
    def degree(self, c: Coefficient) -> int | float:
        """Degree at infinity; -inf for zero."""

    @abstractmethod
    def render(self, c: Coefficient) -> str: ...

    @abstractmethod
    def parse(self, text: str, chi: DirichletCharacter | None = None) -> Coefficient: ...

    def valuation_infty(self, c: Coefficient) -> int:
        return -int(self.degree(c))

    def vanishes(self, d: int, j: int, chi: DirichletCharacter | None = None) -> bool:
        """True when c_d(j) is known to be zero without computing it."""
        return False

    def check_character(self, chi: DirichletCharacter | None) -> None:
        if chi is not None:
            err_msg = f'characters are only supported over F_r[T], not {self.label}'
            raise SpecMismatch(err_msg, hint='drop --char or use --ring fqt:R')

    def default_d_max(self, j: int, chi: DirichletCharacter | None = None) -> int:
        """ceil(l_r(j) / (r - 1)) + 2g + cushion; deg f replaces 2g for characters."""
        base = math.ceil(digit_sum(j, self.r) / (self.r - 1))
        extra = chi.degree if chi is not None else 2 * self.genus
        return base + extra + DMAX_CUSHION

    def tail_margin(self, chi: DirichletCharacter | None = None) -> int:
        """Number of top strata that must vanish to certify a truncation."""
        return (chi.degree if chi is not None else self.genus) + 2

    def metadata(self) -> dict[str, Any]:
        return {'ring': self.label, 'p': self.p, 'r': self.r, 'genus': self.genus}

    def __repr__(self) -> str:
        return f'{type(self).__name__}({self.label})'


class FqtRing(BaseRing):
    genus = 0

    def __init__(self, r: int) -> None:
        if r not in SUPPORTED_R:
            err_msg = f'r={r} is not supported'
            raise InvalidInput(err_msg, hint=f'use one of {", ".join(map(str, SUPPORTED_R))}')
        self.spec = field_for_order(r)
        self.r = r
        self.p = self.spec.p
        self.label = f'fqt:{r}'

    def _field(self, chi: DirichletCharacter | None) -> Any:
        return chi.value_field if chi is not None else self.spec

    def one(self, chi: DirichletCharacter | None = None) -> BasePolynomial:
        return BasePolynomial.one(self._field(chi))

    def zero(self, chi: DirichletCharacter | None = None) -> BasePolynomial:
        return BasePolynomial.zero(self._field(chi))

    def power_sum(self, d: int, j: int, chi: DirichletCharacter | None = None, blocks: int = 1) -> BasePolynomial:
        if chi is not None:
            self.check_character(chi)
            return character_power_sum(chi, d, j, blocks)
        if blocks == 1:
            return frobenius_power_sum(self.r, d, j)
        total = BasePolynomial.zero(self.spec)
        for start, stop in stratum_blocks(monic_count(self.r, d), blocks):
            total = total + partial_power_sum(self.spec, d, j, start, stop)
        return total

    def check_character(self, chi: DirichletCharacter | None) -> None:
        if chi is not None and chi.base != self.spec:
            err_msg = f'{chi!r} is not a character over F_{self.r}'
            raise SpecMismatch(err_msg)

    def stratum_size(self, d: int) -> int:
        return monic_count(self.r, d)

    def vanishes(self, d: int, j: int, chi: DirichletCharacter | None = None) -> bool:
        return chi is None and vanishes_by_digits(self.r, d, j)

    def degree(self, c: BasePolynomial) -> int | float:
        return -math.inf if c.is_zero() else c.degree

    def render(self, c: BasePolynomial) -> str:
        return str(c)

    def parse(self, text: str, chi: DirichletCharacter | None = None) -> BasePolynomial:
        return parse_poly(text, self._field(chi))

    def metadata(self) -> dict[str, Any]:
        return {**super().metadata(), 'field': self.spec.metadata()}


class CurveRing(BaseRing):
    p = 2
    r = 2

    def __init__(self, spec: CurveSpec) -> None:
        self.spec = spec
        self.genus = spec.genus
        self.label = spec.label
        self.experimental = spec.experimental

    def one(self, chi: DirichletCharacter | None = None) -> CurveElement:
        return self.spec.one

    def zero(self, chi: DirichletCharacter | None = None) -> CurveElement:
        return self.spec.zero

    def power_sum(self, d: int, j: int, chi: DirichletCharacter | None = None, blocks: int = 1) -> CurveElement:
        self.check_character(chi)
        return _cached_curve_power_sum(self.spec, d, j, blocks)

    def stratum_size(self, d: int) -> int:
        return self.spec.stratum_size(d)

    def degree(self, c: CurveElement) -> int | float:
        return element_degree(c)

    def render(self, c: CurveElement) -> str:
        return render_curve_element(c)

    def parse(self, text: str, chi: DirichletCharacter | None = None) -> CurveElement:
        return parse_curve_element(text, self.spec)

    def metadata(self) -> dict[str, Any]:
        return {**super().metadata(), 'curve': self.spec.metadata()}


@functools.lru_cache(maxsize=4096)
def _cached_curve_power_sum(spec: CurveSpec, d: int, j: int, blocks: int) -> CurveElement:
    return curve_power_sum(spec, d, j, blocks)


@functools.lru_cache(maxsize=None)
def ring_from_selector(text: str) -> BaseRing:
    """'fqt:R', 'genus1', 'genus2' or 'curve:h=POLY'."""
    selector = text.strip().replace(' ', '')
    match = _FQT.match(selector)
    if match:
        return FqtRing(int(match['r']))
    if selector in ('genus1', 'genus2'):
        return CurveRing(curve_spec(selector))
    if selector.startswith('curve:h='):
        h = parse_poly(selector.removeprefix('curve:h='), field_spec(2), CURVE_VARIABLE)
        return CurveRing(CurveSpec.from_poly(h))
    err_msg = f'unknown ring {text!r}'
    raise InvalidInput(err_msg, hint='use fqt:R, genus1, genus2 or curve:h=POLY')
