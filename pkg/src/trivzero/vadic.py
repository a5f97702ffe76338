# vadic.py

"""
Interpolation at a finite place v of F_r[T].

Q(u) = (1 - chi(v) v^j u^{d_v}) z_L(chi, u, -j) is the special polynomial
with the Euler factor at v removed, i.e. the sum of chi(n) n^j u^{deg n}
over monic n prime to v. Everything here is stated through exact ord_v
valuations and congruences modulo powers of v.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING
from typing import NamedTuple

from trivzero._exceptions import InvalidInput
from trivzero._exceptions import InvalidPair
from trivzero._exceptions import NotATrivialZero
from trivzero._exceptions import NotIrreducible
from trivzero._exceptions import RamifiedPlace
from trivzero._exceptions import SpecMismatch
from trivzero._exceptions import UnsupportedPlaceDegree
from trivzero.characters import character_value
from trivzero.fields import digit_sum
from trivzero.models.reports import TrivialZeroReport
from trivzero.models.series import VadicRecord
from trivzero.polys import BasePolynomial
from trivzero.polys import is_irreducible
from trivzero.rings import FqtRing
from trivzero.special import SpecialPolynomial
from trivzero.special import special_polynomial
from trivzero.zeroes import NewtonPolygon
from trivzero.zeroes import multiplicity_at_point
from trivzero.zeroes import newton_polygon

if TYPE_CHECKING:
    from trivzero.characters import DirichletCharacter
    from trivzero.rings import BaseRing

log = logging.getLogger(__name__)


@dataclass
class VadicSpecial:
    v: BasePolynomial
    j: int
    coeffs: list[BasePolynomial]
    special: SpecialPolynomial

    @property
    def d_v(self) -> int:
        return self.v.degree

    @property
    def place(self) -> str:
        return f'v={self.v}'

    def record(self) -> VadicRecord:
        return VadicRecord(
            ring=self.special.ring.label,
            char=self.special.char,
            v=str(self.v),
            d_v=self.d_v,
            j=self.j,
            coeffs=[str(c) for c in self.coeffs],
            special=self.special.record(),
        )


class Continuity(NamedTuple):
    holds: bool
    witness: int | None


def _check_place(ring: BaseRing, v: BasePolynomial) -> FqtRing:
    if not isinstance(ring, FqtRing):
        err_msg = f'v-adic interpolation is available over F_r[T], not {ring.label}'
        raise SpecMismatch(err_msg)
    if v.spec != ring.spec:
        err_msg = f'place {v} is not a polynomial over F_{ring.r}'
        raise SpecMismatch(err_msg)
    if v.is_zero() or not is_irreducible(v):
        err_msg = f'place {v} is not irreducible over F_{ring.r}'
        raise NotIrreducible(err_msg)
    if not v.is_monic():
        err_msg = f'place {v} must be monic'
        raise InvalidInput(err_msg, hint='normalize the leading coefficient to 1')
    return ring


def vadic_special_polynomial(
    ring: BaseRing,
    chi: DirichletCharacter | None,
    v: BasePolynomial,
    j: int,
    d_max: int | None = None,
) -> VadicSpecial:
    fqt = _check_place(ring, v)
    z = special_polynomial(fqt, chi, j, d_max)
    if chi is None:
        factor = v**j
    else:
        if (chi.modulus % v).is_zero():
            err_msg = f'place {v} divides the character modulus {chi.modulus}'
            raise RamifiedPlace(err_msg)
        value = character_value(chi, v)
        factor = (v**j).embed(chi.embedding) * value

    d_v = v.degree
    coeffs = [*z.coeffs, *(fqt.zero(chi) for _ in range(d_v))]
    for d, c in enumerate(z.coeffs):
        coeffs[d + d_v] = coeffs[d + d_v] - factor * c
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return VadicSpecial(v=v, j=j, coeffs=coeffs, special=z)


def vadic_trivial_zero_order(ring: BaseRing, v: BasePolynomial, j: int, d_max: int | None = None) -> TrivialZeroReport:
    """Order of the root u = v^-j of Q, trivial character, deg v = 1."""
    fqt = _check_place(ring, v)
    if v.degree != 1:
        err_msg = f'place {v} has degree {v.degree}'
        raise UnsupportedPlaceDegree(err_msg)
    if j < 1:
        err_msg = f'j={j} is not a v-adic trivial zero'
        raise NotATrivialZero(err_msg)
    q = vadic_special_polynomial(fqt, None, v, j, d_max)
    top = len(q.coeffs) - 1
    # u = v^-j w, cleared of denominators
    scaled = [c * v ** (j * (top - d)) for d, c in enumerate(q.coeffs)]
    v1 = multiplicity_at_point(scaled)
    return TrivialZeroReport(
        ring=fqt.label,
        j=j,
        v0=1,
        v1=v1,
        l_p=digit_sum(j, fqt.p),
        l_r=digit_sum(j, fqt.r),
        np_slopes=vadic_newton_polygon(q).slopes_text(),
        place=q.place,
    )


def vadic_newton_polygon(q: VadicSpecial) -> NewtonPolygon:
    """Polygon of (d, ord_v c_d); the Euler-factor roots give slope j / d_v."""
    v = q.v if q.special.chi is None else q.v.embed(q.special.chi.embedding)
    return newton_polygon(q.coeffs, lambda c: c.valuation_at(v))


def vadic_continuity_check(
    ring: BaseRing,
    chi: DirichletCharacter | None,
    v: BasePolynomial,
    j1: int,
    j2: int,
    n: int,
) -> Continuity:
    """Q(j1) = Q(j2) mod v^(N+1) whenever j1 = j2 mod (r^{d_v} - 1) p^N."""
    fqt = _check_place(ring, v)
    if j1 < 0 or j2 < 0 or n < 0:
        err_msg = f'continuity needs j1, j2, N >= 0, got {j1}, {j2}, {n}'
        raise InvalidPair(err_msg)
    period = (fqt.r**v.degree - 1) * fqt.p**n
    if (j1 - j2) % period:
        err_msg = f'{j1} and {j2} differ modulo {period}'
        raise InvalidPair(err_msg)
    q1 = vadic_special_polynomial(fqt, chi, v, j1)
    q2 = vadic_special_polynomial(fqt, chi, v, j2)
    modulus = v ** (n + 1)
    if chi is not None:
        modulus = modulus.embed(chi.embedding)
    zero = fqt.zero(chi)
    for d in range(max(len(q1.coeffs), len(q2.coeffs))):
        a = q1.coeffs[d] if d < len(q1.coeffs) else zero
        b = q2.coeffs[d] if d < len(q2.coeffs) else zero
        if not ((a - b) % modulus).is_zero():
            log.warning(f'continuity fails at u^{d} for j={j1},{j2} N={n}')
            return Continuity(holds=False, witness=d)
    return Continuity(holds=True, witness=None)
