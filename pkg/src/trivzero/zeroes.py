# zeroes.py

"""
Multiplicities, trivial-zero orders and Newton polygons of polynomials in u.

A polynomial in u is an ascending list of ring elements. Orders of vanishing
come from Hasse derivatives D^(i) P = sum C(d, i) c_d u^(d - i), which detect
multiplicities in every characteristic.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import TYPE_CHECKING
from typing import Any
from typing import Callable
from typing import NamedTuple

from trivzero import format
from trivzero._exceptions import InvalidInput
from trivzero._exceptions import NotATrivialZero
from trivzero.fields import FieldElement
from trivzero.fields import digit_sum
from trivzero.fields import embed_field
from trivzero.fields import field_spec
from trivzero.fields import lucas_binomial
from trivzero.models.reports import TrivialZeroReport
from trivzero.polys import BasePolynomial
from trivzero.special import SpecialPolynomial
from trivzero.special import special_polynomial

if TYPE_CHECKING:
    from trivzero.datatypes import UPolynomial
    from trivzero.rings import BaseRing

log = logging.getLogger(__name__)


class Segment(NamedTuple):
    slope: Fraction
    length: int


class SimplicityCheck(NamedTuple):
    holds: bool
    violations: list[Segment]


def _strip(coeffs: list[Any]) -> list[Any]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _char_of(c: Any) -> int:
    # curve elements carry no p and live in characteristic 2
    return getattr(c.spec, 'p', 2)


def hasse_derivative(coeffs: UPolynomial, i: int) -> list[Any]:
    if i < 0:
        err_msg = f'Hasse derivative order {i} must be non-negative'
        raise InvalidInput(err_msg)
    if not coeffs:
        return []
    p = _char_of(coeffs[0])
    return _strip([c * lucas_binomial(d, i, p) for d, c in enumerate(coeffs) if d >= i])


def evaluate(coeffs: UPolynomial, beta: Any = None) -> Any:
    """P(beta) by Horner; beta=None means u = 1."""
    if beta is None:
        total = coeffs[0]
        for c in coeffs[1:]:
            total = total + c
        return total
    total = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        total = total * beta + c
    return total


def multiplicity_at_point(coeffs: UPolynomial, beta: Any = None) -> int:
    """Smallest i with D^(i) P(beta) != 0."""
    coeffs = _strip(list(coeffs))
    if not coeffs:
        err_msg = 'multiplicity of a root of the zero polynomial'
        raise InvalidInput(err_msg)
    p = _char_of(coeffs[0])
    for i in range(len(coeffs)):
        derivative = [c * lucas_binomial(d, i, p) for d, c in enumerate(coeffs) if d >= i]
        if not evaluate(derivative, beta).is_zero():
            return i
    err_msg = 'leading coefficient vanished while taking Hasse derivatives'
    raise InvalidInput(err_msg)


class NewtonPolygon:
    """Lower convex hull of (d, val(c_d)) over the nonzero coefficients."""

    def __init__(self, points: list[tuple[int, int]]) -> None:
        self.points = sorted(points)
        self.vertices = _lower_hull(self.points)
        self.segments = [
            Segment(Fraction(y2 - y1, x2 - x1), x2 - x1)
            for (x1, y1), (x2, y2) in zip(self.vertices, self.vertices[1:])
        ]

    def __repr__(self) -> str:
        return f'NewtonPolygon({format.slopes(self.segments)})'

    def slopes_text(self) -> str:
        return format.slopes(self.segments)

    def length_of_slope(self, slope: Fraction | int) -> int:
        return sum(s.length for s in self.segments if s.slope == slope)


def _cross(o: tuple[int, int], a: tuple[int, int], b: tuple[int, int]) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _lower_hull(points: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Monotone chain, collinear interior points dropped."""
    hull: list[tuple[int, int]] = []
    for pt in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def newton_polygon(coeffs: UPolynomial, valuation: Callable[[Any], int]) -> NewtonPolygon:
    points = [(d, valuation(c)) for d, c in enumerate(coeffs) if not c.is_zero()]
    if not points:
        err_msg = 'Newton polygon of the zero polynomial'
        raise InvalidInput(err_msg)
    return NewtonPolygon(points)


def newton_polygon_at_infinity(z: SpecialPolynomial) -> NewtonPolygon:
    return newton_polygon(z.coeffs, z.ring.valuation_infty)


def rh_simplicity_check(polygon: NewtonPolygon) -> SimplicityCheck:
    violations = [s for s in polygon.segments if s.length > 1]
    return SimplicityCheck(holds=not violations, violations=violations)


def trivial_zero_report(
    ring: BaseRing,
    j: int,
    d_max: int | None = None,
    special: SpecialPolynomial | None = None,
) -> TrivialZeroReport:
    """Orders of the trivial zero at -j of the zeta function of ``ring``."""
    if j < 1:
        err_msg = f'j={j}: z(u, 0) = 1 has no trivial zero'
        raise NotATrivialZero(err_msg)
    if j % (ring.r - 1):
        err_msg = f'j={j} is not divisible by r - 1 = {ring.r - 1}'
        raise NotATrivialZero(err_msg)
    z = special if special is not None else special_polynomial(ring, None, j, d_max)
    v1 = multiplicity_at_point(z.coeffs)
    report = TrivialZeroReport(
        ring=ring.label,
        j=j,
        v0=1,
        v1=v1,
        l_p=digit_sum(j, ring.p),
        l_r=digit_sum(j, ring.r),
        np_slopes=newton_polygon_at_infinity(z).slopes_text(),
    )
    log.debug(f'{ring.label} j={j}: v1={v1}')
    return report


def unit_root_multiplicities(coeffs: UPolynomial, degree: int) -> dict[FieldElement, int]:
    """Multiplicity of every beta in F_{q^L}^* that is a root of P (L = ``degree``)."""
    coeffs = _strip(list(coeffs))
    if not coeffs:
        err_msg = 'unit roots of the zero polynomial'
        raise InvalidInput(err_msg)
    if degree < 1:
        err_msg = f'extension degree L={degree} must be positive'
        raise InvalidInput(err_msg)
    first = coeffs[0]
    if not isinstance(first, BasePolynomial):
        if degree != 1:
            err_msg = 'curve coefficients only support L = 1'
            raise InvalidInput(err_msg)
        m = multiplicity_at_point(coeffs)
        return {field_spec(2)(1): m} if m else {}

    target = field_spec(first.spec.p, first.spec.m * degree)
    embedding = embed_field(first.spec, target)
    lifted = [c.embed(embedding) for c in coeffs]
    found = {}
    for beta in target.units():
        m = multiplicity_at_point(lifted, BasePolynomial.constant(beta, first.var))
        if m:
            found[beta] = m
    return found
