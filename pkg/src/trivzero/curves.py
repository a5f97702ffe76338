# curves.py

"""
The Artin-Schreier rings A = F_2[T1, T2] / (T1^2 + T1 + h(T2)), deg h = w odd.

Elements are kept in the F_2[T2]-basis {1, T1} with both parts bit-packed
into Python ints (bit k <-> T2^k). The place at infinity has v(T2) = -2 and
v(T1) = -w, so deg(g + h T1) = max(2 deg g, w + 2 deg h); the two candidates
have opposite parity and never tie.
"""

from __future__ import annotations

import logging
import math
from typing import Any
from typing import Iterator

from trivzero._exceptions import InvalidInput
from trivzero._exceptions import ParseError
from trivzero._exceptions import SpecMismatch
from trivzero.constants import CURVE_VARIABLE
from trivzero.constants import GENUS1_RELATION
from trivzero.constants import GENUS2_RELATION
from trivzero.fields import digits
from trivzero.fields import field_spec
from trivzero.polys import BasePolynomial
from trivzero.polys import parse_poly
from trivzero.polys import stratum_blocks

log = logging.getLogger(__name__)

NEG_INF = -math.inf

# byte -> the same bits spread to even positions (squaring in F_2[T2])
_SPREAD = [sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256)]


def clmul(a: int, b: int) -> int:
    """Carry-less product of bit-packed F_2 polynomials."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    r = 0
    while a:
        low = a & -a
        r ^= b << (low.bit_length() - 1)
        a ^= low
    return r


def clsquare(a: int) -> int:
    r, shift = 0, 0
    while a:
        r |= _SPREAD[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return r


def _bits_to_poly(bits: int) -> BasePolynomial:
    coeffs = [(bits >> k) & 1 for k in range(bits.bit_length())]
    return BasePolynomial.from_ints(field_spec(2), coeffs, CURVE_VARIABLE)


def _poly_to_bits(f: BasePolynomial) -> int:
    if f.spec.q != 2:
        err_msg = f'{f} is not a polynomial over F_2'
        raise SpecMismatch(err_msg)
    return sum(c << k for k, c in enumerate(f.ints()))


class CurveSpec:
    __slots__ = ('relation', 'weight', 'genus', 'label', 'experimental')

    def __init__(self, relation: int, label: str | None = None) -> None:
        w = relation.bit_length() - 1
        if w < 1 or w % 2 == 0:
            err_msg = f'relation {_bits_to_poly(relation)} must have odd degree'
            raise InvalidInput(err_msg, hint='use h(T2) of odd degree, e.g. T2^3+T2+1')
        self.relation = relation
        self.weight = w
        self.genus = (w - 1) // 2
        known = {
            _poly_to_bits(parse_poly(GENUS1_RELATION, field_spec(2), CURVE_VARIABLE)): 'genus1',
            _poly_to_bits(parse_poly(GENUS2_RELATION, field_spec(2), CURVE_VARIABLE)): 'genus2',
        }
        self.experimental = relation not in known
        self.label = label or known.get(relation) or f'curve:h={_bits_to_poly(relation)}'
        if self.experimental:
            log.warning(f'{self.label} is experimental: trivial-zero semantics are certified only for genus1/genus2')

    @classmethod
    def from_poly(cls, h: BasePolynomial, label: str | None = None) -> CurveSpec:
        return cls(_poly_to_bits(h), label)

    @property
    def relation_poly(self) -> BasePolynomial:
        return _bits_to_poly(self.relation)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CurveSpec) and other.relation == self.relation

    def __hash__(self) -> int:
        return hash(('curve', self.relation))

    def __repr__(self) -> str:
        return f'CurveSpec({self.label}, w={self.weight}, g={self.genus})'

    def metadata(self) -> dict[str, Any]:
        return {
            'p': 2,
            'w': self.weight,
            'relation': str(self.relation_poly),
            'experimental': self.experimental,
        }

    def element(self, g: int = 0, h: int = 0) -> CurveElement:
        return CurveElement(self, g, h)

    @property
    def zero(self) -> CurveElement:
        return CurveElement(self, 0, 0)

    @property
    def one(self) -> CurveElement:
        return CurveElement(self, 1, 0)

    def monomial(self, a: int, b: int) -> CurveElement:
        """T2^a T1^b with b in {0, 1}."""
        return CurveElement(self, 0, 1 << a) if b else CurveElement(self, 1 << a, 0)

    def monomials_below(self, d: int) -> list[tuple[int, int]]:
        """(a, b) with 2a + wb < d, ordered by degree."""
        out = [(a, 0) for a in range((d + 1) // 2)]
        if d > self.weight:
            out += [(a, 1) for a in range((d - self.weight + 1) // 2)]
        return sorted(out, key=lambda ab: 2 * ab[0] + self.weight * ab[1])

    def top_monomial(self, d: int) -> tuple[int, int] | None:
        if d % 2 == 0:
            return (d // 2, 0)
        if d >= self.weight:
            return ((d - self.weight) // 2, 1)
        return None

    def gap_degrees(self, up_to: int) -> list[int]:
        return [d for d in range(up_to + 1) if self.top_monomial(d) is None]

    def stratum_size(self, d: int) -> int:
        if d < 0 or self.top_monomial(d) is None:
            return 0
        return 2 ** len(self.monomials_below(d))


class CurveElement:
    __slots__ = ('spec', 'g', 'h')

    def __init__(self, spec: CurveSpec, g: int, h: int) -> None:
        self.spec = spec
        self.g = g
        self.h = h

    @property
    def g_part(self) -> BasePolynomial:
        return _bits_to_poly(self.g)

    @property
    def h_part(self) -> BasePolynomial:
        return _bits_to_poly(self.h)

    def _check(self, other: CurveElement) -> None:
        if not isinstance(other, CurveElement) or other.spec != self.spec:
            err_msg = f'{other!r} is not an element of {self.spec.label}'
            raise SpecMismatch(err_msg)

    def is_zero(self) -> bool:
        return not (self.g or self.h)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: CurveElement) -> CurveElement:
        self._check(other)
        return CurveElement(self.spec, self.g ^ other.g, self.h ^ other.h)

    __sub__ = __add__

    def __neg__(self) -> CurveElement:
        return self

    def __mul__(self, other: CurveElement | int) -> CurveElement:
        if isinstance(other, int):
            return self if other % 2 else self.spec.zero
        self._check(other)
        g, h = _ring_mul(self.g, self.h, other.g, other.h, self.spec.relation)
        return CurveElement(self.spec, g, h)

    __rmul__ = __mul__

    def square(self) -> CurveElement:
        g, h = _ring_square(self.g, self.h, self.spec.relation)
        return CurveElement(self.spec, g, h)

    def __pow__(self, j: int) -> CurveElement:
        if j < 0:
            err_msg = f'negative power {j} in {self.spec.label}'
            raise InvalidInput(err_msg)
        g, h = _ring_pow(self.g, self.h, j, self.spec.relation)
        return CurveElement(self.spec, g, h)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == CurveElement(self.spec, other % 2, 0)
        return isinstance(other, CurveElement) and other.spec == self.spec and (other.g, other.h) == (self.g, self.h)

    def __hash__(self) -> int:
        return hash((self.spec, self.g, self.h))

    def __str__(self) -> str:
        return render_curve_element(self)

    def __repr__(self) -> str:
        return f'CurveElement({self.spec.label}, {self})'


def _deg(bits: int) -> int:
    return bits.bit_length() - 1


def _ring_mul(g1: int, h1: int, g2: int, h2: int, rel: int) -> tuple[int, int]:
    gg = clmul(g1, g2)
    hh = clmul(h1, h2)
    cross = clmul(g1 ^ h1, g2 ^ h2) ^ gg ^ hh
    return gg ^ clmul(hh, rel), cross ^ hh


def _ring_square(g: int, h: int, rel: int) -> tuple[int, int]:
    hh = clsquare(h)
    return clsquare(g) ^ clmul(hh, rel), hh


def _ring_pow(g: int, h: int, j: int, rel: int) -> tuple[int, int]:
    acc = (1, 0)
    for bit in digits(j, 2):
        if bit:
            acc = _ring_mul(acc[0], acc[1], g, h, rel)
        g, h = _ring_square(g, h, rel)
    return acc


def curve_multiply(a: CurveElement, b: CurveElement) -> CurveElement:
    return a * b


def element_degree(a: CurveElement) -> int | float:
    """max(2 deg g, w + 2 deg h); -inf for zero."""
    if a.is_zero():
        return NEG_INF
    candidates = []
    if a.g:
        candidates.append(2 * _deg(a.g))
    if a.h:
        candidates.append(a.spec.weight + 2 * _deg(a.h))
    return max(candidates)


def _stratum_parts(spec: CurveSpec, d: int) -> tuple[CurveElement, list[CurveElement]] | None:
    top = spec.top_monomial(d)
    if d < 0 or top is None:
        return None
    basis = [spec.monomial(a, b) for a, b in spec.monomials_below(d)]
    return spec.monomial(*top), basis


def enumerate_by_degree(spec: CurveSpec, d: int) -> Iterator[CurveElement]:
    """Degree-d elements, the lowest-degree basis monomial toggling fastest."""
    parts = _stratum_parts(spec, d)
    if parts is None:
        return
    top, basis = parts
    for index in range(2 ** len(basis)):
        g, h = top.g, top.h
        for k, e in enumerate(basis):
            if (index >> k) & 1:
                g ^= e.g
                h ^= e.h
        yield CurveElement(spec, g, h)


def partial_curve_power_sum(spec: CurveSpec, d: int, j: int, start: int, stop: int) -> CurveElement:
    """
    Sum of a^j over the Gray-code positions start..stop-1 of the degree-d stratum.

    a -> a^{2^i} is additive in characteristic 2, so the twists of every
    element are kept up to date with one XOR per twist as the Gray code
    flips a single basis monomial.
    """
    parts = _stratum_parts(spec, d)
    if parts is None or start >= stop:
        return spec.zero
    top, basis = parts
    rel = spec.relation
    bits = [i for i, b in enumerate(digits(j, 2)) if b]
    if not bits:
        return spec.one if (stop - start) % 2 else spec.zero

    def twists(x: CurveElement) -> list[tuple[int, int]]:
        out, g, h = [], x.g, x.h
        for i in range(bits[-1] + 1):
            if i in bits:
                out.append((g, h))
            g, h = _ring_square(g, h, rel)
        return out

    basis_twists = [twists(e) for e in basis]
    first = start ^ (start >> 1)
    x = top
    for k, e in enumerate(basis):
        if (first >> k) & 1:
            x = x + e
    current = twists(x)
    total_g = total_h = 0
    for t in range(start, stop):
        if t > start:
            k = (t & -t).bit_length() - 1
            current = [(cg ^ bg, ch ^ bh) for (cg, ch), (bg, bh) in zip(current, basis_twists[k])]
        g, h = current[0]
        for cg, ch in current[1:]:
            g, h = _ring_mul(g, h, cg, ch, rel)
        total_g ^= g
        total_h ^= h
    return CurveElement(spec, total_g, total_h)


def curve_power_sum(spec: CurveSpec, d: int, j: int, blocks: int = 1) -> CurveElement:
    """Sum of a^j over the elements of degree d."""
    if d < 0 or j < 0:
        err_msg = f'curve power sum needs d >= 0 and j >= 0, got d={d} j={j}'
        raise InvalidInput(err_msg)
    total = spec.zero
    for start, stop in stratum_blocks(spec.stratum_size(d), blocks):
        total = total + partial_curve_power_sum(spec, d, j, start, stop)
    return total


def render_curve_element(a: CurveElement) -> str:
    return f'{a.g_part};{a.h_part}'


def parse_curve_element(text: str, spec: CurveSpec) -> CurveElement:
    parts = text.split(';')
    if len(parts) != 2:
        err_msg = f'curve element {text!r} must look like "g;h"'
        raise ParseError(err_msg)
    polys = [parse_poly(part.strip().strip('()'), field_spec(2), CURVE_VARIABLE) for part in parts]
    return CurveElement(spec, _poly_to_bits(polys[0]), _poly_to_bits(polys[1]))


def curve_spec(label: str) -> CurveSpec:
    relations = {'genus1': GENUS1_RELATION, 'genus2': GENUS2_RELATION}
    if label not in relations:
        err_msg = f'unknown curve {label!r}'
        raise InvalidInput(err_msg, hint='use genus1, genus2 or curve:h=POLY')
    return CurveSpec.from_poly(parse_poly(relations[label], field_spec(2), CURVE_VARIABLE), label)
