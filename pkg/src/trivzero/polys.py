# polys.py

"""
Arithmetic and degree-indexed enumeration in A = F_q[T].

Single polynomials are galois ``Poly`` objects behind ``BasePolynomial``.
Power sums over a degree stratum are computed on a whole block of monics at
once: the block is a ``(rows, d + 1)`` galois array of ascending coefficient
vectors and n^j is assembled from the Frobenius twists n(T)^{p^i} =
n^{(p^i)}(T^{p^i}), which only touch every p^i-th column.
"""

from __future__ import annotations

import functools
import logging
import re
from typing import TYPE_CHECKING
from typing import Iterator
from typing import Sequence

import galois
import numpy as np

from trivzero._exceptions import DivisionByZero
from trivzero._exceptions import InvalidInput
from trivzero._exceptions import ParseError
from trivzero._exceptions import SpecMismatch
from trivzero.constants import BASE_VARIABLE
from trivzero.fields import FieldElement
from trivzero.fields import FieldSpec
from trivzero.fields import digit_sum
from trivzero.fields import digits
from trivzero.fields import field_for_order

if TYPE_CHECKING:
    from galois import FieldArray

    from trivzero.fields import Embedding

log = logging.getLogger(__name__)

BLOCK_ROWS = 4096


class BasePolynomial:
    """Element of F_q[T]; the zero polynomial has degree -1."""

    __slots__ = ('spec', 'poly', 'var')

    def __init__(self, spec: FieldSpec, poly: galois.Poly, var: str = BASE_VARIABLE) -> None:
        self.spec = spec
        self.poly = poly
        self.var = var

    @classmethod
    def from_array(cls, spec: FieldSpec, coeffs: FieldArray, var: str = BASE_VARIABLE) -> BasePolynomial:
        if len(coeffs) == 0:
            return cls.zero(spec, var)
        return cls(spec, galois.Poly(coeffs, order='asc'), var)

    @classmethod
    def from_ints(cls, spec: FieldSpec, coeffs: Sequence[int], var: str = BASE_VARIABLE) -> BasePolynomial:
        """Ascending integer-encoded coefficients."""
        if not coeffs:
            return cls.zero(spec, var)
        return cls(spec, galois.Poly(spec.gf([c % spec.q for c in coeffs]), order='asc'), var)

    @classmethod
    def from_elements(
        cls, spec: FieldSpec, coeffs: Sequence[FieldElement], var: str = BASE_VARIABLE
    ) -> BasePolynomial:
        return cls.from_ints(spec, [int(c) for c in coeffs], var)

    @classmethod
    def zero(cls, spec: FieldSpec, var: str = BASE_VARIABLE) -> BasePolynomial:
        return cls(spec, galois.Poly.Zero(spec.gf), var)

    @classmethod
    def one(cls, spec: FieldSpec, var: str = BASE_VARIABLE) -> BasePolynomial:
        return cls(spec, galois.Poly.One(spec.gf), var)

    @classmethod
    def constant(cls, c: FieldElement, var: str = BASE_VARIABLE) -> BasePolynomial:
        return cls.from_ints(c.spec, [int(c)], var)

    @classmethod
    def monomial(cls, spec: FieldSpec, k: int, c: int = 1, var: str = BASE_VARIABLE) -> BasePolynomial:
        return cls(spec, galois.Poly.Degrees([k], [c % spec.q], field=spec.gf), var)

    def _wrap(self, poly: galois.Poly) -> BasePolynomial:
        return BasePolynomial(self.spec, poly, self.var)

    def _check(self, other: BasePolynomial) -> None:
        if not isinstance(other, BasePolynomial) or other.spec != self.spec:
            err_msg = f'{other!r} is not a polynomial over F_{self.spec.q}'
            raise SpecMismatch(err_msg)

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else int(self.poly.degree)

    def is_zero(self) -> bool:
        return not np.any(self.poly.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    @property
    def coefficients(self) -> list[FieldElement]:
        """Ascending dense coefficient vector, empty for zero."""
        if self.is_zero():
            return []
        return [FieldElement(self.spec, c) for c in self.poly.coeffs[::-1]]

    def ints(self) -> list[int]:
        if self.is_zero():
            return []
        return [int(c) for c in self.poly.coeffs[::-1]]

    def coefficient(self, k: int) -> FieldElement:
        if k < 0 or k > self.degree:
            return self.spec.zero
        return FieldElement(self.spec, self.poly.coeffs[self.degree - k])

    @property
    def leading(self) -> FieldElement:
        if self.is_zero():
            return self.spec.zero
        return FieldElement(self.spec, self.poly.coeffs[0])

    def is_monic(self) -> bool:
        return not self.is_zero() and int(self.poly.coeffs[0]) == 1

    def __add__(self, other: BasePolynomial) -> BasePolynomial:
        self._check(other)
        return self._wrap(self.poly + other.poly)

    def __sub__(self, other: BasePolynomial) -> BasePolynomial:
        self._check(other)
        return self._wrap(self.poly - other.poly)

    def __neg__(self) -> BasePolynomial:
        return self._wrap(-self.poly)

    def __mul__(self, other: BasePolynomial | FieldElement | int) -> BasePolynomial:
        if isinstance(other, int):
            return self._wrap(self.poly * self.spec.gf(other % self.spec.p))
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                err_msg = f'{other!r} is not a scalar of F_{self.spec.q}'
                raise SpecMismatch(err_msg)
            return self._wrap(self.poly * other.value)
        self._check(other)
        return self._wrap(self.poly * other.poly)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BasePolynomial:
        if e < 0:
            err_msg = f'negative power {e} of a polynomial'
            raise InvalidInput(err_msg)
        return self._wrap(self.poly**e)

    def __divmod__(self, other: BasePolynomial) -> tuple[BasePolynomial, BasePolynomial]:
        self._check(other)
        if other.is_zero():
            err_msg = 'polynomial division by zero'
            raise DivisionByZero(err_msg)
        quo, rem = divmod(self.poly, other.poly)
        return self._wrap(quo), self._wrap(rem)

    def __floordiv__(self, other: BasePolynomial) -> BasePolynomial:
        return divmod(self, other)[0]

    def __mod__(self, other: BasePolynomial) -> BasePolynomial:
        return divmod(self, other)[1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == BasePolynomial.from_ints(self.spec, [other], self.var)
        return isinstance(other, BasePolynomial) and other.spec == self.spec and other.ints() == self.ints()

    def __hash__(self) -> int:
        return hash((self.spec, tuple(self.ints())))

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.spec != self.spec:
            err_msg = f'cannot evaluate over F_{self.spec.q} at {x!r}'
            raise SpecMismatch(err_msg)
        return FieldElement(self.spec, self.poly(x.value))

    def frobenius(self, i: int = 1) -> BasePolynomial:
        """Coefficient-wise p^i-th power."""
        if self.is_zero():
            return self
        return self._wrap(galois.Poly(self.poly.coeffs ** (self.spec.p**i)))

    def spread(self, k: int) -> BasePolynomial:
        """n(T) -> n(T^k)."""
        if self.is_zero() or k == 1:
            return self
        degrees = self.poly.nonzero_degrees * k
        return self._wrap(galois.Poly.Degrees(degrees, self.poly.nonzero_coeffs, field=self.spec.gf))

    def valuation_at(self, v: BasePolynomial) -> int | None:
        """ord_v of self; None for zero."""
        if self.is_zero():
            return None
        e = 0
        rest = self
        while True:
            quo, rem = divmod(rest, v)
            if rem:
                return e
            rest = quo
            e += 1

    def embed(self, embedding: Embedding) -> BasePolynomial:
        if self.is_zero():
            return BasePolynomial.zero(embedding.target, self.var)
        coeffs = embedding.array(self.poly.coeffs[::-1])
        return BasePolynomial.from_array(embedding.target, coeffs, self.var)

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f'BasePolynomial(F_{self.spec.q}, {self})'


def _render_coeff(c: FieldElement) -> str:
    if c.spec.m == 1:
        return str(int(c))
    if int(c) == 1:
        return '1'
    return str(c)


def render_poly(f: BasePolynomial) -> str:
    if f.is_zero():
        return '0'
    terms = []
    for k in range(f.degree, -1, -1):
        c = f.coefficient(k)
        if c.is_zero():
            continue
        coef = _render_coeff(c)
        if k == 0:
            terms.append(coef)
            continue
        mono = f.var if k == 1 else f'{f.var}^{k}'
        if int(c) == 1:
            terms.append(mono)
        elif c.spec.m == 1:
            terms.append(f'{coef}{mono}')
        else:
            terms.append(f'{coef}*{mono}')
    return '+'.join(terms)


def _split_terms(text: str) -> list[str]:
    terms, depth, current = [], 0, []
    for ch in text:
        if ch == '[':
            depth += 1
        elif ch == ']':
            depth -= 1
        if ch == '+' and depth == 0:
            terms.append(''.join(current))
            current = []
            continue
        current.append(ch)
    terms.append(''.join(current))
    return terms


def parse_poly(text: str, spec: FieldSpec, var: str = BASE_VARIABLE) -> BasePolynomial:
    """Inverse of ``render_poly``."""
    cleaned = re.sub(r'\s+', '', text)
    if not cleaned:
        err_msg = 'empty polynomial'
        raise ParseError(err_msg)
    term_re = re.compile(
        rf'^(?P<coef>\d+|\[[\d,]*\])?\*?(?:(?P<var>{re.escape(var)})(?:\^(?P<exp>\d+))?)?$',
    )
    coeffs: dict[int, FieldElement] = {}
    for term in _split_terms(cleaned):
        match = term_re.match(term)
        if not term or not match or (match['coef'] is None and match['var'] is None):
            err_msg = f'cannot parse term {term!r} of {text!r}'
            raise ParseError(err_msg)
        raw = match['coef']
        if raw is None:
            c = spec.one
        elif raw.startswith('['):
            coords = [int(x) for x in raw[1:-1].split(',') if x]
            try:
                c = spec.from_coordinates(coords)
            except InvalidInput as err:
                raise ParseError(str(err)) from err
        else:
            value = int(raw)
            if spec.m > 1 and value > 1:
                err_msg = f'extension-field coefficient {raw!r} must be written as [c0,...]'
                raise ParseError(err_msg)
            c = spec(value % spec.p)
        k = 0 if match['var'] is None else int(match['exp'] or 1)
        coeffs[k] = coeffs.get(k, spec.zero) + c
    top = max(coeffs)
    dense = [int(coeffs.get(k, spec.zero)) for k in range(top + 1)]
    while dense and dense[-1] == 0:
        dense.pop()
    return BasePolynomial.from_ints(spec, dense, var)


def is_irreducible(f: BasePolynomial) -> bool:
    if f.is_zero():
        err_msg = 'irreducibility of the zero polynomial'
        raise InvalidInput(err_msg)
    if f.degree == 0:
        return False
    return bool(f.poly.is_irreducible())


def monic_count(q: int, d: int) -> int:
    return q**d


def stratum_blocks(count: int, blocks: int) -> list[tuple[int, int]]:
    """Split range(count) into ``blocks`` contiguous slices (some may be empty)."""
    if blocks < 1:
        err_msg = f'block count {blocks} must be positive'
        raise InvalidInput(err_msg)
    step, extra = divmod(count, blocks)
    out, start = [], 0
    for b in range(blocks):
        stop = start + step + (1 if b < extra else 0)
        out.append((start, stop))
        start = stop
    return out


def monic_block(spec: FieldSpec, d: int, start: int, stop: int) -> FieldArray:
    """Rows start..stop-1 of the degree-d monics; row index digits base q are a_0, a_1, ..."""
    idx = np.arange(start, stop, dtype=np.int64)
    cols = []
    for _ in range(d):
        idx, a = np.divmod(idx, spec.q)
        cols.append(a)
    cols.append(np.ones(stop - start, dtype=np.int64))
    return spec.gf(np.stack(cols, axis=1))


def monic_enumerate(q: int, d: int, var: str = BASE_VARIABLE) -> Iterator[BasePolynomial]:
    if d < 0:
        err_msg = f'degree {d} must be non-negative'
        raise InvalidInput(err_msg)
    spec = field_for_order(q)
    for start, stop in stratum_blocks(monic_count(q, d), max(1, monic_count(q, d) // BLOCK_ROWS)):
        for row in monic_block(spec, d, start, stop):
            yield BasePolynomial.from_array(spec, row, var)


def _mul_strided(acc: FieldArray, factor: FieldArray, stride: int, gf: type[FieldArray]) -> FieldArray:
    """Row-wise product of dense ``acc`` with sum_k factor[:, k] T^{k * stride}."""
    rows, width = acc.shape
    terms = factor.shape[1]
    out = gf.Zeros((rows, width + (terms - 1) * stride))
    for k in range(terms):
        col = factor[:, k : k + 1]
        if not np.any(col):
            continue
        lo = k * stride
        out[:, lo : lo + width] = out[:, lo : lo + width] + col * acc
    return out


def block_powers(block: FieldArray, j: int, spec: FieldSpec) -> FieldArray:
    """Row-wise n^j via n^j = prod_i (n^{(p^i)}(T^{p^i}))^{j_i}."""
    acc = spec.gf.Ones((block.shape[0], 1))
    for i, ji in enumerate(digits(j, spec.p)):
        if not ji:
            continue
        stride = spec.p**i
        twisted = block**stride
        for _ in range(ji):
            acc = _mul_strided(acc, twisted, stride, spec.gf)
    return acc


def block_power_sum(block: FieldArray, j: int, spec: FieldSpec) -> FieldArray:
    if block.shape[0] == 0:
        return spec.gf.Zeros(1)
    return np.add.reduce(block_powers(block, j, spec), axis=0)


def add_dense(total: FieldArray | None, part: FieldArray) -> FieldArray:
    if total is None:
        return part
    if len(part) > len(total):
        total, part = part, total
    total = total.copy()
    total[: len(part)] = total[: len(part)] + part
    return total


def partial_power_sum(spec: FieldSpec, d: int, j: int, start: int, stop: int) -> BasePolynomial:
    total = None
    for lo in range(start, stop, BLOCK_ROWS):
        block = monic_block(spec, d, lo, min(stop, lo + BLOCK_ROWS))
        total = add_dense(total, block_power_sum(block, j, spec))
    if total is None:
        return BasePolynomial.zero(spec)
    return BasePolynomial.from_array(spec, total)


def vanishes_by_digits(r: int, d: int, j: int) -> bool:
    """Carlitz-type bound: S_d(j) = 0 once d(r - 1) > l_r(j)."""
    return d >= 1 and d * (r - 1) > digit_sum(j, r)


@functools.lru_cache(maxsize=4096)
def frobenius_power_sum(q: int, d: int, j: int) -> BasePolynomial:
    """S_d(j) = sum of n^j over monic n of degree d in F_q[T]."""
    if d < 0 or j < 0:
        err_msg = f'power sum needs d >= 0 and j >= 0, got d={d} j={j}'
        raise InvalidInput(err_msg)
    spec = field_for_order(q)
    result = partial_power_sum(spec, d, j, 0, monic_count(q, d))
    log.debug(f'S_{d}({j}) over F_{q} has degree {result.degree}')
    return result
