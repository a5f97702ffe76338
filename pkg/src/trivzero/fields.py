# fields.py

"""
Exact arithmetic in F_p and F_{p^m}.

Fields are galois ``FieldArray`` classes built over the Conway polynomial of
``(p, m)``; ``FieldSpec`` pins the modulus and a multiplicative generator so
that every run is reproducible, and ``FieldElement`` is the scalar wrapper the
rest of the package passes around. Strata computations bypass the wrapper and
work on whole galois arrays.
"""

from __future__ import annotations

import functools
import logging
import math
from typing import TYPE_CHECKING
from typing import Any
from typing import Iterator
from typing import Literal

import galois
import numpy as np

from trivzero._exceptions import DivisionByZero
from trivzero._exceptions import InvalidInput
from trivzero._exceptions import SpecMismatch

if TYPE_CHECKING:
    from galois import FieldArray

log = logging.getLogger(__name__)

FieldOp = Literal['add', 'sub', 'mul', 'inv', 'pow', 'frobenius']


def digits(j: int, p: int) -> list[int]:
    """Base-p digits of j, least significant first; [] for j = 0."""
    if j < 0:
        err_msg = f'digits of negative integer {j}'
        raise InvalidInput(err_msg)
    out: list[int] = []
    while j:
        j, d = divmod(j, p)
        out.append(d)
    return out


def digit_sum(j: int, p: int) -> int:
    return sum(digits(j, p))


def lucas_binomial(d: int, i: int, p: int) -> int:
    """C(d, i) mod p as the product of digit-wise binomials."""
    if i < 0 or d < 0 or i > d:
        return 0
    result = 1
    while i:
        d, dd = divmod(d, p)
        i, di = divmod(i, p)
        if di > dd:
            return 0
        result = result * math.comb(dd, di) % p
    return result


class FieldSpec:
    """F_q with q = p^m, modulus and generator fixed at construction."""

    __slots__ = ('p', 'm', 'gf', 'modulus', 'generator')

    def __init__(self, p: int, m: int = 1) -> None:
        if not galois.is_prime(p):
            err_msg = f'characteristic {p} is not prime'
            raise InvalidInput(err_msg)
        if m < 1:
            err_msg = f'extension degree {m} must be positive'
            raise InvalidInput(err_msg)
        self.p = p
        self.m = m
        self.gf = galois.GF(p**m)
        self.modulus: galois.Poly | None = None
        if m > 1:
            self.modulus = self.gf.irreducible_poly
            if not self.modulus.is_irreducible():
                err_msg = f'modulus {self.modulus} of F_{p}^{m} is reducible'
                raise InvalidInput(err_msg)
        self.generator = self.gf.primitive_element
        if int(self.generator.multiplicative_order()) != self.q - 1:
            err_msg = f'generator {self.generator} of F_{self.q} is not primitive'
            raise InvalidInput(err_msg)
        log.debug(f'built F_{self.q} modulus={self.modulus_coeffs()} generator={int(self.generator)}')

    @property
    def q(self) -> int:
        return self.p**self.m

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self) -> int:
        return hash((self.p, self.m))

    def __repr__(self) -> str:
        return f'FieldSpec(p={self.p}, m={self.m})'

    def modulus_coeffs(self) -> list[int] | None:
        """Ascending coefficients of the modulus, or None for prime fields."""
        if self.modulus is None:
            return None
        return [int(c) for c in self.modulus.coeffs[::-1]]

    def metadata(self) -> dict[str, Any]:
        return {'p': self.p, 'm': self.m, 'modulus': self.modulus_coeffs()}

    def __call__(self, value: int | Any) -> FieldElement:
        return FieldElement(self, self.gf(int(value)))

    def from_coordinates(self, coords: list[int]) -> FieldElement:
        if len(coords) > self.m or any(not 0 <= c < self.p for c in coords):
            err_msg = f'{coords} is not a coordinate vector of F_{self.q}'
            raise InvalidInput(err_msg)
        return self(sum(c * self.p**i for i, c in enumerate(coords)))

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    def elements(self) -> Iterator[FieldElement]:
        for v in range(self.q):
            yield self(v)

    def units(self) -> Iterator[FieldElement]:
        for v in range(1, self.q):
            yield self(v)


@functools.lru_cache(maxsize=None)
def field_spec(p: int, m: int = 1) -> FieldSpec:
    return FieldSpec(p, m)


def field_for_order(q: int) -> FieldSpec:
    for p in range(2, q + 1):
        if q % p == 0:
            m = round(math.log(q, p))
            if p**m != q:
                break
            return field_spec(p, m)
    err_msg = f'{q} is not a prime power'
    raise InvalidInput(err_msg)


class FieldElement:
    """Element of F_q; canonical integer encoding sum(c_i p^i) of the coordinates."""

    __slots__ = ('spec', 'value')

    def __init__(self, spec: FieldSpec, value: FieldArray) -> None:
        self.spec = spec
        self.value = value

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            err_msg = f'{other!r} is not an element of F_{self.spec.q}'
            raise SpecMismatch(err_msg)

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.spec, self.value + other.value)

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.spec, self.value - other.value)

    def __neg__(self) -> FieldElement:
        return FieldElement(self.spec, -self.value)

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        if isinstance(other, int):
            return FieldElement(self.spec, self.value * (other % self.spec.p))
        self._check(other)
        return FieldElement(self.spec, self.value * other.value)

    __rmul__ = __mul__

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * other.inverse()

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.spec, self.value**e)

    def inverse(self) -> FieldElement:
        if self.is_zero():
            err_msg = f'inverse of zero in F_{self.spec.q}'
            raise DivisionByZero(err_msg)
        return FieldElement(self.spec, self.value**-1)

    def frobenius(self, i: int = 1) -> FieldElement:
        return FieldElement(self.spec, self.value ** (self.spec.p ** (i % self.spec.m)))

    def is_zero(self) -> bool:
        return int(self.value) == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __int__(self) -> int:
        return int(self.value)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return int(self) == other % self.spec.p if self.spec.m == 1 else int(self) == other
        return isinstance(other, FieldElement) and other.spec == self.spec and int(other) == int(self)

    def __hash__(self) -> int:
        return hash((self.spec, int(self)))

    @property
    def coordinates(self) -> list[int]:
        """Ascending coordinates w.r.t. the polynomial basis of the modulus."""
        v = int(self)
        out = []
        for _ in range(self.spec.m):
            v, c = divmod(v, self.spec.p)
            out.append(c)
        return out

    def multiplicative_order(self) -> int:
        if self.is_zero():
            err_msg = 'zero has no multiplicative order'
            raise DivisionByZero(err_msg)
        return int(self.value.multiplicative_order())

    def to_json(self) -> int | list[int]:
        if self.spec.m == 1:
            return int(self)
        return self.coordinates

    def __str__(self) -> str:
        if self.spec.m == 1:
            return str(int(self))
        return '[' + ','.join(map(str, self.coordinates)) + ']'

    def __repr__(self) -> str:
        return f'FieldElement(F_{self.spec.q}, {self})'


def field_arith(
    a: FieldElement,
    b: FieldElement | None = None,
    op: FieldOp = 'add',
    e: int = 0,
    i: int = 1,
) -> FieldElement:
    if op == 'add':
        return a + _needs(b, op)
    if op == 'sub':
        return a - _needs(b, op)
    if op == 'mul':
        return a * _needs(b, op)
    if op == 'inv':
        return a.inverse()
    if op == 'pow':
        return a**e
    if op == 'frobenius':
        return a.frobenius(i)
    err_msg = f'unknown field operation {op!r}'
    raise InvalidInput(err_msg)


def _needs(b: FieldElement | None, op: str) -> FieldElement:
    if b is None:
        err_msg = f'{op} needs two operands'
        raise InvalidInput(err_msg)
    return b


class Embedding:
    """F_{p^m} -> F_{p^m'} sending the modulus root x to a fixed root in the target."""

    __slots__ = ('source', 'target', 'table', 'root')

    def __init__(self, source: FieldSpec, target: FieldSpec) -> None:
        if source.p != target.p or target.m % source.m:
            err_msg = f'F_{source.q} does not embed in F_{target.q}'
            raise SpecMismatch(err_msg)
        self.source = source
        self.target = target
        if source.modulus is None:
            self.root = target.gf(0)
            self.table = np.arange(source.q, dtype=np.int64)
            return
        lifted = galois.Poly([int(c) for c in source.modulus.coeffs], field=target.gf)
        self.root = min(lifted.roots(), key=int)
        powers = [self.root**k for k in range(source.m)]
        table = np.zeros(source.q, dtype=np.int64)
        for v in range(source.q):
            image = target.gf(0)
            for k, c in enumerate(FieldElement(source, source.gf(v)).coordinates):
                if c:
                    image += target.gf(c) * powers[k]
            table[v] = int(image)
        self.table = table

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.spec != self.source:
            err_msg = f'{x!r} is not in F_{self.source.q}'
            raise SpecMismatch(err_msg)
        return FieldElement(self.target, self.target.gf(int(self.table[int(x)])))

    def array(self, arr: FieldArray) -> FieldArray:
        return self.target.gf(self.table[arr.view(np.ndarray).astype(np.int64)])


@functools.lru_cache(maxsize=None)
def embed_field(source: FieldSpec, target: FieldSpec) -> Embedding:
    return Embedding(source, target)
