# characters.py

"""
Tame Dirichlet characters modulo an irreducible f in F_r[T].

(A/f)^* is cyclic of order r^{deg f} - 1. A generator is found by sweeping
powers, the sweep doubles as the discrete-log table, and the character
n -> w^{k dlog n} takes values in V = F_{r^{deg f}} with w the fixed
generator of V.
"""

from __future__ import annotations

import logging
import math
import re
from typing import Any

import numpy as np

from trivzero._exceptions import InvalidIndex
from trivzero._exceptions import InvalidInput
from trivzero._exceptions import NotIrreducible
from trivzero._exceptions import ParseError
from trivzero.fields import FieldElement
from trivzero.fields import FieldSpec
from trivzero.fields import embed_field
from trivzero.fields import field_for_order
from trivzero.fields import field_spec
from trivzero.polys import BLOCK_ROWS
from trivzero.polys import BasePolynomial
from trivzero.polys import add_dense
from trivzero.polys import block_powers
from trivzero.polys import is_irreducible
from trivzero.polys import monic_block
from trivzero.polys import monic_count
from trivzero.polys import parse_poly
from trivzero.polys import stratum_blocks

log = logging.getLogger(__name__)

# character_value returns this for n sharing a factor with f
ZERO = None

_SELECTOR = re.compile(r'^r=(?P<r>\d+),f=(?P<f>.+),k=(?P<k>\d+)$')


class DirichletCharacter:
    def __init__(self, modulus: BasePolynomial, k: int) -> None:
        self.base: FieldSpec = modulus.spec
        self.modulus = modulus
        self.degree = modulus.degree
        self.group_order = self.base.q**self.degree - 1
        if not 0 <= k < self.group_order:
            err_msg = f'character index k={k} outside [0, {self.group_order})'
            raise InvalidIndex(err_msg)
        self.k = k
        self.value_field = field_spec(self.base.p, self.base.m * self.degree)
        self.embedding = embed_field(self.base, self.value_field)
        self.group_generator, self.dlog_table = self._find_generator()
        omega = self.value_field.generator
        values = np.zeros(self.base.q**self.degree, dtype=np.int64)
        for idx, e in enumerate(self.dlog_table):
            if e >= 0:
                values[idx] = int(omega ** (k * int(e) % self.group_order))
        self.values = values
        self._weights: dict[int, Any] = {}
        log.debug(f'built {self.label} of order {self.order}')

    @property
    def r(self) -> int:
        return self.base.q

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def order(self) -> int:
        return self.group_order // math.gcd(self.k, self.group_order)

    @property
    def is_principal(self) -> bool:
        return self.k == 0

    @property
    def label(self) -> str:
        return f'r={self.r},f={self.modulus},k={self.k}'

    def __repr__(self) -> str:
        return f'DirichletCharacter({self.label})'

    def metadata(self) -> dict[str, Any]:
        return {
            'f': str(self.modulus),
            'k': self.k,
            'order': self.order,
            'generator': str(self.group_generator),
            'value_field': self.value_field.metadata(),
            'q_chi': closure_exponent(self),
        }

    def residue_index(self, n: BasePolynomial) -> int:
        """Index sum c_i r^i of the ascending coefficients of n mod f."""
        rem = n % self.modulus
        return sum(c * self.r**i for i, c in enumerate(rem.ints()))

    def _sweep(self, g: BasePolynomial) -> np.ndarray | None:
        table = np.full(self.base.q**self.degree, -1, dtype=np.int64)
        x = BasePolynomial.one(self.base)
        for e in range(self.group_order):
            idx = self.residue_index(x)
            if table[idx] >= 0:
                return None
            table[idx] = e
            x = (x * g) % self.modulus
        return table

    def _find_generator(self) -> tuple[BasePolynomial, np.ndarray]:
        for idx in range(1, self.base.q**self.degree):
            coeffs = []
            rest = idx
            for _ in range(self.degree):
                rest, c = divmod(rest, self.r)
                coeffs.append(c)
            g = BasePolynomial.from_ints(self.base, coeffs)
            table = self._sweep(g)
            if table is not None:
                return g, table
        err_msg = f'(A/{self.modulus})^* has no generator'
        raise NotIrreducible(err_msg)

    def __call__(self, n: BasePolynomial) -> FieldElement | None:
        return character_value(self, n)

    def stratum_weights(self, d: int) -> Any:
        """chi(n) for the degree-d monics in enumeration order, 0 where f | n."""
        if d not in self._weights:
            block = monic_block(self.base, d, 0, monic_count(self.r, d))
            reductions = [BasePolynomial.monomial(self.base, i) % self.modulus for i in range(d + 1)]
            matrix = self.base.gf.Zeros((d + 1, self.degree))
            for i, red in enumerate(reductions):
                coeffs = red.ints()
                matrix[i, : len(coeffs)] = self.base.gf(coeffs)
            residues = (block @ matrix).view(np.ndarray).astype(np.int64)
            index = residues @ (self.r ** np.arange(self.degree, dtype=np.int64))
            self._weights[d] = self.value_field.gf(self.values[index])
        return self._weights[d]


def build_character(r: int, f: BasePolynomial, k: int) -> DirichletCharacter:
    if f.spec.q != r:
        err_msg = f'modulus {f} is not a polynomial over F_{r}'
        raise InvalidInput(err_msg)
    if f.is_zero() or not is_irreducible(f):
        err_msg = f'modulus {f} is not irreducible over F_{r}'
        raise NotIrreducible(err_msg)
    if not f.is_monic():
        f = f * f.leading.inverse()
    return DirichletCharacter(f, k)


def parse_character(text: str) -> DirichletCharacter:
    """'r=2,f=T^2+T+1,k=1' -> character."""
    match = _SELECTOR.match(text.replace(' ', ''))
    if not match:
        err_msg = f'character {text!r} must look like r=R,f=POLY,k=K'
        raise ParseError(err_msg, hint='e.g. --char r=2,f=T^2+T+1,k=1')
    r = int(match['r'])
    return build_character(r, parse_poly(match['f'], field_for_order(r)), int(match['k']))


def character_value(chi: DirichletCharacter, n: BasePolynomial) -> FieldElement | None:
    if n.spec != chi.base:
        err_msg = f'{n} is not a polynomial over F_{chi.r}'
        raise InvalidInput(err_msg)
    idx = chi.residue_index(n)
    if chi.dlog_table[idx] < 0:
        return ZERO
    return chi.value_field(int(chi.values[idx]))


def closure_exponent(chi: DirichletCharacter | None, p: int | None = None) -> int:
    """q_chi, the order of the field generated over F_p by the character values."""
    if chi is None:
        if p is None:
            err_msg = 'closure exponent of the trivial character needs p'
            raise InvalidInput(err_msg)
        return p
    e = 1
    while (chi.p**e - 1) % chi.order:
        e += 1
    return chi.p**e


def character_power_sum(chi: DirichletCharacter, d: int, j: int, blocks: int = 1) -> BasePolynomial:
    """sum of chi(n) n^j over monic n of degree d, as a polynomial over V."""
    if d < 0 or j < 0:
        err_msg = f'power sum needs d >= 0 and j >= 0, got d={d} j={j}'
        raise InvalidInput(err_msg)
    weights = chi.stratum_weights(d)
    total = None
    for start, stop in stratum_blocks(monic_count(chi.r, d), blocks):
        for lo in range(start, stop, BLOCK_ROWS):
            hi = min(stop, lo + BLOCK_ROWS)
            powers = chi.embedding.array(block_powers(monic_block(chi.base, d, lo, hi), j, chi.base))
            weighted = weights[lo:hi].reshape(-1, 1) * powers
            total = add_dense(total, np.add.reduce(weighted, axis=0))
    if total is None:
        return BasePolynomial.zero(chi.value_field)
    return BasePolynomial.from_array(chi.value_field, total)
