# special.py

"""
Special polynomials z_L(chi, x, -j) as exact polynomials in u = 1/x.

The coefficient of u^d is the degree-d stratum sum of chi(a) a^j. Strata are
computed up to ``d_max`` and the top ``tail_margin`` strata must vanish; a
truncation that cannot be certified raises ``TruncationInsufficient``
instead of returning a possibly short polynomial.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field
from typing import TYPE_CHECKING
from typing import Any
from typing import Iterable

import numpy as np

from trivzero import __about__
from trivzero._exceptions import InvalidInput
from trivzero._exceptions import PrecisionExceedsDigits
from trivzero._exceptions import SpecMismatch
from trivzero._exceptions import TruncationInsufficient
from trivzero.constants import PROFILE_MARGIN
from trivzero.fields import digit_sum
from trivzero.fields import digits
from trivzero.fields import lucas_binomial
from trivzero.helpers import timeit
from trivzero.models.series import ProfileRow
from trivzero.models.series import SeriesRecord
from trivzero.polys import BLOCK_ROWS
from trivzero.polys import BasePolynomial
from trivzero.polys import add_dense
from trivzero.polys import monic_block
from trivzero.polys import monic_count
from trivzero.rings import FqtRing

if TYPE_CHECKING:
    from trivzero.characters import DirichletCharacter
    from trivzero.datatypes import Coefficient
    from trivzero.models.series import PadicExponent
    from trivzero.rings import BaseRing

log = logging.getLogger(__name__)

FAMILY_VARIABLE = 'pi'


@dataclass
class SpecialPolynomial:
    ring: BaseRing
    chi: DirichletCharacter | None
    j: int
    coeffs: list[Coefficient]
    d_max_used: int
    tail_certified: bool
    computed: list[Coefficient] = field(default_factory=list, repr=False)

    @property
    def char(self) -> str:
        return 'trivial' if self.chi is None else self.chi.label

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, d: int) -> Coefficient:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return self.ring.zero(self.chi)

    def rendered(self) -> list[str]:
        return [self.ring.render(c) for c in self.coeffs]

    def metadata(self) -> dict[str, Any]:
        meta: dict[str, Any] = {**self.ring.metadata(), 'version': __about__.__version__}
        if self.chi is not None:
            meta['character'] = self.chi.metadata()
        if self.ring.experimental:
            meta['experimental'] = True
        return meta

    def record(self) -> SeriesRecord:
        return SeriesRecord(
            ring=self.ring.label,
            char=self.char,
            j=self.j,
            coeffs=self.rendered(),
            d_max_used=self.d_max_used,
            tail_certified=self.tail_certified,
            metadata=self.metadata(),
        )


def special_polynomial(
    ring: BaseRing,
    chi: DirichletCharacter | None,
    j: int,
    d_max: int | None = None,
    blocks: int = 1,
    use_cutoff: bool = True,
) -> SpecialPolynomial:
    if j < 0:
        err_msg = f'exponent j={j} must be non-negative'
        raise InvalidInput(err_msg)
    ring.check_character(chi)
    if d_max is None:
        d_max = ring.default_d_max(j, chi)
    if d_max < 0:
        err_msg = f'd_max={d_max} must be non-negative'
        raise InvalidInput(err_msg)

    computed = []
    for d in range(d_max + 1):
        if use_cutoff and ring.vanishes(d, j, chi):
            computed.append(ring.zero(chi))
            continue
        c = ring.power_sum(d, j, chi, blocks)
        log.debug(f'{ring.label} j={j}: stratum {d} ({ring.stratum_size(d)} elements) done')
        computed.append(c)

    margin = ring.tail_margin(chi)
    tail = computed[max(0, d_max + 1 - margin) :]
    if d_max + 1 <= margin or any(not c.is_zero() for c in tail):
        err_msg = f'{ring.label} j={j}: the top {margin} strata below d_max={d_max} do not all vanish'
        raise TruncationInsufficient(err_msg, j=j, d_max=d_max)

    coeffs = list(computed)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return SpecialPolynomial(
        ring=ring,
        chi=chi,
        j=j,
        coeffs=coeffs,
        d_max_used=d_max,
        tail_certified=True,
        computed=computed,
    )


def _one_unit_parts(block: Any) -> Any:
    """Rows n = T^d + ... -> w with <n> = 1 + w, ascending in pi = 1/T."""
    w = block[:, ::-1].copy()
    w[:, 0] = 0
    return w


def _truncated_power_sums(ring: FqtRing, d: int, n_terms: int) -> list[Any]:
    """P_k = sum over monic n of w_n^k mod pi^N, k < N."""
    gf = ring.spec.gf
    sums = [gf.Zeros(n_terms) for _ in range(n_terms)]
    count = monic_count(ring.r, d)
    for lo in range(0, count, BLOCK_ROWS):
        block = monic_block(ring.spec, d, lo, min(count, lo + BLOCK_ROWS))
        w = _one_unit_parts(block)[:, :n_terms]
        acc = gf.Zeros((block.shape[0], n_terms))
        acc[:, 0] = 1
        for k in range(n_terms):
            sums[k] = add_dense(sums[k], np.add.reduce(acc, axis=0))
            nxt = gf.Zeros((block.shape[0], n_terms))
            for i in range(1, w.shape[1]):
                nxt[:, i:] = nxt[:, i:] + w[:, i : i + 1] * acc[:, : n_terms - i]
            acc = nxt
    return sums


def _binomial(y: PadicExponent, k: int) -> int:
    """C(y, k) mod p by Lucas on the digits of y."""
    result = 1
    for i, kd in enumerate(digits(k, y.p)):
        yd = y.digit(i)
        if yd is None:
            err_msg = f'C(y, {k}) needs digit {i} of y, only {len(y.digits)} given'
            raise PrecisionExceedsDigits(err_msg)
        result = result * lucas_binomial(yd, kd, y.p) % y.p
    return result


def family_coefficient(ring: BaseRing, d: int, y: PadicExponent, n_terms: int) -> BasePolynomial:
    """
    a_d(y) = sum over monic n of degree d of <n>^y mod pi^N, <n> = n / T^d.

    Returned as a polynomial in pi of degree < N.
    """
    if not isinstance(ring, FqtRing):
        err_msg = f'family coefficients are available over F_r[T], not {ring.label}'
        raise SpecMismatch(err_msg)
    if d < 0 or n_terms < 1:
        err_msg = f'family coefficient needs d >= 0 and N >= 1, got d={d} N={n_terms}'
        raise InvalidInput(err_msg)
    if y.p != ring.p:
        err_msg = f'y is {y.p}-adic but the ring has characteristic {ring.p}'
        raise SpecMismatch(err_msg)
    binomials = [_binomial(y, k) for k in range(n_terms)]
    sums = _truncated_power_sums(ring, d, n_terms)
    total = ring.spec.gf.Zeros(n_terms)
    for k, b in enumerate(binomials):
        if b:
            total = total + sums[k] * b
    return BasePolynomial.from_array(ring.spec, total, FAMILY_VARIABLE)


@timeit
def degree_profile(
    ring: BaseRing,
    j_range: Iterable[int],
    chi: DirichletCharacter | None = None,
    margin: int = PROFILE_MARGIN,
) -> list[ProfileRow]:
    """deg_u z against floor(l_r(j) / (r - 1)) + 2g + margin."""
    rows = []
    for j in j_range:
        z = special_polynomial(ring, chi, j)
        l_r = digit_sum(j, ring.r)
        row = ProfileRow(j=j, degree=z.degree, l_r=l_r, bound=l_r // (ring.r - 1) + 2 * ring.genus + margin)
        if not row.within:
            log.warning(f'{ring.label} j={j}: degree {row.degree} exceeds envelope {row.bound}')
        rows.append(row)
    if not rows:
        err_msg = 'degree profile needs a nonempty range of j'
        raise InvalidInput(err_msg)
    return rows
