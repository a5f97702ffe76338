from __future__ import annotations

import pytest

from trivzero._exceptions import InvalidInput
from trivzero._exceptions import PrecisionExceedsDigits
from trivzero._exceptions import SpecMismatch
from trivzero._exceptions import TruncationInsufficient
from trivzero.characters import build_character
from trivzero.characters import parse_character
from trivzero.fields import field_for_order
from trivzero.models.series import PadicExponent
from trivzero.polys import BasePolynomial
from trivzero.polys import frobenius_power_sum
from trivzero.polys import parse_poly
from trivzero.rings import BaseRing
from trivzero.rings import ring_from_selector
from trivzero.special import degree_profile
from trivzero.special import family_coefficient
from trivzero.special import special_polynomial


def test_examples(fqt2: BaseRing, genus1: BaseRing) -> None:
    assert special_polynomial(fqt2, None, 1).rendered() == ['1', '1']
    assert special_polynomial(fqt2, None, 3).rendered() == ['1', 'T^2+T+1', 'T^2+T']
    z = special_polynomial(genus1, None, 1)
    assert z.coeffs == [genus1.one(), genus1.zero(), genus1.one()]
    assert z.degree == 2
    assert z.tail_certified


@pytest.mark.parametrize('selector', ['fqt:2', 'fqt:3', 'fqt:4', 'fqt:5', 'genus1', 'genus2'])
def test_j_zero_is_one(selector: str) -> None:
    ring = ring_from_selector(selector)
    z = special_polynomial(ring, None, 0)
    assert z.coeffs == [ring.one()]


def test_truncation_is_certified(fqt2: BaseRing) -> None:
    with pytest.raises(TruncationInsufficient) as excinfo:
        special_polynomial(fqt2, None, 3, d_max=2)
    assert excinfo.value.j == 3
    assert excinfo.value.d_max == 2
    with pytest.raises(TruncationInsufficient):
        special_polynomial(fqt2, None, 1, d_max=1)


@pytest.mark.parametrize('selector', ['fqt:2', 'fqt:3', 'genus1', 'genus2'])
def test_larger_truncation_changes_nothing(selector: str) -> None:
    ring = ring_from_selector(selector)
    for j in (1, 2, 3, 5, 6, 7):
        default = special_polynomial(ring, None, j)
        wider = special_polynomial(ring, None, j, d_max=default.d_max_used + 3)
        assert wider.coeffs == default.coeffs


def test_cutoff_agrees_with_full_computation(fqt3: BaseRing) -> None:
    for j in range(1, 20):
        assert special_polynomial(fqt3, None, j, use_cutoff=False).coeffs == special_polynomial(fqt3, None, j).coeffs


def test_blocks_agree(fqt3: BaseRing, genus1: BaseRing) -> None:
    for ring in (fqt3, genus1):
        assert special_polynomial(ring, None, 7, blocks=3).coeffs == special_polynomial(ring, None, 7).coeffs


@pytest.mark.parametrize('selector', ['fqt:2', 'genus1', 'genus2'])
def test_frobenius_identity(selector: str) -> None:
    ring = ring_from_selector(selector)
    for j in range(1, 12):
        z = special_polynomial(ring, None, j)
        twisted = special_polynomial(ring, None, 2 * j)
        assert twisted.coeffs == [c * c for c in z.coeffs]


def test_frobenius_identity_f3(fqt3: BaseRing) -> None:
    for j in range(1, 10):
        z = special_polynomial(fqt3, None, j)
        assert special_polynomial(fqt3, None, 3 * j).coeffs == [c**3 for c in z.coeffs]


@pytest.mark.parametrize(
    ('r', 'f'),
    [(2, 'T'), (2, 'T+1'), (2, 'T^2+T+1'), (3, 'T'), (3, 'T^2+1')],
)
def test_principal_character_removes_euler_factor(r: int, f: str) -> None:
    ring = ring_from_selector(f'fqt:{r}')
    chi = build_character(r, parse_poly(f, field_for_order(r)), 0)
    for j in range(13):
        z = special_polynomial(ring, None, j)
        z_chi = special_polynomial(ring, chi, j)
        lifted = [c.embed(chi.embedding) for c in z.coeffs]
        factor = (chi.modulus**j).embed(chi.embedding)
        expected = [*lifted, *(BasePolynomial.zero(chi.value_field) for _ in range(chi.degree))]
        for d, c in enumerate(lifted):
            expected[d + chi.degree] = expected[d + chi.degree] - factor * c
        while expected and expected[-1].is_zero():
            expected.pop()
        assert z_chi.coeffs == expected, j


def test_character_needs_fqt_ring(genus1: BaseRing) -> None:
    chi = parse_character('r=2,f=T,k=0')
    with pytest.raises(SpecMismatch):
        special_polynomial(genus1, chi, 1)
    with pytest.raises(SpecMismatch):
        special_polynomial(ring_from_selector('fqt:3'), chi, 1)


def test_invalid_arguments(fqt2: BaseRing) -> None:
    with pytest.raises(InvalidInput):
        special_polynomial(fqt2, None, -1)
    with pytest.raises(InvalidInput):
        special_polynomial(fqt2, None, 1, d_max=-1)


def test_record(fqt2: BaseRing) -> None:
    record = special_polynomial(fqt2, None, 3).record()
    assert record.coeffs == ['1', 'T^2+T+1', 'T^2+T']
    assert record.char == 'trivial'
    assert record.metadata['ring'] == 'fqt:2'


def family_from_power_sum(q: int, d: int, j: int, n_terms: int) -> list[int]:
    """pi-adic digits of S_d(j) / T^{dj}: coefficient of pi^m is that of T^{dj - m}."""
    s = frobenius_power_sum(q, d, j)
    return [int(s.coefficient(d * j - m)) if d * j - m >= 0 else 0 for m in range(n_terms)]


def check_family(selector: str, exponents: range, n_terms: int) -> None:
    ring = ring_from_selector(selector)
    for d in range(4):
        for j in exponents:
            a = family_coefficient(ring, d, PadicExponent.from_int(j, ring.p), n_terms)
            dense = a.ints() + [0] * (n_terms - len(a.ints()))
            assert dense == family_from_power_sum(ring.r, d, j, n_terms), (d, j)
            assert a.var == 'pi'


@pytest.mark.parametrize('selector', ['fqt:2', 'fqt:3', 'fqt:4'])
def test_family_matches_exact_coefficients(selector: str) -> None:
    check_family(selector, range(0, 25, 3), 12)


@pytest.mark.slow
@pytest.mark.parametrize('selector', ['fqt:2', 'fqt:3', 'fqt:4'])
def test_family_matches_exact_coefficients_full_range(selector: str) -> None:
    check_family(selector, range(65), 16)


def test_family_examples(fqt2: BaseRing) -> None:
    zero = PadicExponent.from_int(0, 2)
    assert family_coefficient(fqt2, 0, PadicExponent(p=2, digits=(1, 0, 1)), 4) == 1
    assert family_coefficient(fqt2, 2, zero, 8).is_zero()
    assert family_coefficient(fqt2, 2, PadicExponent.from_int(3, 2), 8).ints() == [0, 0, 0, 0, 1, 1]


def test_family_precision(fqt2: BaseRing) -> None:
    y = PadicExponent(p=2, digits=(1,))
    assert family_coefficient(fqt2, 1, y, 2) == family_coefficient(fqt2, 1, PadicExponent.from_int(1, 2), 2)
    with pytest.raises(PrecisionExceedsDigits):
        family_coefficient(fqt2, 1, y, 4)
    with pytest.raises(SpecMismatch):
        family_coefficient(fqt2, 1, PadicExponent.from_int(1, 3), 2)
    with pytest.raises(InvalidInput):
        PadicExponent(p=2, digits=(2,))


def test_degree_profile(fqt2: BaseRing, genus1: BaseRing) -> None:
    rows = degree_profile(fqt2, range(1, 33))
    assert all(row.within for row in rows)
    powers = {row.j: row.degree for row in rows if row.j & (row.j - 1) == 0}
    assert len(set(powers.values())) == 1
    ones = [row.degree for row in rows if row.j in (1, 3, 7, 15, 31)]
    assert ones == sorted(ones)
    assert degree_profile(genus1, [1])[0].degree == 2
    with pytest.raises(InvalidInput):
        degree_profile(fqt2, [])


@pytest.mark.slow
@pytest.mark.parametrize('selector', ['fqt:2', 'fqt:3'])
def test_degree_profile_full_range(selector: str) -> None:
    rows = degree_profile(ring_from_selector(selector), range(1, 301))
    assert all(row.within for row in rows)
