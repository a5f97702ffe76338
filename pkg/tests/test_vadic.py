from __future__ import annotations

import random
from fractions import Fraction

import pytest

from trivzero._exceptions import InvalidInput
from trivzero._exceptions import InvalidPair
from trivzero._exceptions import NotATrivialZero
from trivzero._exceptions import NotIrreducible
from trivzero._exceptions import RamifiedPlace
from trivzero._exceptions import SpecMismatch
from trivzero._exceptions import UnsupportedPlaceDegree
from trivzero.characters import parse_character
from trivzero.fields import field_for_order
from trivzero.polys import BasePolynomial
from trivzero.polys import monic_enumerate
from trivzero.polys import parse_poly
from trivzero.rings import BaseRing
from trivzero.rings import FqtRing
from trivzero.rings import ring_from_selector
from trivzero.vadic import vadic_continuity_check
from trivzero.vadic import vadic_newton_polygon
from trivzero.vadic import vadic_special_polynomial
from trivzero.vadic import vadic_trivial_zero_order


def place(ring: FqtRing, text: str) -> BasePolynomial:
    return parse_poly(text, ring.spec)


def coprime_sum(ring: FqtRing, v: BasePolynomial, j: int, degree: int) -> list[BasePolynomial]:
    """Direct sum of n^j u^deg n over monic n prime to v."""
    out = []
    for d in range(degree + 1):
        total = BasePolynomial.zero(ring.spec)
        for n in monic_enumerate(ring.r, d):
            if not (n % v).is_zero():
                total = total + n**j
        out.append(total)
    while out and out[-1].is_zero():
        out.pop()
    return out


def test_q_example(fqt2: FqtRing) -> None:
    q = vadic_special_polynomial(fqt2, None, place(fqt2, 'T'), 1)
    assert [str(c) for c in q.coeffs] == ['1', 'T+1', 'T']
    assert q.d_v == 1
    assert q.place == 'v=T'
    q0 = vadic_special_polynomial(fqt2, None, place(fqt2, 'T^2+T+1'), 0)
    assert [str(c) for c in q0.coeffs] == ['1', '0', '1']


@pytest.mark.parametrize(('r', 'v'), [(2, 'T'), (2, 'T+1'), (2, 'T^2+T+1'), (3, 'T'), (3, 'T+2'), (3, 'T^2+1')])
def test_product_matches_direct_sum(r: int, v: str) -> None:
    ring = ring_from_selector(f'fqt:{r}')
    v_poly = place(ring, v)
    for j in range(0, 16):
        q = vadic_special_polynomial(ring, None, v_poly, j)
        assert q.coeffs == coprime_sum(ring, v_poly, j, len(q.coeffs) + 2), j


def test_orders(fqt2: FqtRing, fqt3: FqtRing) -> None:
    t = place(fqt2, 'T')
    assert vadic_trivial_zero_order(fqt2, t, 1).v1 == 1
    report = vadic_trivial_zero_order(fqt2, t, 2)
    assert (report.v0, report.v1, report.place) == (1, 1, 'v=T')
    for j in range(1, 20):
        assert vadic_trivial_zero_order(fqt3, place(fqt3, 'T+1'), j).v1 >= 1


def test_order_errors(fqt2: FqtRing) -> None:
    with pytest.raises(UnsupportedPlaceDegree):
        vadic_trivial_zero_order(fqt2, place(fqt2, 'T^2+T+1'), 1)
    with pytest.raises(NotATrivialZero):
        vadic_trivial_zero_order(fqt2, place(fqt2, 'T'), 0)
    with pytest.raises(NotIrreducible):
        vadic_special_polynomial(fqt2, None, place(fqt2, 'T^2+1'), 1)
    with pytest.raises(SpecMismatch):
        vadic_special_polynomial(ring_from_selector('genus1'), None, place(fqt2, 'T'), 1)


def test_euler_factor_slope(fqt2: FqtRing, fqt3: FqtRing) -> None:
    for ring, v in ((fqt2, 'T'), (fqt2, 'T^2+T+1'), (fqt3, 'T+1')):
        v_poly = place(ring, v)
        for j in range(1, 9):
            polygon = vadic_newton_polygon(vadic_special_polynomial(ring, None, v_poly, j))
            assert polygon.length_of_slope(Fraction(j, v_poly.degree)) >= v_poly.degree, (v, j)


@pytest.mark.parametrize(('r', 'j1', 'j2', 'n'), [(2, 1, 3, 1), (2, 5, 5, 3), (3, 2, 8, 1), (2, 3, 11, 2)])
def test_continuity_examples(r: int, j1: int, j2: int, n: int) -> None:
    ring = ring_from_selector(f'fqt:{r}')
    result = vadic_continuity_check(ring, None, place(ring, 'T'), j1, j2, n)
    assert result.holds
    assert result.witness is None


def check_random_pairs(rng: random.Random, pairs: int) -> None:
    for _ in range(pairs):
        r = rng.choice([2, 3])
        ring = ring_from_selector(f'fqt:{r}')
        v = rng.choice(['T', 'T+1'])
        n = rng.randrange(0, 3)
        period = (r - 1) * r**n
        j1 = rng.randrange(0, 12)
        j2 = j1 + period * rng.randrange(1, 3)
        assert vadic_continuity_check(ring, None, place(ring, v), j1, j2, n).holds, (r, v, j1, j2, n)


def test_continuity_random_pairs(rng: random.Random) -> None:
    check_random_pairs(rng, 40)


@pytest.mark.slow
def test_continuity_random_pairs_full_range(rng: random.Random) -> None:
    check_random_pairs(rng, 200)


def test_continuity_errors(fqt2: FqtRing) -> None:
    with pytest.raises(InvalidPair):
        vadic_continuity_check(fqt2, None, place(fqt2, 'T'), 1, 2, 1)
    with pytest.raises(InvalidPair):
        vadic_continuity_check(fqt2, None, place(fqt2, 'T'), -1, 1, 0)


def test_character_places(fqt3: BaseRing) -> None:
    chi = parse_character('r=3,f=T^2+1,k=2')
    v = parse_poly('T', field_for_order(3))
    q = vadic_special_polynomial(fqt3, chi, v, 2)
    assert q.special.chi is chi
    assert q.record().char == chi.label
    with pytest.raises(RamifiedPlace):
        vadic_special_polynomial(fqt3, chi, parse_poly('T^2+1', field_for_order(3)), 2)
    with pytest.raises(InvalidInput):
        vadic_special_polynomial(fqt3, None, parse_poly('2T+1', field_for_order(3)), 2)
