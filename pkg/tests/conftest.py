from __future__ import annotations

import random

import pytest

from trivzero.fields import FieldSpec
from trivzero.fields import field_spec
from trivzero.rings import BaseRing
from trivzero.rings import ring_from_selector


@pytest.fixture()
def rng() -> random.Random:
    return random.Random(20240611)


@pytest.fixture()
def f2() -> FieldSpec:
    return field_spec(2)


@pytest.fixture()
def f3() -> FieldSpec:
    return field_spec(3)


@pytest.fixture()
def f4() -> FieldSpec:
    return field_spec(2, 2)


@pytest.fixture()
def fqt2() -> BaseRing:
    return ring_from_selector('fqt:2')


@pytest.fixture()
def fqt3() -> BaseRing:
    return ring_from_selector('fqt:3')


@pytest.fixture()
def genus1() -> BaseRing:
    return ring_from_selector('genus1')


@pytest.fixture()
def genus2() -> BaseRing:
    return ring_from_selector('genus2')
