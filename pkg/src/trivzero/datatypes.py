# datatypes.py

from __future__ import annotations

from typing import Any
from typing import Sequence
from typing import Union

from trivzero.curves import CurveElement
from trivzero.polys import BasePolynomial

Coefficient = Union[BasePolynomial, CurveElement]

# coefficients c_0..c_D of a polynomial in u, ascending
UPolynomial = Sequence[Any]
