from __future__ import annotations

from concurrent.futures import BrokenExecutor
from typing import Any

import click
import pydantic


class TrivzeroError(Exception):
    hint: str = ''

    def __init__(self, message: str, hint: str | None = None) -> None:
        super().__init__(message)
        if hint is not None:
            self.hint = hint

    def __reduce__(self) -> tuple[Any, ...]:
        # worker processes send errors back pickled
        return (type(self), (str(self), self.hint))


class DivisionByZero(TrivzeroError, ZeroDivisionError):
    hint = 'only nonzero field elements are invertible'


class SpecMismatch(TrivzeroError):
    hint = 'both operands must live over the same field or curve'


class InvalidInput(TrivzeroError):
    pass


class ParseError(TrivzeroError):
    hint = "polynomials look like 'T^3+T+1' or '[0,1]*T^2+1'"


class NotIrreducible(TrivzeroError):
    hint = 'pick an irreducible modulus, e.g. T^2+T+1 over F_2'


class InvalidIndex(TrivzeroError):
    hint = 'the character index k must satisfy 0 <= k < r^deg(f) - 1'


class TruncationInsufficient(TrivzeroError):
    def __init__(self, message: str, j: int, d_max: int) -> None:
        super().__init__(message, hint=f'raise --dmax above {d_max}')
        self.j = j
        self.d_max = d_max

    def __reduce__(self) -> tuple[Any, ...]:
        return (type(self), (str(self), self.j, self.d_max))


class PrecisionExceedsDigits(TrivzeroError):
    hint = 'supply more p-adic digits of y or lower the precision N'


class NotATrivialZero(TrivzeroError):
    hint = 'trivial zeroes sit at j >= 1 with j divisible by r - 1'


class RamifiedPlace(TrivzeroError):
    hint = 'choose a place v coprime to the character modulus'


class UnsupportedPlaceDegree(TrivzeroError):
    hint = 'order computation is available for places of degree 1'


class InvalidPair(TrivzeroError):
    hint = 'j1 and j2 must agree modulo (r^deg(v) - 1) * p^N'


class InvalidConfigError(TrivzeroError):
    hint = 'check the command flags or the --config file'


class CheckpointError(TrivzeroError):
    hint = 'delete the checkpoint or resume with the original parameters'


COMPUTATION_EXCEPTIONS = (
    DivisionByZero,
    SpecMismatch,
    TruncationInsufficient,
    PrecisionExceedsDigits,
    NotATrivialZero,
    RamifiedPlace,
    UnsupportedPlaceDegree,
    InvalidPair,
    CheckpointError,
    BrokenExecutor,
    OSError,
)
CONFIG_EXCEPTIONS = (
    InvalidInput,
    ParseError,
    NotIrreducible,
    InvalidIndex,
    InvalidConfigError,
    pydantic.ValidationError,
    click.UsageError,
)
