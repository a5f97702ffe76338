# format.py
from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING
from typing import Any

from trivzero._exceptions import ParseError

if TYPE_CHECKING:
    from collections.abc import Iterable


def fraction(x: Fraction | int) -> str:
    """Exact rational as 'num/den', integers without denominator."""
    return str(Fraction(x))


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as err:
        err_msg = f'{text!r} is not an exact rational'
        raise ParseError(err_msg) from err


def slopes(segments: Iterable[tuple[Fraction, int]]) -> str:
    """Newton polygon segments as 's1:len1|s2:len2'."""
    return '|'.join(f'{fraction(s)}:{n}' for s, n in segments)


def parse_slopes(text: str) -> list[tuple[Fraction, int]]:
    if not text:
        return []
    out = []
    for item in text.split('|'):
        slope, sep, length = item.rpartition(':')
        if not sep or not length.isdigit():
            err_msg = f'segment {item!r} must look like slope:length'
            raise ParseError(err_msg)
        out.append((parse_fraction(slope), int(length)))
    return out


def stringify(items: dict[str, Any], sep: str = ':') -> list[str]:
    return [f'{k:<18}{sep}\t{v!s:<30}'.rstrip() for k, v in items.items()]

