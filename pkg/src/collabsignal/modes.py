"""Arithmetic modes.

Two modes run through the whole package: "rational" does every comparison on
exact `fractions.Fraction` values, "float" works on binary64 with an absolute
tolerance of 1e-9.  Graphs always *store* weights as Fractions, so rational
mode never depends on how an instance was entered.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import InputError

Number = Union[int, float, Fraction]

FLOAT_TOL = 1e-9

RATIONAL = "rational"
FLOAT = "float"
MODES = (FLOAT, RATIONAL)


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}; expected one of {MODES}")
    return mode


def tolerance(mode: str) -> float:
    """Absolute tolerance used by predicates in the given mode."""
    return 0.0 if mode == RATIONAL else FLOAT_TOL


def to_fraction(x: Number) -> Fraction:
    """Exact conversion; floats convert via their decimal repr is NOT used --
    binary floats convert exactly so rational mode reproduces float inputs."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise InputError(f"cannot interpret {x!r} as a number")


def parse_number(x) -> Fraction:
    """Parse a JSON-level number: int/float, '0.5', or 'p/q'."""
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad numeric string {x!r}") from exc
    return to_fraction(x)


def format_number(x: Fraction, mode: str):
    """JSON-level representation: floats in float mode, strings in rational.

    Decimal strings are emitted whenever the denominator divides a power of
    ten (so '0.5' not '1/2'); otherwise the exact 'p/q' form is used since
    e.g. 2/3 has no finite decimal expansion.
    """
    x = to_fraction(x)
    if mode == FLOAT:
        return float(x)
    d = x.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d == 1:
        scaled = x
        digits = 0
        while scaled.denominator != 1:
            scaled *= 10
            digits += 1
        whole = scaled.numerator
        if digits == 0:
            return str(whole)
        sign = "-" if whole < 0 else ""
        whole = abs(whole)
        return f"{sign}{whole // 10**digits}.{whole % 10**digits:0{digits}d}"
    return f"{x.numerator}/{x.denominator}"
