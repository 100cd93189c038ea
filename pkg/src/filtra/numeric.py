"""Dual numeric modes: exact rationals and doubles.

Every probability, distance and bound in the package is either a
`fractions.Fraction` (exact mode, the default for verification paths) or a
`float` (float mode, for Monte Carlo and large-depth tables).  Modes never mix
silently: container constructors and operations call `common_mode` and raise
`ModeMismatchError` when exact and float values meet.  Python `int` counts as
exact and is coerced to `Fraction`.

Float comparisons always go through `is_close` with an explicit tolerance;
exact comparisons use plain equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Literal, Union

from .errors import ModeMismatchError, ValidationError

Scalar = Union[Fraction, float]
Mode = Literal["exact", "float"]

#: tolerance for "sums to one" checks on float-mode distributions
FLOAT_SUM_TOL = 1e-12
#: tolerance for float-mode coupling margin checks
FLOAT_MARGIN_TOL = 1e-10


def mode_of(value: Scalar) -> Mode:
    """Classify a scalar as exact or float; reject anything else."""
    if isinstance(value, bool):
        raise ValidationError(f"not a numeric scalar: {value!r}")
    if isinstance(value, (Fraction, int)):
        return "exact"
    if isinstance(value, float):
        return "float"
    raise ValidationError(f"not a numeric scalar: {value!r}")


def common_mode(values: Iterable[Scalar]) -> Mode:
    """Mode shared by all values; raises ModeMismatchError on a mix."""
    mode: Mode | None = None
    for v in values:
        m = mode_of(v)
        if mode is None:
            mode = m
        elif mode != m:
            raise ModeMismatchError("exact and float values mixed in one operation")
    if mode is None:
        raise ValidationError("empty value sequence has no mode")
    return mode


def join_modes(*modes: Mode) -> Mode:
    first = modes[0]
    for m in modes[1:]:
        if m != first:
            raise ModeMismatchError("exact and float operands mixed")
    return first


def coerce(value: Scalar, mode: Mode) -> Scalar:
    """Normalize representation within a mode (ints become Fractions)."""
    if mode == "exact":
        return value if isinstance(value, Fraction) else Fraction(value)
    return float(value)


def zero(mode: Mode) -> Scalar:
    return Fraction(0) if mode == "exact" else 0.0


def one(mode: Mode) -> Scalar:
    return Fraction(1) if mode == "exact" else 1.0


def is_close(a: Scalar, b: Scalar, tol: float) -> bool:
    """Tolerance comparison; tol is mandatory by design for float paths."""
    return abs(a - b) <= tol


def scalars_equal(a: Scalar, b: Scalar, mode: Mode, tol: float = FLOAT_SUM_TOL) -> bool:
    if mode == "exact":
        return a == b
    return is_close(a, b, tol)


def parse_exact(text: str) -> Fraction:
    """Parse "p/q" or a decimal string into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse exact scalar from {text!r}") from exc


def format_scalar(value: Scalar) -> str:
    """Serialize a scalar: Fractions as "p/q", floats as repr."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return f"{value}/1"
    return repr(value)


def scalar_to_json(value: Scalar):
    """JSON encoding: exact scalars as "p/q" strings, floats as numbers."""
    if isinstance(value, (Fraction, int)):
        return format_scalar(value)
    return value


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, str):
        return parse_exact(obj)
    if isinstance(obj, (int, float)):
        return float(obj)
    raise ValidationError(f"cannot parse scalar from JSON value {obj!r}")
