from fractions import Fraction
from typing import List, Sequence

from app.core.exceptions import UsageError


def split_int_list(text: str) -> List[int]:
    """
    Parse comma-separated signed decimal integers.

    Args:
        text: Text such as ``"1,-3,2"``; whitespace around items is ignored.

    Returns:
        list: The integers, empty for an empty or blank string.
    """
    text = text.strip()
    if not text:
        return []
    try:
        return [int(item) for item in text.split(",")]
    except ValueError as e:
        raise UsageError(f"not a comma-separated integer list: {text!r}") from e


def parse_rational(text: str) -> Fraction:
    """
    Parse an exact rational written as ``p/q``, ``p`` or a finite decimal.

    Args:
        text: Rational text

    Returns:
        Fraction: The exact value
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"not a rational number: {text!r}") from e


def parse_rational_list(text: str) -> List[Fraction]:
    """Parse a comma-separated list of rationals (``"1,2,5/2"``)."""
    text = text.strip()
    if not text:
        return []
    return [parse_rational(item) for item in text.split(",")]


def format_rational(value: Fraction) -> str:
    """Format a rational as ``p/q`` (integers keep the ``/1``)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_coefficients(coeffs: Sequence[int]) -> List[str]:
    """
    Serialize integer coefficients as decimal strings.

    The zero polynomial has no coefficients and is written as ``["0"]``.
    """
    if not coeffs:
        return ["0"]
    return [str(c) for c in coeffs]
