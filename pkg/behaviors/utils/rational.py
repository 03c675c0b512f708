import re
from fractions import Fraction

RATIONAL_PATTERN = re.compile(r'^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$')


def parse_rational(text):
    """
    Parse "num/den" or "num" into a canonical Fraction.
    Integers are accepted as-is; floats are refused so that exact data
    never silently picks up binary rounding.
    """
    if isinstance(text, bool):
        raise ValueError(f"Not a rational number: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"Not a rational number: {text!r}")

    match = RATIONAL_PATTERN.match(text)
    if not match:
        raise ValueError(f"Not a rational number: {text!r}")
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ValueError(f"Zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_number(value):
    """Exact values render as rational strings, floating ones as JSON numbers."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return format_rational(value)
    return float(value)
