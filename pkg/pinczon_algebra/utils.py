from fractions import Fraction
from inspect import currentframe

__all__ = (
    "format_rational",
    "parse_rational",
)


def _get_calling_file(offset: int = 2) -> str:
    cur_frame = currentframe()
    for _ in range(offset):
        if hasattr(cur_frame, "f_back") and cur_frame.f_back and hasattr(cur_frame.f_back, "f_globals"):
            cur_frame = cur_frame.f_back
        else:
            break
    return cur_frame.f_globals["__file__"]


def parse_rational(v: str | int | Fraction) -> Fraction:
    """Read "p/q", "p" or an integer exactly. Floats are rejected."""
    assert not isinstance(v, (bool, float)), f"Expected an exact rational, got {v!r}"
    if isinstance(v, str):
        v = v.strip()
        assert v, "Empty rational"
    try:
        return Fraction(v)
    except ZeroDivisionError as e:
        raise ValueError(f"Zero denominator in {v!r}") from e


def format_rational(x: Fraction | int) -> str:
    """Canonical "p/q" with q > 0 and gcd(p, q) = 1"""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
