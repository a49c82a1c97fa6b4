from fractions import Fraction
from typing import Annotated

from pydantic import PlainSerializer
from pydantic.functional_validators import AfterValidator, BeforeValidator

from ..algebra.cohomology import CochainFlavor
from ..algebra.structures import Flavor
from ..utils import format_rational, parse_rational

__all__ = (
    "AlgebraKind",
    "CochainKind",
    "Index",
    "Rational",
)


def _is_index(v: int) -> int:
    assert v >= 1, f"Indices are 1-based, got {v}"
    return v


def _is_dimension(v: int) -> int:
    assert v >= 0, f"Dimension must be nonnegative, got {v}"
    return v


Rational = Annotated[Fraction, BeforeValidator(parse_rational), PlainSerializer(format_rational, return_type=str)]
Index = Annotated[int, AfterValidator(_is_index)]
Dimension = Annotated[int, AfterValidator(_is_dimension)]
AlgebraKind = Flavor
CochainKind = CochainFlavor
