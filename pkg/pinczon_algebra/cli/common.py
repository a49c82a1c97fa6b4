from enum import Enum
from typing import Literal

PinczonCommand = Literal[
    "verify",
    "structure-form",
    "bracket",
    "double-extension",
    "cohomology",
    "check-phi",
]


class FlavorChoice(str, Enum):
    hochschild = "hochschild"
    harrison = "harrison"
    chevalley = "chevalley"


__all__ = (
    "FlavorChoice",
    "PinczonCommand",
)
