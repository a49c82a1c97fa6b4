from .base import AlgebraKind, CochainKind, Index, Rational
from .engine import EngineConfiguration, load_config
from .files import (
    ActionRecord,
    AlgebraFile,
    CochainEntry,
    CochainFile,
    FormEntry,
    FormFile,
    ModuleFile,
    StructureRecord,
)
