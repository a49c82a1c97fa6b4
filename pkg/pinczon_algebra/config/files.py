from collections.abc import Iterable
from fractions import Fraction
from logging import getLogger
from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel, Field, model_validator

from ..algebra.brackets import BilinearPairing
from ..algebra.cohomology import Cochain, CochainFlavor, ModuleData
from ..algebra.multilinear import MultilinearForm, MultilinearMap, _accumulate, unshift_map
from ..algebra.signs import GradedBasis
from ..algebra.structures import HOMOTOPY_FLAVORS, QuadraticStructure, check_pairing, load_structure
from ..exceptions import InvalidInputError
from .base import AlgebraKind, Dimension, Index, Rational

__all__ = (
    "ActionRecord",
    "AlgebraFile",
    "CochainEntry",
    "CochainFile",
    "FormEntry",
    "FormFile",
    "ModuleFile",
    "StructureRecord",
)

log = getLogger(__name__)

F = TypeVar("F", bound="_JsonFile")


class _JsonFile(BaseModel):
    @classmethod
    def read(cls: type[F], path: Path | str) -> F:
        log.info(f"Reading {cls.__name__} from {path}")
        return cls.model_validate_json(Path(path).read_text(encoding="utf-8"))

    def dumps(self) -> str:
        return self.model_dump_json(indent=2)


class StructureRecord(BaseModel):
    inputs: list[Index]
    output: Index
    coeff: Rational


class ActionRecord(BaseModel):
    v: Index
    m: Index
    out: Index
    coeff: Rational


class CochainEntry(BaseModel):
    inputs: list[Index]
    out: Index
    coeff: Rational


class FormEntry(BaseModel):
    inputs: list[Index]
    coeff: Rational


def _records(q: MultilinearMap) -> list[StructureRecord]:
    return [StructureRecord(inputs=[i + 1 for i in inputs], output=out + 1, coeff=c) for (inputs, out), c in q.items()]


class AlgebraFile(_JsonFile):
    """Structure constants q(e_i, e_j) = sum coeff e_output on V, one record list per Taylor arity for homotopy kinds"""

    name: str = ""
    kind: AlgebraKind
    dim: Dimension
    degrees: list[int]
    b: list[list[Rational]]
    structure: list[StructureRecord] | list[list[StructureRecord]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_dimensions(self):
        assert len(self.degrees) == self.dim, f"Expected {self.dim} degrees, got {len(self.degrees)}"
        assert len(self.b) == self.dim and all(len(row) == self.dim for row in self.b), f"b must be a {self.dim}x{self.dim} matrix"
        nested = bool(self.structure) and isinstance(self.structure[0], list)
        if self.kind in HOMOTOPY_FLAVORS:
            assert nested or not self.structure, f"{self.kind} structures take one record list per Taylor arity"
        else:
            assert not nested, f"{self.kind} structures take a single record list"
        for records in self.taylor_records():
            if not records:
                assert self.kind not in HOMOTOPY_FLAVORS, "Empty record lists are not allowed, omit the arity instead"
                continue
            arities = {len(record.inputs) for record in records}
            assert len(arities) == 1, f"Records of mixed arities {sorted(arities)} in one list"
            if self.kind not in HOMOTOPY_FLAVORS:
                assert arities == {2}, f"{self.kind} structure constants are binary"
            for record in records:
                assert all(i <= self.dim for i in (*record.inputs, record.output)), f"Record {record} exceeds dimension {self.dim}"
        return self

    def taylor_records(self) -> list[list[StructureRecord]]:
        if not self.structure:
            return [] if self.kind in HOMOTOPY_FLAVORS else [[]]
        if isinstance(self.structure[0], list):
            return self.structure
        return [self.structure]

    @property
    def basis(self) -> GradedBasis:
        return GradedBasis.from_degrees(self.degrees)

    def to_pairing(self) -> BilinearPairing:
        report = check_pairing(self.basis, self.b)
        if not report.passed:
            raise InvalidInputError(f"Invalid pairing in `{self.name or self.kind}`: {', '.join(check.name for check in report.failures)}")
        return BilinearPairing(basis=self.basis, matrix=self.b)

    @staticmethod
    def _constants(records: Iterable[StructureRecord]) -> dict[tuple[tuple[int, ...], int], Fraction]:
        constants: dict = {}
        for record in records:
            _accumulate(constants, (tuple(i - 1 for i in record.inputs), record.output - 1), record.coeff)
        return constants

    def to_structure(self) -> QuadraticStructure:
        if self.kind not in HOMOTOPY_FLAVORS:
            constants = self._constants(self.taylor_records()[0])
            return load_structure(self.basis, self.b, self.kind, constants, name=self.name)

        per_arity, degrees = {}, {}
        for records in self.taylor_records():
            arity = len(records[0].inputs)
            first = records[0]
            # degree of q_k read off the first record, the rest must agree
            degrees[arity] = self.degrees[first.output - 1] - sum(self.degrees[i - 1] for i in first.inputs)
            per_arity[arity] = self._constants(records)
        return load_structure(self.basis, self.b, self.kind, per_arity, name=self.name, degrees=degrees)

    @classmethod
    def from_structure(cls, s: QuadraticStructure) -> "AlgebraFile":
        if s.is_homotopy:
            structure = [_records(unshift_map(q)) for q in s.taylor if not q.is_zero()]
        else:
            structure = _records(unshift_map(s.binary))
        return cls(
            name=s.name,
            kind=s.flavor,
            dim=len(s.basis),
            degrees=list(s.basis.degrees),
            b=[list(row) for row in s.pairing.matrix],
            structure=structure,
        )


class ModuleFile(_JsonFile):
    """Action constants x_v . a_m = sum coeff a_out, and a_m . x_v for the right action"""

    dim: Dimension
    degrees: list[int]
    left_action: list[ActionRecord] = Field(default_factory=list)
    right_action: list[ActionRecord] | None = None

    @model_validator(mode="after")
    def _check_dimensions(self):
        assert len(self.degrees) == self.dim, f"Expected {self.dim} degrees, got {len(self.degrees)}"
        for record in (*self.left_action, *(self.right_action or ())):
            assert record.m <= self.dim and record.out <= self.dim, f"Action record {record} exceeds module dimension {self.dim}"
        return self

    @staticmethod
    def _action(records: Iterable[ActionRecord]) -> dict[tuple[int, int, int], Fraction]:
        action: dict = {}
        for record in records:
            _accumulate(action, (record.v - 1, record.m - 1, record.out - 1), record.coeff)
        return action

    def to_module(self) -> ModuleData:
        return ModuleData(
            basis=GradedBasis.from_degrees(self.degrees, prefix="m"),
            left_action=self._action(self.left_action),
            right_action=None if self.right_action is None else self._action(self.right_action),
        )


class CochainFile(_JsonFile):
    arity: Dimension
    degree: int = 0
    entries: list[CochainEntry] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_arity(self):
        for entry in self.entries:
            assert len(entry.inputs) == self.arity, f"Entry {entry} does not have {self.arity} inputs"
        return self

    def to_cochain(self, s: QuadraticStructure, m: ModuleData, flavor: CochainFlavor) -> Cochain:
        coefficients: dict = {}
        for entry in self.entries:
            _accumulate(coefficients, (tuple(i - 1 for i in entry.inputs), entry.out - 1), entry.coeff)
        return Cochain(source=s.basis, target=m.basis, arity=self.arity, degree=self.degree, flavor=flavor, coefficients=coefficients)

    @classmethod
    def from_cochain(cls, c: Cochain) -> "CochainFile":
        entries = [CochainEntry(inputs=[i + 1 for i in inputs], out=out + 1, coeff=value) for (inputs, out), value in sorted(c.coefficients.items())]
        return cls(arity=c.arity, degree=c.degree, entries=entries)


class FormFile(_JsonFile):
    """A form on V[1]; without `degree` it is read off the first entry"""

    arity: Dimension
    degree: int | None = None
    entries: list[FormEntry] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_arity(self):
        for entry in self.entries:
            assert len(entry.inputs) == self.arity, f"Entry {entry} does not have {self.arity} inputs"
        return self

    def to_form(self, basis: GradedBasis) -> MultilinearForm:
        coefficients: dict = {}
        for entry in self.entries:
            _accumulate(coefficients, tuple(i - 1 for i in entry.inputs), entry.coeff)
        degree = self.degree
        if degree is None:
            first = [i - 1 for i in self.entries[0].inputs] if self.entries else []
            # out of range entries are left for MultilinearForm to reject
            degree = -basis.total(first) if all(i < len(basis) for i in first) else 0
        return MultilinearForm(basis=basis, arity=self.arity, degree=degree, coefficients=coefficients)

    @classmethod
    def from_form(cls, f: MultilinearForm) -> "FormFile":
        return cls(arity=f.arity, degree=f.degree, entries=[FormEntry(inputs=[i + 1 for i in key], coeff=c) for key, c in f.items()])
