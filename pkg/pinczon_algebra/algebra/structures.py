from collections.abc import Mapping, Sequence
from fractions import Fraction
from functools import cached_property
from logging import getLogger
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..exceptions import InvalidInputError
from .brackets import (
    BilinearPairing,
    bracket_maps,
    bracket_sym_maps,
    degree_defect,
    form_of_map,
    pinczon_bracket,
    pinczon_bracket_sym,
    symmetry_defect,
)
from .linalg import rational_rank
from .multilinear import (
    MultilinearForm,
    MultilinearMap,
    is_cyclic,
    is_symmetric_form,
    is_symmetric_map,
    permute_form,
    permute_map,
    shift_map,
    shuffle_vanishing_defect,
    shuffle_vanishing_defect_map,
    unshift_map,
)
from .report import ValidationReport
from .signs import GradedBasis, Permutation

__all__ = (
    "Classification",
    "Flavor",
    "HOMOTOPY_FLAVORS",
    "QuadraticStructure",
    "STRICT_FLAVORS",
    "check_invariance",
    "check_pairing",
    "classify",
    "flavor_checks",
    "load_structure",
    "structure_equation",
    "validate_homotopy",
    "verify_structure",
)

log = getLogger(__name__)

Flavor = Literal["associative", "commutative", "lie", "a-infinity", "c-infinity", "l-infinity"]
ClassificationFlag = Literal["associative", "commutative-sign", "skew-sign", "jacobi"]

STRICT_FLAVORS: tuple[Flavor, ...] = ("associative", "commutative", "lie")
HOMOTOPY_FLAVORS: tuple[Flavor, ...] = ("a-infinity", "c-infinity", "l-infinity")

Constants = Mapping[tuple[tuple[int, ...], int], Fraction | int]


class QuadraticStructure(BaseModel):
    """A graded space with a nondegenerate pairing and the Taylor coefficients of a degree 1 coderivation.

    Strict flavors carry a single binary coefficient, the shift of the algebra law.
    Invariance of the pairing and the structure equation are checked by the functions
    of this module rather than on construction, so that failing inputs can be reported.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str = ""
    basis: GradedBasis
    pairing: BilinearPairing
    flavor: Flavor
    taylor: list[MultilinearMap] = Field(description="Taylor coefficients on V[1], at most one per arity")

    @model_validator(mode="after")
    def _check_taylor(self):
        if self.pairing.basis != self.basis:
            raise ValueError("Pairing is defined on a different basis")
        if not self.pairing.is_nondegenerate():
            raise ValueError(f"Pairing of {self.name or self.flavor} is degenerate")
        arities = [q.arity for q in self.taylor]
        if len(set(arities)) != len(arities):
            raise ValueError(f"Taylor coefficients must have distinct arities, got {arities}")
        if any(q.basis != self.basis or not q.shifted for q in self.taylor):
            raise ValueError("Taylor coefficients must be maps on V[1] over the structure's basis")
        if self.flavor in STRICT_FLAVORS and arities != [2]:
            raise ValueError(f"A {self.flavor} structure has exactly one binary coefficient, got arities {arities}")
        if not self.taylor:
            raise ValueError("At least one Taylor coefficient is required")
        self.taylor.sort(key=lambda q: q.arity)
        return self

    @property
    def is_homotopy(self) -> bool:
        return self.flavor in HOMOTOPY_FLAVORS

    @property
    def is_lie_like(self) -> bool:
        return self.flavor in ("lie", "l-infinity")

    @property
    def binary(self) -> MultilinearMap:
        for q in self.taylor:
            if q.arity == 2:
                return q
        return MultilinearMap.zero(self.basis, 2)

    @cached_property
    def structure_forms(self) -> list[MultilinearForm]:
        return [form_of_map(q, self.pairing) for q in self.taylor]

    @property
    def structure_form(self) -> MultilinearForm:
        """The cubic form of the binary coefficient, I(x,y,z) = b([x,y],z) up to shift signs for Lie algebras"""
        return form_of_map(self.binary, self.pairing)


class Classification(BaseModel):
    model_config = ConfigDict(frozen=True)

    flags: frozenset[ClassificationFlag] = frozenset()
    omega_symmetric: bool = False
    omega_shuffle_vanishing: bool = False


def _first(items: Sequence) -> tuple[tuple[int, ...], Fraction]:
    key, value = items[0]
    if key and isinstance(key[0], tuple):
        inputs, out = key
        return inputs + (out,), value
    return key, value


def check_pairing(basis: GradedBasis, matrix: Sequence[Sequence[Fraction | int]]) -> ValidationReport:
    report = ValidationReport(title="Bilinear pairing")
    n = len(basis)
    square = len(matrix) == n and all(len(row) == n for row in matrix)
    report.add("pairing shape", square, "" if square else f"expected a {n}x{n} matrix")
    if not square:
        return report
    matrix = [[Fraction(x) for x in row] for row in matrix]
    witness = degree_defect(basis, matrix)
    report.add("pairing degree 0", witness is None, "" if witness is None else "pairs vectors whose degrees do not sum to 0", witness)
    witness = symmetry_defect(basis, matrix)
    report.add("pairing symmetry", witness is None, "" if witness is None else "b(x,y) differs from the graded transpose", witness)
    rank = rational_rank(matrix, n).rank
    report.add("pairing nondegenerate", rank == n, f"rank {rank} of {n}")
    return report


def load_structure(
    basis: GradedBasis,
    b: BilinearPairing | Sequence[Sequence[Fraction | int]],
    flavor: Flavor,
    constants: Constants | Mapping[int, Constants],
    name: str = "",
    degrees: Mapping[int, int] | None = None,
) -> QuadraticStructure:
    """Build a structure from constants q(e_i, e_j) = sum_k c_ijk e_k on V.

    Strict flavors take a single mapping ((i, j), k) -> c_ijk. Homotopy flavors take a
    mapping from arity to such constants, each q_k of V-degree `degrees[k]` (2 - k by default).
    """
    matrix = b.matrix if isinstance(b, BilinearPairing) else b
    report = check_pairing(basis, matrix)
    if not report.passed:
        raise InvalidInputError(f"Invalid pairing for `{name or flavor}`: {', '.join(check.name for check in report.failures)}")
    pairing = b if isinstance(b, BilinearPairing) else BilinearPairing(basis=basis, matrix=matrix)

    # an empty homotopy structure is the zero binary coefficient
    per_arity = {2: constants} if flavor in STRICT_FLAVORS else dict(constants) or {2: {}}
    taylor = []
    for arity, entries in sorted(per_arity.items()):
        degree = 2 - arity if flavor in STRICT_FLAVORS else (degrees or {}).get(arity, 2 - arity)
        try:
            q = MultilinearMap(basis=basis, arity=arity, degree=degree, coefficients=entries, shifted=False)
        except ValidationError as e:
            raise InvalidInputError(f"Inhomogeneous structure constants in arity {arity}: {e.errors()[0]['msg']}") from e
        taylor.append(shift_map(q))

    log.info(f"Loaded {flavor} structure `{name}` of dimension {len(basis)} with Taylor arities {sorted(per_arity)}")
    return QuadraticStructure(name=name, basis=basis, pairing=pairing, flavor=flavor, taylor=taylor)


def _cyclicity_check(report: ValidationReport, name: str, form: MultilinearForm) -> None:
    if form.arity <= 1:
        report.add(name, True)
        return
    defect = permute_form(form, Permutation.rotation(form.arity)) - form
    if defect.is_zero():
        report.add(name, True)
        return
    witness, value = _first(defect.items())
    report.add(name, False, "structure form changes under rotation", witness, value)


def check_invariance(s: QuadraticStructure) -> ValidationReport:
    """b(q(x,y),z) = b(x,q(y,z)), tested as cyclicity of every structure form"""
    report = ValidationReport(title=f"Invariance of `{s.name or s.flavor}`")
    for q, form in zip(s.taylor, s.structure_forms):
        _cyclicity_check(report, "invariance" if not s.is_homotopy else f"b-quadratic Q{q.arity}", form)
    return report


def _accumulate_by_arity(target: dict, value) -> None:
    target[value.arity] = target[value.arity] + value if value.arity in target else value


def structure_equation(s: QuadraticStructure) -> ValidationReport:
    """[Q,Q] = 0 on coderivation coefficients, cross-checked against the self bracket of the structure forms"""
    report = ValidationReport(title=f"Structure equation of `{s.name or s.flavor}`")
    symmetric = s.is_lie_like
    if symmetric and not all(is_symmetric_map(q) for q in s.taylor):
        report.add("structure equation (maps)", False, "Taylor coefficients are not totally symmetric")
        return report

    forms = s.structure_forms
    use_forms = all(is_cyclic(f) for f in forms) and (not symmetric or all(is_symmetric_form(f) for f in forms))
    if not use_forms:
        log.info(f"Structure forms of `{s.name or s.flavor}` are not invariant, checking the map bracket only")

    maps: dict[int, MultilinearMap] = {}
    brackets: dict[int, MultilinearForm] = {}
    agree = True
    for q, f in zip(s.taylor, forms):
        for qp, g in zip(s.taylor, forms):
            m = bracket_sym_maps(q, qp) if symmetric else bracket_maps(q, qp)
            _accumulate_by_arity(maps, m)
            if not use_forms:
                continue
            if symmetric:
                bracket = pinczon_bracket_sym(f, g, s.pairing)
                expected = form_of_map(m, s.pairing) * (q.arity + qp.arity)
            else:
                bracket = pinczon_bracket(f, g, s.pairing)
                expected = form_of_map(m, s.pairing)
            agree = agree and (bracket - expected).is_zero()
            _accumulate_by_arity(brackets, bracket)

    nonzero = [maps[arity] for arity in sorted(maps) if not maps[arity].is_zero()]
    if nonzero:
        witness, value = _first(nonzero[0].items())
        report.add("structure equation (maps)", False, f"bracket of Q with itself has a nonzero arity {nonzero[0].arity} component", witness, value)
    else:
        report.add("structure equation (maps)", True)

    if use_forms:
        nonzero = [brackets[arity] for arity in sorted(brackets) if not brackets[arity].is_zero()]
        if nonzero:
            witness, value = _first(nonzero[0].items())
            report.add("structure equation (forms)", False, f"self bracket of the structure form is nonzero in arity {nonzero[0].arity}", witness, value)
        else:
            report.add("structure equation (forms)", True)
        report.add("structure equation routes agree", agree, "" if agree else "form bracket differs from the form of the map bracket")
    return report


def _graded_swap_defect(s: QuadraticStructure, sign: int) -> tuple[tuple[int, ...], Fraction] | None:
    # first ((i, j), k) with q(e_j, e_i) != sign (-1)^(|e_i||e_j|) q(e_i, e_j), on the unshifted law
    q = unshift_map(s.binary).coefficients
    degrees = s.basis.degrees
    for (inputs, out) in sorted(set(q) | {((j, i), k) for (i, j), k in q}):
        i, j = inputs
        swapped = q.get(((j, i), out), Fraction(0))
        koszul = -1 if (degrees[i] * degrees[j]) % 2 else 1
        if swapped != sign * koszul * q.get((inputs, out), Fraction(0)):
            return (i, j, out), q.get((inputs, out), Fraction(0))
    return None


def classify(s: QuadraticStructure) -> Classification:
    if s.is_homotopy:
        raise InvalidInputError(f"classify expects a strict structure, got {s.flavor}")
    q = s.binary
    flags: set[ClassificationFlag] = set()
    if bracket_maps(q, q).is_zero():
        flags.add("associative")
    if _graded_swap_defect(s, 1) is None:
        flags.add("commutative-sign")
    if _graded_swap_defect(s, -1) is None:
        flags.add("skew-sign")
        if bracket_sym_maps(q, q).is_zero():
            flags.add("jacobi")
    omega = s.structure_form
    return Classification(
        flags=frozenset(flags),
        omega_symmetric=is_symmetric_form(omega),
        omega_shuffle_vanishing=shuffle_vanishing_defect(omega, 1).is_zero(),
    )


def flavor_checks(s: QuadraticStructure) -> ValidationReport:
    report = ValidationReport(title=f"Flavor constraints of `{s.name or s.flavor}`")
    omega = s.structure_form
    if s.flavor == "commutative":
        defect = _graded_swap_defect(s, 1)
        report.add("commutativity", defect is None, "", *(defect or ()))
        shuffle = shuffle_vanishing_defect(omega, 1)
        if shuffle.is_zero():
            report.add("shuffle vanishing", True)
        else:
            report.add("shuffle vanishing", False, "structure form does not vanish on shuffle products", *_first(shuffle.items()))
    elif s.flavor == "lie":
        defect = _graded_swap_defect(s, -1)
        report.add("skew symmetry", defect is None, "", *(defect or ()))
        report.add("total symmetry", is_symmetric_form(omega), "" if is_symmetric_form(omega) else "structure form is not totally symmetric")
    return report


def validate_homotopy(s: QuadraticStructure) -> ValidationReport:
    report = ValidationReport(title=f"{s.flavor} structure `{s.name}`")
    degrees_ok = True
    for q, form in zip(s.taylor, s.structure_forms):
        degrees_ok = degrees_ok and q.degree == 1
        report.add(f"degree Q{q.arity}", q.degree == 1, f"degree {q.degree} on V[1]")
        _cyclicity_check(report, f"b-quadratic Q{q.arity}", form)
        if s.flavor == "c-infinity":
            _shuffle_map_check(report, q)
        elif s.flavor == "l-infinity":
            _symmetric_map_check(report, q)
    if degrees_ok:
        report.extend(structure_equation(s))
    return report


def _shuffle_map_check(report: ValidationReport, q: MultilinearMap) -> None:
    for p in range(1, q.arity):
        defect = shuffle_vanishing_defect_map(q, p)
        if not defect.is_zero():
            report.add(f"shuffle vanishing Q{q.arity}", False, f"nonzero on ({p},{q.arity - p}) shuffles", *_first(defect.items()))
            return
    report.add(f"shuffle vanishing Q{q.arity}", True)


def _symmetric_map_check(report: ValidationReport, q: MultilinearMap) -> None:
    for i in range(q.arity - 1):
        defect = permute_map(q, Permutation.transposition(q.arity, i, i + 1)) - q
        if not defect.is_zero():
            report.add(f"total symmetry Q{q.arity}", False, f"not symmetric in slots {i + 1} and {i + 2}", *_first(defect.items()))
            return
    report.add(f"total symmetry Q{q.arity}", True)


def verify_structure(s: QuadraticStructure) -> ValidationReport:
    """Every check of a structure, in a fixed order"""
    report = ValidationReport(title=f"Verification of `{s.name or s.flavor}` ({s.flavor})")
    report.extend(check_pairing(s.basis, s.pairing.matrix))
    if s.is_homotopy:
        return report.extend(validate_homotopy(s))
    report.extend(check_invariance(s))
    report.extend(structure_equation(s))
    return report.extend(flavor_checks(s))
