from collections.abc import Sequence
from fractions import Fraction
from itertools import combinations, product
from logging import getLogger
from random import Random
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..exceptions import InvalidInputError, InvalidModuleError, InvalidStructureError, ResourceLimitError
from .brackets import BilinearPairing, form_of_map, map_of_form, pinczon_bracket, pinczon_bracket_sym
from .linalg import rational_rank
from .multilinear import (
    MultilinearForm,
    MultilinearMap,
    _accumulate,
    _koszul,
    cyclicize,
    is_shuffle_vanishing_map,
    is_symmetric_map,
    shift_map,
    shuffle_vanishing_defect_map,
    symmetrize_map,
    unshift_map,
)
from .report import ValidationReport
from .signs import GradedBasis
from .structures import QuadraticStructure, structure_equation

__all__ = (
    "Cochain",
    "CochainFlavor",
    "CohomologyDims",
    "DEFAULT_SIZE_CAP",
    "ModuleData",
    "check_module",
    "check_phi_trials",
    "classical_differential",
    "cohomology_dims",
    "double_extension",
    "lift_cochain",
    "pinczon_differential",
    "random_cochain",
    "semidirect_basis",
    "verify_phi",
)

log = getLogger(__name__)

CochainFlavor = Literal["hochschild", "harrison", "chevalley"]
Action = dict[tuple[int, int, int], Fraction]

DEFAULT_SIZE_CAP = 20_000

_ALGEBRA_FLAVORS: dict[str, tuple[str, ...]] = {
    "hochschild": ("associative", "commutative"),
    "harrison": ("commutative",),
    "chevalley": ("lie",),
}


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _check_flavors(flavor: CochainFlavor, s: QuadraticStructure) -> None:
    if s.flavor not in _ALGEBRA_FLAVORS[flavor]:
        raise InvalidInputError(f"{flavor} cochains need a structure of flavor {' or '.join(_ALGEBRA_FLAVORS[flavor])}, got {s.flavor}")


def semidirect_basis(source: GradedBasis, target: GradedBasis) -> GradedBasis:
    """Basis of V + M, module vectors renamed when they clash with algebra vectors"""
    names = tuple(name if name not in source.names else f"{name}'" for name in target.names)
    return source.concat(GradedBasis(names=names, degrees=target.degrees))


class ModuleData(BaseModel):
    """A finite dimensional module M given by action constants.

    Keys are (v, m, out): `left_action` holds x_v . a_m and `right_action` holds a_m . x_v.
    The right action is derived from the left one for commutative and Lie algebras.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    basis: GradedBasis
    left_action: Action = Field(default_factory=dict)
    right_action: Action | None = Field(default=None)

    @field_validator("left_action", "right_action", mode="before")
    @classmethod
    def _to_fractions(cls, v):
        if v is None:
            return None
        return {tuple(k): Fraction(c) for k, c in dict(v).items() if c}

    @classmethod
    def trivial(cls, basis: GradedBasis) -> "ModuleData":
        return cls(basis=basis)

    @classmethod
    def regular(cls, s: QuadraticStructure) -> "ModuleData":
        """The algebra acting on itself, the adjoint module of a Lie algebra"""
        q = unshift_map(s.binary)
        left = {(i, j, k): c for ((i, j), k), c in q.coefficients.items()}
        right = None if s.flavor == "lie" else {(j, i, k): c for ((i, j), k), c in q.coefficients.items()}
        return cls(basis=s.basis, left_action=left, right_action=right)

    def right(self, s: QuadraticStructure) -> Action:
        degrees, module_degrees = s.basis.degrees, self.basis.degrees
        if s.flavor == "lie":
            return {(v, a, out): -_sign(degrees[v] * module_degrees[a]) * c for (v, a, out), c in self.left_action.items()}
        if self.right_action is not None:
            return self.right_action
        if s.flavor == "commutative":
            return {(v, a, out): _sign(degrees[v] * module_degrees[a]) * c for (v, a, out), c in self.left_action.items()}
        raise InvalidInputError("An associative algebra needs an explicit right action")


def _table(action: Action) -> dict[tuple[int, int], list[tuple[int, Fraction]]]:
    table: dict = {}
    for (v, a, out), c in action.items():
        table.setdefault((v, a), []).append((out, c))
    return table


def _act(table: dict, v: int, vector: dict[int, Fraction]) -> dict[int, Fraction]:
    result: dict[int, Fraction] = {}
    for a, x in vector.items():
        for out, c in table.get((v, a), ()):
            _accumulate(result, out, x * c)
    return result


def _combine(*terms: tuple[Fraction | int, dict[int, Fraction]]) -> dict[int, Fraction]:
    result: dict[int, Fraction] = {}
    for scale, vector in terms:
        for k, x in vector.items():
            _accumulate(result, k, scale * x)
    return result


def check_module(s: QuadraticStructure, m: ModuleData) -> None:
    """Raise InvalidModuleError at the first basis triple violating an action axiom"""
    n, p = len(s.basis), len(m.basis)
    degrees, module_degrees = s.basis.degrees, m.basis.degrees
    right = m.right(s)
    for name, action in (("left action", m.left_action), ("right action", right)):
        for v, a, out in action:
            if not (0 <= v < n and 0 <= a < p and 0 <= out < p):
                raise InvalidModuleError(f"{name} index range", (v, a, out))
            if module_degrees[out] != degrees[v] + module_degrees[a]:
                raise InvalidModuleError(f"{name} homogeneity", (v, a, out))

    law = _table({(i, j, k): c for ((i, j), k), c in unshift_map(s.binary).coefficients.items()})
    left, right = _table(m.left_action), _table(right)

    def product_then(table, x, y, vector):
        # (x y) acting on vector
        return _combine(*((c, _act(table, k, vector)) for k, c in law.get((x, y), ())))

    for x, y, a in product(range(n), range(n), range(p)):
        e = {a: Fraction(1)}
        if s.flavor == "lie":
            lhs = product_then(left, x, y, e)
            rhs = _combine((1, _act(left, x, _act(left, y, e))), (-_sign(degrees[x] * degrees[y]), _act(left, y, _act(left, x, e))))
            if lhs != rhs:
                raise InvalidModuleError("[x,y].a = x.(y.a) - y.(x.a)", (x, y, a))
            continue
        if product_then(left, x, y, e) != _act(left, x, _act(left, y, e)):
            raise InvalidModuleError("(xy).a = x.(y.a)", (x, y, a))
        if product_then(right, x, y, e) != _act(right, y, _act(right, x, e)):
            raise InvalidModuleError("a.(xy) = (a.x).y", (x, y, a))
        if _act(right, y, _act(left, x, e)) != _act(left, x, _act(right, y, e)):
            raise InvalidModuleError("(x.a).y = x.(a.y)", (x, y, a))


class Cochain(BaseModel):
    """A k-linear map c: V^k -> M of degree `degree` (0 unless given), keyed by (V-input tuple, M-output index)"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: GradedBasis
    target: GradedBasis
    arity: int = Field(ge=0)
    degree: int = 0
    flavor: CochainFlavor = "hochschild"
    coefficients: dict[tuple[tuple[int, ...], int], Fraction] = Field(default_factory=dict)

    @field_validator("coefficients", mode="before")
    @classmethod
    def _to_fractions(cls, v):
        return {(tuple(inputs), int(out)): Fraction(c) for (inputs, out), c in dict(v).items() if c}

    @model_validator(mode="after")
    def _check_flavor(self):
        n, p = len(self.source), len(self.target)
        for inputs, out in self.coefficients:
            if any(not 0 <= i < n for i in inputs) or not 0 <= out < p:
                raise ValueError(f"Cochain entry {(inputs, out)} is outside V^{self.arity} -> M")
        shifted = shift_map(self.to_map())
        if self.flavor == "chevalley" and not is_symmetric_map(shifted):
            raise ValueError("Chevalley cochains must be graded skew-symmetric")
        if self.flavor == "harrison" and not is_shuffle_vanishing_map(shifted):
            raise ValueError("Harrison cochains must vanish on shuffle products")
        return self

    @classmethod
    def zero(cls, source: GradedBasis, target: GradedBasis, arity: int, flavor: CochainFlavor = "hochschild", degree: int = 0) -> "Cochain":
        return cls(source=source, target=target, arity=arity, degree=degree, flavor=flavor)

    @classmethod
    def from_shifted(cls, q: MultilinearMap, source: GradedBasis, target: GradedBasis, flavor: CochainFlavor) -> "Cochain":
        """Read back a map on (V + M)[1] sending V-tuples into M"""
        unshifted = unshift_map(q)
        n = len(source)
        coefficients = {(inputs, out - n): c for (inputs, out), c in unshifted.coefficients.items()}
        return cls(source=source, target=target, arity=q.arity, degree=unshifted.degree, flavor=flavor, coefficients=coefficients)

    def is_zero(self) -> bool:
        return not self.coefficients

    def to_map(self, basis: GradedBasis | None = None) -> MultilinearMap:
        """c as a map on V + M (or a basis starting with V + M), not shifted"""
        basis = basis or semidirect_basis(self.source, self.target)
        n = len(self.source)
        coefficients = {(inputs, n + out): c for (inputs, out), c in self.coefficients.items()}
        return MultilinearMap(basis=basis, arity=self.arity, degree=self.degree, coefficients=coefficients, shifted=False)

    def shifted(self, basis: GradedBasis | None = None) -> MultilinearMap:
        return shift_map(self.to_map(basis))


class _Extension(BaseModel):
    """V + M + V* + M* with its hyperbolic pairing and the semidirect law"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    structure: QuadraticStructure
    module: ModuleData
    basis: GradedBasis
    pairing: BilinearPairing
    semidirect: MultilinearMap

    def lift(self, c: Cochain) -> MultilinearMap:
        return _cyclic_completion(c.shifted(self.basis), self.pairing)


def _semidirect_map(s: QuadraticStructure, m: ModuleData, basis: GradedBasis) -> MultilinearMap:
    # Q_W on a basis whose first dim V + dim M vectors are V then M
    n = len(s.basis)
    shifted, module_shifted = s.basis.shifted_degrees, m.basis.shifted_degrees
    coefficients: dict = dict(s.binary.coefficients)
    for (v, a, out), c in m.left_action.items():
        _accumulate(coefficients, ((v, n + a), n + out), _sign(shifted[v]) * c)
    for (v, a, out), c in m.right(s).items():
        _accumulate(coefficients, ((n + a, v), n + out), _sign(module_shifted[a]) * c)
    return MultilinearMap(basis=basis, arity=2, degree=1, coefficients=coefficients)


def _hyperbolic_pairing(w: GradedBasis, basis: GradedBasis) -> BilinearPairing:
    size = len(basis)
    matrix = [[0] * size for _ in range(size)]
    for i, degree in enumerate(w.degrees):
        matrix[len(w) + i][i] = 1
        matrix[i][len(w) + i] = _sign(degree)
    return BilinearPairing(basis=basis, matrix=matrix)


def _cyclic_completion(q: MultilinearMap, b: BilinearPairing) -> MultilinearMap:
    return map_of_form(cyclicize(form_of_map(q, b)), b)


def _extension(s: QuadraticStructure, m: ModuleData) -> _Extension:
    if s.is_homotopy:
        raise InvalidInputError(f"Double extensions need a strict structure, got {s.flavor}")
    check_module(s, m)
    w = semidirect_basis(s.basis, m.basis)
    basis = w.concat(w.dual())
    return _Extension(
        structure=s,
        module=m,
        basis=basis,
        pairing=_hyperbolic_pairing(w, basis),
        semidirect=_semidirect_map(s, m, basis),
    )


def double_extension(s: QuadraticStructure, m: ModuleData) -> QuadraticStructure:
    """The quadratic algebra (V + M) + (V + M)* with pairing g(x') + h(a') + g'(x) + h'(a)"""
    ext = _extension(s, m)
    law = _cyclic_completion(ext.semidirect, ext.pairing)
    log.info(f"Built the double extension of `{s.name or s.flavor}` by a {len(m.basis)}-dimensional module, dimension {len(ext.basis)}")
    return QuadraticStructure(name=f"{s.name}_double" if s.name else "", basis=ext.basis, pairing=ext.pairing, flavor=s.flavor, taylor=[law])


def lift_cochain(c: Cochain, s: QuadraticStructure, m: ModuleData) -> MultilinearMap:
    """The B-quadratic map on the double extension completing (0, C, sum_j C_j, 0)"""
    _check_flavors(c.flavor, s)
    return _extension(s, m).lift(c)


def pinczon_differential(s: QuadraticStructure, form: MultilinearForm, check: bool = True) -> MultilinearForm:
    """d_P L = {Omega, L}, with the symmetric bracket for Lie flavors"""
    if len(s.taylor) != 1:
        raise InvalidInputError("The Pinczon differential is defined here for a single Taylor coefficient")
    if check and not (report := structure_equation(s)).passed:
        raise InvalidStructureError(s.name or s.flavor, "; ".join(failure.name for failure in report.failures))
    omega = s.structure_forms[0]
    if s.is_lie_like:
        return pinczon_bracket_sym(omega, form, s.pairing)
    return pinczon_bracket(omega, form, s.pairing)


def _hochschild(law: MultilinearMap, cochain: MultilinearMap, n: int) -> dict:
    # [Q_W, C] on V-tuples, written out term by term
    shifted = law.basis.shifted_degrees
    degree = cochain.degree
    module_first: dict[int, list] = {}
    module_second: dict[int, list] = {}
    products: dict[int, list] = {}
    for ((x, y), out), c in law.coefficients.items():
        if x >= n > y:
            module_first.setdefault(x, []).append((y, out, c))
        elif y >= n > x:
            module_second.setdefault(y, []).append((x, out, c))
        elif x < n and y < n:
            products.setdefault(out, []).append((x, y, c))

    result: dict = {}
    for (u, a), g in cochain.coefficients.items():
        # C(x_1..x_k) . x_{k+1}
        for y, out, c in module_first.get(a, ()):
            _accumulate(result, (u + (y,), out), g * c)
        # x_0 . C(x_1..x_k)
        for x, out, c in module_second.get(a, ()):
            _accumulate(result, ((x,) + u, out), _sign(degree * shifted[x]) * g * c)
        # C(.., x_r x_{r+1}, ..)
        prefix = 0
        for r, y in enumerate(u):
            for x1, x2, c in products.get(y, ()):
                _accumulate(result, (u[:r] + (x1, x2) + u[r + 1 :], a), -_sign(degree + prefix) * g * c)
            prefix += shifted[y]
    return result


def _chevalley(law: MultilinearMap, cochain: MultilinearMap, n: int) -> dict:
    # one term per subset: Q(C(x_J), x_i) - (-1)^|C| C(Q(x_I), x_J)
    shifted = law.basis.shifted_degrees
    arity = cochain.arity + 1
    module_first: dict[int, list] = {}
    products: dict[int, list] = {}
    for ((x, y), out), c in law.coefficients.items():
        if x >= n > y:
            module_first.setdefault(x, []).append((y, out, c))
        elif x < n and y < n:
            products.setdefault(out, []).append((x, y, c))

    def place(first: Sequence[int], first_positions: Sequence[int], rest: Sequence[int]) -> tuple[tuple[int, ...], int]:
        x = [0] * arity
        images = [0] * arity
        others = [i for i in range(arity) if i not in first_positions]
        for t, position in enumerate(first_positions):
            x[position], images[position] = first[t], t
        for t, position in enumerate(others):
            x[position], images[position] = rest[t], len(first_positions) + t
        return tuple(x), _koszul([shifted[i] for i in x], images)

    result: dict = {}
    for (u, a), g in cochain.coefficients.items():
        for y, out, c in module_first.get(a, ()):
            for i in range(arity):
                key, sign = place(u, [j for j in range(arity) if j != i], (y,))
                _accumulate(result, (key, out), sign * g * c)
        if not u:
            continue
        for x1, x2, c in products.get(u[0], ()):
            for positions in combinations(range(arity), 2):
                key, sign = place((x1, x2), positions, u[1:])
                _accumulate(result, (key, a), -_sign(cochain.degree) * sign * g * c)
    return result


def _shifted_differential(flavor: CochainFlavor, law: MultilinearMap, cochain: MultilinearMap, n: int) -> MultilinearMap:
    coefficients = _chevalley(law, cochain, n) if flavor == "chevalley" else _hochschild(law, cochain, n)
    return MultilinearMap(basis=cochain.basis, arity=cochain.arity + 1, degree=cochain.degree + 1, coefficients=coefficients)


def classical_differential(c: Cochain, s: QuadraticStructure, m: ModuleData) -> Cochain:
    """Hochschild, Harrison or Chevalley coboundary of c, by the explicit formula"""
    _check_flavors(c.flavor, s)
    w = semidirect_basis(c.source, c.target)
    d = _shifted_differential(c.flavor, _semidirect_map(s, m, w), c.shifted(w), len(s.basis))
    return Cochain.from_shifted(d, c.source, c.target, c.flavor)


def _ratio(left: MultilinearMap, right: MultilinearMap) -> Fraction | None:
    if right.is_zero():
        return None
    key, value = right.items()[0]
    ratio = left.coefficients.get(key, Fraction(0)) / value
    return ratio if (left - right * ratio).is_zero() else None


def _verify_phi(ext: _Extension, c: Cochain) -> ValidationReport:
    s = ext.structure
    _check_flavors(c.flavor, s)
    report = ValidationReport(title=f"Chain map for a {c.flavor} {c.arity}-cochain on `{s.name or s.flavor}`")
    k = c.arity
    law = _cyclic_completion(ext.semidirect, ext.pairing)
    lifted = ext.lift(c)
    omega, omega_c = form_of_map(law, ext.pairing), form_of_map(lifted, ext.pairing)
    if c.flavor == "chevalley":
        left = map_of_form(pinczon_bracket_sym(omega, omega_c, ext.pairing), ext.pairing)
        expected = 2 + k
    else:
        left = map_of_form(pinczon_bracket(omega, omega_c, ext.pairing), ext.pairing)
        expected = 1
    d = _shifted_differential(c.flavor, ext.semidirect, c.shifted(ext.basis), len(s.basis))
    right = _cyclic_completion(d, ext.pairing)

    difference = left - right * expected
    measured = _ratio(left, right)
    detail = f"expected factor {expected}, measured {measured if measured is not None else 'n/a'}"
    if difference.is_zero():
        report.add("chain map", True, detail)
    else:
        key, value = difference.items()[0]
        report.add("chain map", False, detail, key[0] + (key[1],), value)
    return report


def verify_phi(c: Cochain, s: QuadraticStructure, m: ModuleData) -> ValidationReport:
    """d_P C~ = factor * lift(d c) on the double extension, factor 1 for Hochschild and Harrison and 2 + k for Chevalley"""
    return _verify_phi(_extension(s, m), c)


class CohomologyDims(BaseModel):
    model_config = ConfigDict(frozen=True)

    flavor: CochainFlavor
    arity: int
    degree: int = 0
    dimension: int = Field(description="Dimension of the cochain space")
    kernel: int = Field(description="Dimension of the cocycles")
    image: int = Field(description="Dimension of the coboundaries coming from one arity lower")

    @property
    def betti(self) -> int:
        return self.kernel - self.image


def _admissible(w: GradedBasis, n: int, arity: int, degree: int) -> list[tuple[tuple[int, ...], int]]:
    degrees = w.degrees
    return [
        (inputs, out)
        for inputs in product(range(n), repeat=arity)
        for out in range(n, len(w))
        if degrees[out] == degree + sum(degrees[i] for i in inputs)
    ]


def _elementary(w: GradedBasis, entries: Sequence[tuple[tuple[int, ...], int]], arity: int, degree: int) -> list[MultilinearMap]:
    # shifted elementary cochains, all of shifted degree degree + arity - 1
    return [MultilinearMap(basis=w, arity=arity, degree=degree + arity - 1, coefficients={entry: 1}) for entry in entries]


def _coordinates(maps: Sequence[MultilinearMap | dict]) -> list[list[Fraction]]:
    rows = [q.coefficients if isinstance(q, MultilinearMap) else q for q in maps]
    keys = sorted({key for row in rows for key in row})
    index = {key: i for i, key in enumerate(keys)}
    matrix = []
    for row in rows:
        dense = [Fraction(0)] * len(keys)
        for key, value in row.items():
            dense[index[key]] = value
        matrix.append(dense)
    return matrix


def _cochain_basis(flavor: CochainFlavor, w: GradedBasis, n: int, arity: int, degree: int) -> list[MultilinearMap]:
    if flavor == "chevalley":
        entries = [(inputs, out) for inputs, out in _admissible(w, n, arity, degree) if list(inputs) == sorted(inputs)]
        candidates = (symmetrize_map(q) for q in _elementary(w, entries, arity, degree))
        return [q for q in candidates if not q.is_zero()]

    elementary = _elementary(w, _admissible(w, n, arity, degree), arity, degree)
    if flavor == "hochschild" or arity < 2 or not elementary:
        return elementary
    defects = []
    for q in elementary:
        defect: dict = {}
        for p in range(1, arity):
            for key, value in shuffle_vanishing_defect_map(q, p).coefficients.items():
                defect[(p, key)] = value
        defects.append(defect)
    # columns are elementary cochains, the kernel is the space of shuffle vanishing cochains
    rows = _coordinates(defects)
    columns = [list(column) for column in zip(*rows)] if rows and rows[0] else []
    kernel = rational_rank(columns, len(elementary)).kernel
    basis = []
    for vector in kernel:
        coefficients: dict = {}
        for q, x in zip(elementary, vector):
            if x:
                for key, value in q.coefficients.items():
                    _accumulate(coefficients, key, x * value)
        basis.append(MultilinearMap(basis=w, arity=arity, degree=degree + arity - 1, coefficients=coefficients))
    return basis


def _rank(flavor: CochainFlavor, law: MultilinearMap, basis: Sequence[MultilinearMap], n: int) -> int:
    if not basis:
        return 0
    images = [_shifted_differential(flavor, law, q, n) for q in basis]
    matrix = _coordinates(images)
    if not matrix[0]:
        return 0
    rank = rational_rank(matrix).rank
    log.debug(f"Differential on {len(basis)} {flavor} cochains of arity {basis[0].arity} has rank {rank}")
    return rank


def cohomology_dims(
    s: QuadraticStructure,
    m: ModuleData,
    flavor: CochainFlavor,
    k: int,
    size_cap: int = DEFAULT_SIZE_CAP,
    degree: int = 0,
) -> CohomologyDims:
    """Cocycles, coboundaries and Betti number in arity k, by exact rank computations"""
    if k < 0:
        raise InvalidInputError(f"Cochain arity must be nonnegative, got {k}")
    _check_flavors(flavor, s)
    check_module(s, m)
    n, p = len(s.basis), len(m.basis)
    size = sum(n**j * p for j in range(max(k - 1, 0), k + 2))
    if size > size_cap:
        raise ResourceLimitError(size, size_cap)

    w = semidirect_basis(s.basis, m.basis)
    law = _semidirect_map(s, m, w)
    basis = _cochain_basis(flavor, w, n, k, degree)
    rank = _rank(flavor, law, basis, n)
    image = _rank(flavor, law, _cochain_basis(flavor, w, n, k - 1, degree), n) if k > 0 else 0
    log.info(f"{flavor} cohomology of `{s.name or s.flavor}` in arity {k}: {len(basis)} cochains, rank {rank}, coboundaries {image}")
    return CohomologyDims(flavor=flavor, arity=k, degree=degree, dimension=len(basis), kernel=len(basis) - rank, image=image)


def _random_coefficient(rng: Random, coefficient_range: int) -> int:
    return rng.choice([x for x in range(-coefficient_range, coefficient_range + 1) if x])


def random_cochain(
    s: QuadraticStructure,
    m: ModuleData,
    flavor: CochainFlavor,
    k: int,
    rng: Random,
    degree: int = 0,
    density: float = 0.3,
    coefficient_range: int = 3,
) -> Cochain:
    """Small integer cochain on a random share of the admissible tuples, projected to the flavor"""
    _check_flavors(flavor, s)
    n = len(s.basis)
    w = semidirect_basis(s.basis, m.basis)
    if flavor == "harrison":
        coefficients: dict = {}
        for q in _cochain_basis(flavor, w, n, k, degree):
            x = _random_coefficient(rng, coefficient_range)
            for key, value in q.coefficients.items():
                _accumulate(coefficients, key, x * value)
        shifted = MultilinearMap(basis=w, arity=k, degree=degree + k - 1, coefficients=coefficients)
        return Cochain.from_shifted(shifted, s.basis, m.basis, flavor)

    entries = _admissible(w, n, k, degree)
    chosen = rng.sample(entries, max(1, round(density * len(entries)))) if entries else []
    coefficients = {entry: _random_coefficient(rng, coefficient_range) for entry in sorted(chosen)}
    shifted = MultilinearMap(basis=w, arity=k, degree=degree + k - 1, coefficients=coefficients)
    if flavor == "chevalley":
        shifted = symmetrize_map(shifted)
    return Cochain.from_shifted(shifted, s.basis, m.basis, flavor)


def check_phi_trials(
    s: QuadraticStructure,
    m: ModuleData,
    flavor: CochainFlavor,
    k: int,
    trials: int,
    seed: int | None = None,
    degree: int = 0,
    density: float = 0.3,
    coefficient_range: int = 3,
) -> ValidationReport:
    """Run verify_phi on `trials` seeded random cochains"""
    _check_flavors(flavor, s)
    ext = _extension(s, m)
    rng = Random(seed)
    report = ValidationReport(title=f"{flavor} chain map on `{s.name or s.flavor}`, arity {k}, {trials} trials")
    for trial in range(trials):
        c = random_cochain(s, m, flavor, k, rng, degree=degree, density=density, coefficient_range=coefficient_range)
        check = _verify_phi(ext, c).checks[0]
        report.add(f"trial {trial + 1}", check.passed, check.detail, check.witness, check.value)
    log.info(f"{len(report.checks) - len(report.failures)}/{trials} chain map trials passed")
    return report
