from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from logging import getLogger
from math import factorial

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..exceptions import InvalidInputError
from .linalg import inverse, rational_rank
from .multilinear import (
    MultilinearForm,
    MultilinearMap,
    _accumulate,
    _koszul,
    cyclicize,
    is_cyclic,
    is_symmetric_form,
    is_symmetric_map,
    symmetrize_form,
)
from .signs import GradedBasis

__all__ = (
    "BilinearPairing",
    "DualBasis",
    "bracket_maps",
    "bracket_sym_maps",
    "compose_maps",
    "dual_basis",
    "form_of_map",
    "is_b_quadratic",
    "map_of_form",
    "pinczon_bracket",
    "pinczon_bracket_sym",
)

log = getLogger(__name__)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


class BilinearPairing(BaseModel):
    """Degree 0 graded-symmetric bilinear form b on V, b[i][j] = b(e_i, e_j).

    Nondegeneracy is not enforced on construction, see `is_nondegenerate` and `dual_basis`.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    basis: GradedBasis
    matrix: tuple[tuple[Fraction, ...], ...]

    @field_validator("matrix", mode="before")
    @classmethod
    def _to_fractions(cls, v):
        return tuple(tuple(Fraction(x) for x in row) for row in v)

    @model_validator(mode="after")
    def _check_pairing(self):
        n = len(self.basis)
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError(f"Pairing matrix must be {n}x{n}")
        if (witness := degree_defect(self.basis, self.matrix)) is not None:
            raise ValueError(f"Pairing has nonzero entry at {witness} between degrees that do not sum to 0")
        if (witness := symmetry_defect(self.basis, self.matrix)) is not None:
            raise ValueError(f"Pairing is not graded-symmetric at {witness}")
        return self

    @classmethod
    def identity(cls, basis: GradedBasis) -> "BilinearPairing":
        n = len(basis)
        return cls(basis=basis, matrix=[[int(i == j) for j in range(n)] for i in range(n)])

    def __call__(self, i: int, j: int) -> Fraction:
        return self.matrix[i][j]

    def symplectic(self, i: int, j: int) -> Fraction:
        """B(e_i, e_j) = (-1)^deg(e_i) b(e_i, e_j) with deg the shifted degree"""
        return _sign(self.basis.shifted_degree(i)) * self.matrix[i][j]

    def rank(self) -> int:
        return rational_rank(self.matrix, len(self.basis)).rank

    def is_nondegenerate(self) -> bool:
        return self.rank() == len(self.basis)

    @property
    def inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return _cached_inverse(self.matrix)


def degree_defect(basis: GradedBasis, matrix: Sequence[Sequence[Fraction]]) -> tuple[int, int] | None:
    for i, row in enumerate(matrix):
        for j, value in enumerate(row):
            if value and basis.degrees[i] + basis.degrees[j] != 0:
                return (i, j)
    return None


def symmetry_defect(basis: GradedBasis, matrix: Sequence[Sequence[Fraction]]) -> tuple[int, int] | None:
    for i, row in enumerate(matrix):
        for j in range(i, len(row)):
            if row[j] != _sign(basis.degrees[i] * basis.degrees[j]) * matrix[j][i]:
                return (i, j)
    return None


@lru_cache(maxsize=64)
def _cached_inverse(matrix: tuple[tuple[Fraction, ...], ...]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(row) for row in inverse(matrix))


class DualBasis(BaseModel):
    """Row l of `primal_to_dual` expresses e'_l in the basis (e_j), so that b(e'_l, e_i) = delta_li"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    pairing: BilinearPairing
    primal_to_dual: tuple[tuple[Fraction, ...], ...]

    def vector(self, index: int) -> dict[int, Fraction]:
        return {j: value for j, value in enumerate(self.primal_to_dual[index]) if value}


def dual_basis(b: BilinearPairing) -> DualBasis:
    return DualBasis(pairing=b, primal_to_dual=b.inverse)


def _check_basis(*objects) -> GradedBasis:
    basis = objects[0].basis
    if any(o.basis != basis for o in objects[1:]):
        raise InvalidInputError("Operands live on different bases")
    return basis


def _check_shifted(*maps: MultilinearMap) -> None:
    if any(not q.shifted for q in maps):
        raise InvalidInputError("Expected maps on V[1], got a map on V; use shift_map first")


def compose_maps(q: MultilinearMap, qp: MultilinearMap) -> MultilinearMap:
    """Q o Q'(x_1..x_n) = sum_r (-1)^(|Q'| (x_1+..+x_r)) Q(x_1..x_r, Q'(x_{r+1}..x_{r+k'}), ..)"""
    basis = _check_basis(q, qp)
    _check_shifted(q, qp)
    arity = q.arity + qp.arity - 1
    degree = q.degree + qp.degree
    if q.arity == 0:
        return MultilinearMap.zero(basis, max(arity, 0), degree)

    inner = qp.by_output()
    shifted = basis.shifted_degrees
    result: dict = {}
    for (w, out), a in q.coefficients.items():
        prefix = 0
        for r, m in enumerate(w):
            sign = _sign(qp.degree * prefix)
            for u, c in inner.get(m, ()):
                _accumulate(result, (w[:r] + u + w[r + 1 :], out), sign * a * c)
            prefix += shifted[m]
    return MultilinearMap(basis=basis, arity=arity, degree=degree, coefficients=result)


def bracket_maps(q: MultilinearMap, qp: MultilinearMap) -> MultilinearMap:
    """[Q, Q'] = Q o Q' - (-1)^(|Q||Q'|) Q' o Q"""
    return compose_maps(q, qp) - compose_maps(qp, q) * _sign(q.degree * qp.degree)


def _insert_symmetric(q: MultilinearMap, qp: MultilinearMap) -> dict:
    # sum over subsets J of size k' of koszul(x -> (x_J, x_I)) Q(Q'(x_J), x_I)
    shifted = q.basis.shifted_degrees
    arity = q.arity + qp.arity - 1
    by_first: dict[int, list] = {}
    for (w, out), a in q.coefficients.items():
        by_first.setdefault(w[0], []).append((w[1:], out, a))

    splits = []
    for positions in combinations(range(arity), qp.arity):
        rest = tuple(i for i in range(arity) if i not in positions)
        images = [0] * arity
        for t, p in enumerate(positions):
            images[p] = t
        for t, p in enumerate(rest):
            images[p] = qp.arity + t
        splits.append((positions, rest, images))

    result: dict = {}
    for (u, m), c in qp.coefficients.items():
        for tail, out, a in by_first.get(m, ()):
            for positions, rest, images in splits:
                x = [0] * arity
                for t, p in enumerate(positions):
                    x[p] = u[t]
                for t, p in enumerate(rest):
                    x[p] = tail[t]
                sign = _koszul([shifted[i] for i in x], images)
                _accumulate(result, (tuple(x), out), sign * a * c)
    return result


def bracket_sym_maps(q: MultilinearMap, qp: MultilinearMap) -> MultilinearMap:
    """Bracket of coderivations of the symmetric coalgebra, on totally symmetric coefficients"""
    basis = _check_basis(q, qp)
    _check_shifted(q, qp)
    if not (is_symmetric_map(q) and is_symmetric_map(qp)):
        raise InvalidInputError("bracket_sym_maps expects totally symmetric maps")
    arity = q.arity + qp.arity - 1
    degree = q.degree + qp.degree
    if q.arity == 0 and qp.arity == 0:
        return MultilinearMap.zero(basis, max(arity, 0), degree)

    first = MultilinearMap(basis=basis, arity=arity, degree=degree, coefficients=_insert_symmetric(q, qp) if q.arity else {})
    second = MultilinearMap(basis=basis, arity=arity, degree=degree, coefficients=_insert_symmetric(qp, q) if qp.arity else {})
    return first - second * _sign(q.degree * qp.degree)


def form_of_map(q: MultilinearMap, b: BilinearPairing) -> MultilinearForm:
    """Omega_Q(x_1..x_{k+1}) = B(Q(x_1..x_k), x_{k+1})"""
    basis = _check_basis(q, b)
    _check_shifted(q)
    rows = [[(j, value) for j, value in enumerate(row) if value] for row in b.matrix]
    result: dict = {}
    for (inputs, m), a in q.coefficients.items():
        sign = _sign(basis.shifted_degree(m))
        for j, value in rows[m]:
            _accumulate(result, inputs + (j,), sign * a * value)
    return MultilinearForm(basis=basis, arity=q.arity + 1, degree=q.degree + 2, coefficients=result)


def map_of_form(f: MultilinearForm, b: BilinearPairing) -> MultilinearMap:
    """The unique Q with form_of_map(Q, b) = f"""
    basis = _check_basis(f, b)
    if f.arity == 0:
        raise InvalidInputError("map_of_form expects a form of arity at least 1")
    inv = b.inverse
    columns = [[(out, value * _sign(basis.shifted_degree(out))) for out, value in enumerate(row) if value] for row in inv]
    result: dict = {}
    for key, c in f.coefficients.items():
        for out, value in columns[key[-1]]:
            _accumulate(result, (key[:-1], out), c * value)
    return MultilinearMap(basis=basis, arity=f.arity - 1, degree=f.degree - 2, coefficients=result)


def is_b_quadratic(q: MultilinearMap, b: BilinearPairing) -> bool:
    return is_cyclic(form_of_map(q, b))


def _contract(f: MultilinearForm, g: MultilinearForm, b: BilinearPairing) -> dict:
    # sum_l -(-1)^(deg(e_l)(deg g + 1)) i(e_l)f (x) i(e'_l)g, before cyclic or symmetric projection
    basis = f.basis
    shifted = basis.shifted_degrees
    duals = [[(j, p) for j, p in enumerate(row) if p] for row in b.inverse]

    f_by_first: dict[int, list] = {}
    for key, a in f.coefficients.items():
        f_by_first.setdefault(key[0], []).append((key[1:], a))
    g_by_first: dict[int, list] = {}
    for key, c in g.coefficients.items():
        g_by_first.setdefault(key[0], []).append((key[1:], c))

    result: dict = {}
    for i, f_rest in f_by_first.items():
        contracted: dict = {}
        for j, p in duals[i]:
            for rest, c in g_by_first.get(j, ()):
                _accumulate(contracted, rest, p * c)
        if not contracted:
            continue
        sign_i = -_sign(shifted[i] * (g.degree + 1))
        # all j paired with i share one degree
        contracted_degree = g.degree + shifted[duals[i][0][0]]
        for u, a in f_rest:
            sign = sign_i * _sign(contracted_degree * basis.total(u))
            for v, c in contracted.items():
                _accumulate(result, u + v, sign * a * c)
    return result


def _bracket_shape(f: MultilinearForm, g: MultilinearForm) -> tuple[int, int]:
    return max(f.arity + g.arity - 2, 0), f.degree + g.degree - 2


def pinczon_bracket(f: MultilinearForm, g: MultilinearForm, b: BilinearPairing) -> MultilinearForm:
    """{f, g} = sum_l i(e_l)f . i(e'_l)g, the cyclic product taken with Koszul signs"""
    basis = _check_basis(f, g, b)
    if not (is_cyclic(f) and is_cyclic(g)):
        raise InvalidInputError("pinczon_bracket expects cyclic forms")
    arity, degree = _bracket_shape(f, g)
    if f.arity == 0 or g.arity == 0:
        return MultilinearForm.zero(basis, arity, degree)
    raw = MultilinearForm(basis=basis, arity=arity, degree=degree, coefficients=_contract(f, g, b))
    return cyclicize(raw)


def pinczon_bracket_sym(f: MultilinearForm, g: MultilinearForm, b: BilinearPairing) -> MultilinearForm:
    """Bracket induced on totally symmetric forms, (k + k') sum_l i(e_l)f . i(e'_l)g.

    The product of the symmetric pieces runs over shuffles, which is the full symmetrization
    divided by k! k'! for forms of arities k + 1 and k' + 1.
    """
    basis = _check_basis(f, g, b)
    if not (is_symmetric_form(f) and is_symmetric_form(g)):
        raise InvalidInputError("pinczon_bracket_sym expects totally symmetric forms")
    arity, degree = _bracket_shape(f, g)
    if f.arity == 0 or g.arity == 0:
        return MultilinearForm.zero(basis, arity, degree)
    raw = MultilinearForm(basis=basis, arity=arity, degree=degree, coefficients=_contract(f, g, b))
    return symmetrize_form(raw) * Fraction(max(arity, 1), factorial(f.arity - 1) * factorial(g.arity - 1))
