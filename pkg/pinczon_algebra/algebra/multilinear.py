from collections.abc import Iterable, Iterator, Sequence
from fractions import Fraction
from logging import getLogger
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..exceptions import InvalidInputError
from .signs import GradedBasis, Permutation, _apply, _inverse, _koszul, eta

__all__ = (
    "MultilinearForm",
    "MultilinearMap",
    "cyclic_product",
    "cyclicize",
    "evaluate_form",
    "evaluate_map",
    "interior",
    "is_cyclic",
    "is_shuffle_vanishing",
    "is_shuffle_vanishing_map",
    "is_symmetric_form",
    "is_symmetric_map",
    "permute_form",
    "permute_map",
    "shift_map",
    "shuffle_vanishing_defect",
    "shuffle_vanishing_defect_map",
    "symmetric_product",
    "symmetrize_form",
    "symmetrize_map",
    "tensor_product",
    "unshift_map",
)

log = getLogger(__name__)

Scalar = Fraction | int


def _accumulate(target: dict, key: Any, value: Fraction) -> None:
    total = target.get(key, 0) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


class MultilinearForm(BaseModel):
    """Scalar valued k-linear form on V[1], stored sparsely over basis index tuples.

    A form of degree d may only be nonzero on tuples of total shifted degree -d.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    basis: GradedBasis
    arity: int = Field(ge=0)
    degree: int
    coefficients: dict[tuple[int, ...], Fraction] = Field(default_factory=dict)

    @field_validator("coefficients", mode="before")
    @classmethod
    def _to_fractions(cls, v):
        return {tuple(k): Fraction(c) for k, c in dict(v).items() if c}

    @model_validator(mode="after")
    def _check_homogeneous(self):
        n = len(self.basis)
        for key in self.coefficients:
            if len(key) != self.arity:
                raise ValueError(f"Tuple {key} does not match arity {self.arity}")
            if any(not 0 <= i < n for i in key):
                raise ValueError(f"Tuple {key} has indices outside a basis of dimension {n}")
            if self.basis.total(key) + self.degree != 0:
                raise ValueError(f"Form of degree {self.degree} cannot be nonzero on {key} (total shifted degree {self.basis.total(key)})")
        return self

    @classmethod
    def zero(cls, basis: GradedBasis, arity: int, degree: int = 0) -> "MultilinearForm":
        return cls(basis=basis, arity=arity, degree=degree)

    @classmethod
    def constant(cls, basis: GradedBasis, value: Scalar) -> "MultilinearForm":
        return cls(basis=basis, arity=0, degree=0, coefficients={(): value})

    @classmethod
    def linear(cls, basis: GradedBasis, index: int, value: Scalar = 1) -> "MultilinearForm":
        """value times the dual linear form of basis vector `index`"""
        return cls(basis=basis, arity=1, degree=-basis.shifted_degree(index), coefficients={(index,): value})

    def __call__(self, *indices: int) -> Fraction:
        return evaluate_form(self, indices)

    def is_zero(self) -> bool:
        return not self.coefficients

    def items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Coefficients in lexicographic order of their index tuples"""
        return sorted(self.coefficients.items())

    def _like(self, coefficients: dict) -> "MultilinearForm":
        return MultilinearForm(basis=self.basis, arity=self.arity, degree=self.degree, coefficients=coefficients)

    def _check_compatible(self, other: "MultilinearForm") -> None:
        if other.basis != self.basis or other.arity != self.arity:
            raise InvalidInputError(f"Cannot combine forms of arity {self.arity} and {other.arity} on different bases")
        if other.degree != self.degree and self.coefficients and other.coefficients:
            raise InvalidInputError(f"Cannot add forms of degrees {self.degree} and {other.degree}")

    def __add__(self, other: "MultilinearForm") -> "MultilinearForm":
        self._check_compatible(other)
        if not self.coefficients:
            return other
        coefficients = dict(self.coefficients)
        for key, value in other.coefficients.items():
            _accumulate(coefficients, key, value)
        return self._like(coefficients)

    def __neg__(self) -> "MultilinearForm":
        return self._like({k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other: "MultilinearForm") -> "MultilinearForm":
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> "MultilinearForm":
        return self._like({k: v * scalar for k, v in self.coefficients.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: Scalar) -> "MultilinearForm":
        return self._like({k: v / scalar for k, v in self.coefficients.items()})


class MultilinearMap(BaseModel):
    """k-linear map V[1]^k -> V[1], stored sparsely over (input tuple, output index).

    With `shifted=False` the same container holds a map on V itself, whose
    degree is read against unshifted degrees.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    basis: GradedBasis
    arity: int = Field(ge=0)
    degree: int
    coefficients: dict[tuple[tuple[int, ...], int], Fraction] = Field(default_factory=dict)
    shifted: bool = True

    @field_validator("coefficients", mode="before")
    @classmethod
    def _to_fractions(cls, v):
        return {(tuple(inputs), int(out)): Fraction(c) for (inputs, out), c in dict(v).items() if c}

    @model_validator(mode="after")
    def _check_homogeneous(self):
        n = len(self.basis)
        degrees = self.basis.shifted_degrees if self.shifted else self.basis.degrees
        for inputs, out in self.coefficients:
            if len(inputs) != self.arity:
                raise ValueError(f"Inputs {inputs} do not match arity {self.arity}")
            if any(not 0 <= i < n for i in (*inputs, out)):
                raise ValueError(f"Entry {(inputs, out)} has indices outside a basis of dimension {n}")
            if degrees[out] != self.degree + sum(degrees[i] for i in inputs):
                raise ValueError(f"Map of degree {self.degree} cannot send {inputs} to {out}")
        return self

    @classmethod
    def zero(cls, basis: GradedBasis, arity: int, degree: int = 1) -> "MultilinearMap":
        return cls(basis=basis, arity=arity, degree=degree)

    @classmethod
    def identity(cls, basis: GradedBasis) -> "MultilinearMap":
        return cls(basis=basis, arity=1, degree=0, coefficients={((i,), i): 1 for i in range(len(basis))})

    def __call__(self, *indices: int) -> dict[int, Fraction]:
        return evaluate_map(self, indices)

    def is_zero(self) -> bool:
        return not self.coefficients

    def items(self) -> list[tuple[tuple[tuple[int, ...], int], Fraction]]:
        return sorted(self.coefficients.items())

    def by_output(self) -> dict[int, list[tuple[tuple[int, ...], Fraction]]]:
        result: dict[int, list] = {}
        for (inputs, out), value in self.coefficients.items():
            result.setdefault(out, []).append((inputs, value))
        return result

    def _like(self, coefficients: dict) -> "MultilinearMap":
        return MultilinearMap(basis=self.basis, arity=self.arity, degree=self.degree, coefficients=coefficients, shifted=self.shifted)

    def __add__(self, other: "MultilinearMap") -> "MultilinearMap":
        if other.basis != self.basis or other.arity != self.arity or other.shifted != self.shifted:
            raise InvalidInputError(f"Cannot add maps of arity {self.arity} and {other.arity}")
        if other.degree != self.degree and self.coefficients and other.coefficients:
            raise InvalidInputError(f"Cannot add maps of degrees {self.degree} and {other.degree}")
        if not self.coefficients:
            return other
        coefficients = dict(self.coefficients)
        for key, value in other.coefficients.items():
            _accumulate(coefficients, key, value)
        return self._like(coefficients)

    def __neg__(self) -> "MultilinearMap":
        return self._like({k: -v for k, v in self.coefficients.items()})

    def __sub__(self, other: "MultilinearMap") -> "MultilinearMap":
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> "MultilinearMap":
        return self._like({k: v * scalar for k, v in self.coefficients.items()})

    __rmul__ = __mul__


def evaluate_form(f: MultilinearForm, indices: Sequence[int]) -> Fraction:
    if len(indices) != f.arity:
        raise InvalidInputError(f"Form of arity {f.arity} evaluated on {len(indices)} arguments")
    return f.coefficients.get(tuple(indices), Fraction(0))


def evaluate_map(q: MultilinearMap, indices: Sequence[int]) -> dict[int, Fraction]:
    if len(indices) != q.arity:
        raise InvalidInputError(f"Map of arity {q.arity} evaluated on {len(indices)} arguments")
    key = tuple(indices)
    return {out: value for (inputs, out), value in q.coefficients.items() if inputs == key}


def _check_size(tau: Permutation, arity: int) -> None:
    if len(tau) != arity:
        raise InvalidInputError(f"Permutation of size {len(tau)} acting on arity {arity}")


def _act(coefficients: Iterable[tuple[tuple[int, ...], Fraction]], shifted: Sequence[int], images: Sequence[int]) -> Iterator[tuple[tuple[int, ...], Fraction]]:
    # (f^tau)(t) = koszul(t, tau) f(tau.t), so the coefficient at u lands on t = tau^-1.u
    inverse = _inverse(images)
    for u, value in coefficients:
        t = _apply(inverse, u)
        yield t, _koszul([shifted[i] for i in t], images) * value


def _sum_forms(f: MultilinearForm, all_images: Iterable[Sequence[int]]) -> dict[tuple[int, ...], Fraction]:
    shifted = f.basis.shifted_degrees
    result: dict[tuple[int, ...], Fraction] = {}
    items = list(f.coefficients.items())
    for images in all_images:
        for key, value in _act(items, shifted, images):
            _accumulate(result, key, value)
    return result


def permute_form(f: MultilinearForm, tau: Permutation) -> MultilinearForm:
    _check_size(tau, f.arity)
    return f._like(_sum_forms(f, [tuple(i - 1 for i in tau.images)]))


def permute_map(q: MultilinearMap, tau: Permutation) -> MultilinearMap:
    _check_size(tau, q.arity)
    shifted = q.basis.shifted_degrees
    inverse = _inverse([i - 1 for i in tau.images])
    result: dict = {}
    for (inputs, out), value in q.coefficients.items():
        t = _apply(inverse, inputs)
        _accumulate(result, (t, out), _koszul([shifted[i] for i in t], tau.images) * value)
    return q._like(result)


def _rotations(n: int) -> list[tuple[int, ...]]:
    if n <= 1:
        return [tuple(range(n))]
    return [tuple((i + r) % n for i in range(n)) for r in range(n)]


def cyclicize(f: MultilinearForm) -> MultilinearForm:
    """Sum of the signed rotations of f, not divided by the arity"""
    return f._like(_sum_forms(f, _rotations(f.arity)))


def is_cyclic(f: MultilinearForm) -> bool:
    if f.arity <= 1:
        return True
    return permute_form(f, Permutation.rotation(f.arity)).coefficients == f.coefficients


def tensor_product(a: MultilinearForm, b: MultilinearForm) -> MultilinearForm:
    """(A (x) B)(x_1..x_{p+q}) = (-1)^(deg B * (x_1+..+x_p)) A(x_1..x_p) B(x_{p+1}..x_{p+q})"""
    if a.basis != b.basis:
        raise InvalidInputError("Cannot multiply forms on different bases")
    result: dict[tuple[int, ...], Fraction] = {}
    for u, x in a.coefficients.items():
        sign = -1 if (b.degree * a.basis.total(u)) % 2 else 1
        for v, y in b.coefficients.items():
            _accumulate(result, u + v, sign * x * y)
    return MultilinearForm(basis=a.basis, arity=a.arity + b.arity, degree=a.degree + b.degree, coefficients=result)


def cyclic_product(a: MultilinearForm, b: MultilinearForm) -> MultilinearForm:
    return cyclicize(tensor_product(a, b))


def interior(i: int, f: MultilinearForm) -> MultilinearForm:
    """Contraction of the first slot of f with the basis vector e_i"""
    if f.arity == 0:
        raise InvalidInputError("Cannot contract a 0-form")
    coefficients = {key[1:]: value for key, value in f.coefficients.items() if key[0] == i}
    return MultilinearForm(basis=f.basis, arity=f.arity - 1, degree=f.degree + f.basis.shifted_degree(i), coefficients=coefficients)


def _shuffles_fixing_last(p: int, q: int, fixed: int) -> list[tuple[int, ...]]:
    return [tuple(i - 1 for i in sigma.images) + tuple(range(p + q, p + q + fixed)) for sigma in Permutation.shuffles(p, q)]


def shuffle_vanishing_defect(f: MultilinearForm, p: int) -> MultilinearForm:
    """Sum over (p, k-p)-shuffles of the first k = arity-1 slots, the last slot held fixed"""
    k = f.arity - 1
    if not 0 < p < k:
        raise InvalidInputError(f"Split {p} out of range for a form of arity {f.arity}")
    return f._like(_sum_forms(f, _shuffles_fixing_last(p, k - p, 1)))


def shuffle_vanishing_defect_map(q: MultilinearMap, p: int) -> MultilinearMap:
    if not 0 < p < q.arity:
        raise InvalidInputError(f"Split {p} out of range for a map of arity {q.arity}")
    result = MultilinearMap.zero(q.basis, q.arity, q.degree)
    for sigma in Permutation.shuffles(p, q.arity - p):
        result = result + permute_map(q, sigma)
    return result


def is_shuffle_vanishing(f: MultilinearForm) -> bool:
    return all(shuffle_vanishing_defect(f, p).is_zero() for p in range(1, f.arity - 1))


def is_shuffle_vanishing_map(q: MultilinearMap) -> bool:
    return all(shuffle_vanishing_defect_map(q, p).is_zero() for p in range(1, q.arity))


def symmetrize_form(f: MultilinearForm) -> MultilinearForm:
    """Sum of f^sigma over the whole symmetric group"""
    return f._like(_sum_forms(f, [tuple(i - 1 for i in sigma.images) for sigma in Permutation.all(f.arity)]))


def symmetrize_map(q: MultilinearMap) -> MultilinearMap:
    result = MultilinearMap.zero(q.basis, q.arity, q.degree)
    for sigma in Permutation.all(q.arity):
        result = result + permute_map(q, sigma)
    return result


def symmetric_product(a: MultilinearForm, b: MultilinearForm) -> MultilinearForm:
    return symmetrize_form(tensor_product(a, b))


def is_symmetric_form(f: MultilinearForm) -> bool:
    return all(permute_form(f, Permutation.transposition(f.arity, i, i + 1)) == f for i in range(f.arity - 1))


def is_symmetric_map(q: MultilinearMap) -> bool:
    return all(permute_map(q, Permutation.transposition(q.arity, i, i + 1)) == q for i in range(q.arity - 1))


def shift_map(q: MultilinearMap) -> MultilinearMap:
    """Q(x_1..x_k) = eta_k(x_1..x_k) q(x_1..x_k), of degree |q| + k - 1 on V[1]"""
    if q.shifted:
        raise InvalidInputError("shift_map expects a map on V, got a map on V[1]")
    shifted = q.basis.shifted_degrees
    coefficients = {(inputs, out): eta(q.arity, [shifted[i] for i in inputs]) * value for (inputs, out), value in q.coefficients.items()}
    return MultilinearMap(basis=q.basis, arity=q.arity, degree=q.degree + q.arity - 1, coefficients=coefficients)


def unshift_map(q: MultilinearMap) -> MultilinearMap:
    if not q.shifted:
        raise InvalidInputError("unshift_map expects a map on V[1], got a map on V")
    shifted = q.basis.shifted_degrees
    coefficients = {(inputs, out): eta(q.arity, [shifted[i] for i in inputs]) * value for (inputs, out), value in q.coefficients.items()}
    return MultilinearMap(basis=q.basis, arity=q.arity, degree=q.degree - q.arity + 1, coefficients=coefficients, shifted=False)
