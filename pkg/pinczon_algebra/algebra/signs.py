from collections.abc import Iterator, Sequence
from itertools import combinations, permutations
from typing import TypeVar

from pydantic import BaseModel, model_validator

from ..exceptions import InvalidInputError

__all__ = (
    "GradedBasis",
    "Permutation",
    "eta",
    "koszul_sign",
)

T = TypeVar("T")


class GradedBasis(BaseModel, frozen=True):
    """Named basis of a finite dimensional graded space.

    `degrees` are the degrees in V. The degree of a basis vector in V[1] is always
    derived from them and never stored.
    """

    names: tuple[str, ...]
    degrees: tuple[int, ...]

    @model_validator(mode="after")
    def _check_names_and_degrees(self):
        if len(self.names) != len(self.degrees):
            raise ValueError(f"Got {len(self.names)} names but {len(self.degrees)} degrees")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"Basis names must be distinct: {self.names}")
        return self

    @classmethod
    def from_degrees(cls, degrees: Sequence[int], prefix: str = "e") -> "GradedBasis":
        return cls(names=tuple(f"{prefix}{i + 1}" for i in range(len(degrees))), degrees=tuple(degrees))

    def __len__(self) -> int:
        return len(self.degrees)

    def shifted_degree(self, i: int) -> int:
        return self.degrees[i] - 1

    @property
    def shifted_degrees(self) -> tuple[int, ...]:
        return tuple(d - 1 for d in self.degrees)

    def shifted(self, indices: Sequence[int]) -> tuple[int, ...]:
        shifted = self.shifted_degrees
        return tuple(shifted[i] for i in indices)

    def total(self, indices: Sequence[int]) -> int:
        """Total shifted degree of a tuple of basis indices"""
        shifted = self.shifted_degrees
        return sum(shifted[i] for i in indices)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def concat(self, *others: "GradedBasis") -> "GradedBasis":
        names, degrees = list(self.names), list(self.degrees)
        for other in others:
            names.extend(other.names)
            degrees.extend(other.degrees)
        return GradedBasis(names=tuple(names), degrees=tuple(degrees))

    def dual(self, suffix: str = "*") -> "GradedBasis":
        return GradedBasis(names=tuple(f"{n}{suffix}" for n in self.names), degrees=tuple(-d for d in self.degrees))


class Permutation(BaseModel, frozen=True):
    """A bijection of {1..n}, stored 1-based as in tuple notation.

    Calling the permutation on a 0-based position returns the 0-based image.
    `apply` moves the element in position i to position sigma(i).
    """

    images: tuple[int, ...]

    @model_validator(mode="after")
    def _check_bijection(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"Not a permutation of 1..{len(self.images)}: {self.images}")
        return self

    @classmethod
    def from_zero_based(cls, images: Sequence[int]) -> "Permutation":
        return cls(images=tuple(i + 1 for i in images))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(images=tuple(range(1, n + 1)))

    @classmethod
    def rotation(cls, n: int) -> "Permutation":
        """The generator of the cyclic group: moves position i to i+1 and the last slot to the front"""
        return cls.from_zero_based([(i + 1) % n for i in range(n)]) if n else cls(images=())

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(n))
        images[i], images[j] = images[j], images[i]
        return cls.from_zero_based(images)

    @classmethod
    def all(cls, n: int) -> Iterator["Permutation"]:
        for images in permutations(range(1, n + 1)):
            yield cls(images=images)

    @classmethod
    def shuffles(cls, p: int, q: int) -> Iterator["Permutation"]:
        """(p, q)-shuffles: order preserving on the first p and on the last q positions"""
        n = p + q
        for first in combinations(range(n), p):
            rest = [i for i in range(n) if i not in first]
            yield cls.from_zero_based([*first, *rest])

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i] - 1

    def apply(self, sequence: Sequence[T]) -> tuple[T, ...]:
        if len(sequence) != len(self.images):
            raise InvalidInputError(f"Permutation of size {len(self.images)} applied to a sequence of length {len(sequence)}")
        result = [None] * len(sequence)
        for i, value in enumerate(sequence):
            result[self.images[i] - 1] = value
        return tuple(result)

    def compose(self, other: "Permutation") -> "Permutation":
        """(self o other)(i) = self(other(i))"""
        if len(other) != len(self):
            raise InvalidInputError(f"Cannot compose permutations of sizes {len(self)} and {len(other)}")
        return Permutation(images=tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        images = [0] * len(self.images)
        for i, j in enumerate(self.images):
            images[j - 1] = i + 1
        return Permutation(images=tuple(images))

    def is_identity(self) -> bool:
        return all(j == i + 1 for i, j in enumerate(self.images))


def koszul_sign(shifted_degrees: Sequence[int], sigma: Permutation) -> int:
    """Sign of moving graded symbols along `sigma`: one factor -1 per inverted pair of odd symbols"""
    if len(shifted_degrees) != len(sigma):
        raise InvalidInputError(f"Got {len(shifted_degrees)} degrees for a permutation of size {len(sigma)}")
    return _koszul(shifted_degrees, sigma.images)


def eta(a: int, shifted_degrees: Sequence[int]) -> int:
    exponent = sum((a - j) * x for j, x in enumerate(shifted_degrees, start=1))
    return -1 if exponent % 2 else 1


def _koszul(shifted_degrees: Sequence[int], images: Sequence[int]) -> int:
    # images may be 0- or 1-based, only their order matters
    inversions = 0
    for i in range(len(images)):
        if not shifted_degrees[i] % 2:
            continue
        for j in range(i + 1, len(images)):
            if shifted_degrees[j] % 2 and images[i] > images[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def _apply(images: Sequence[int], sequence: Sequence[T]) -> tuple[T, ...]:
    # 0-based images, element i moves to position images[i]
    result = [None] * len(sequence)
    for i, value in enumerate(sequence):
        result[images[i]] = value
    return tuple(result)


def _inverse(images: Sequence[int]) -> tuple[int, ...]:
    result = [0] * len(images)
    for i, j in enumerate(images):
        result[j] = i
    return tuple(result)
