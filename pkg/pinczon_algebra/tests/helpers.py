from itertools import product
from random import Random

from pinczon_algebra import (
    BilinearPairing,
    GradedBasis,
    MultilinearForm,
    MultilinearMap,
    Permutation,
    QuadraticStructure,
    cyclicize,
    map_of_form,
    permute_form,
    symmetrize_form,
)
from pinczon_algebra.algebra.multilinear import _accumulate
from pinczon_algebra.utils import _get_calling_file

GRADED_SPACES = {
    "even": ([0, 0, 0], [[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
    "mixed": ([0, 0, 1, -1], [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]),
    "wide": ([1, -1, 2, -2], [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
    "full": (
        [0, 0, 1, -1, 2, -2],
        [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, -1, 0, 0, 0], [0, 0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 0]],
    ),
}


def get_calling_file(offset=2):
    return _get_calling_file(offset)


def graded_pairing(name: str) -> BilinearPairing:
    degrees, matrix = GRADED_SPACES[name]
    return BilinearPairing(basis=GradedBasis.from_degrees(degrees), matrix=matrix)


def random_form(rng: Random, basis: GradedBasis, arity: int, terms: int = 4) -> MultilinearForm:
    """Homogeneous form with small integer coefficients, its degree set by a random first tuple"""
    n = len(basis)
    first = tuple(rng.randrange(n) for _ in range(arity))
    degree = -basis.total(first)
    admissible = [key for key in product(range(n), repeat=arity) if basis.total(key) == -degree]
    coefficients: dict = {}
    for key in [first, *rng.sample(admissible, min(terms, len(admissible)))]:
        _accumulate(coefficients, key, rng.choice([-3, -2, -1, 1, 2, 3]))
    return MultilinearForm(basis=basis, arity=arity, degree=degree, coefficients=coefficients)


def random_cyclic_form(rng: Random, basis: GradedBasis, arity: int) -> MultilinearForm:
    return cyclicize(random_form(rng, basis, arity))


def random_symmetric_form(rng: Random, basis: GradedBasis, arity: int) -> MultilinearForm:
    return symmetrize_form(random_form(rng, basis, arity))


def _parity(images: tuple[int, ...]) -> int:
    inversions = sum(1 for i in range(len(images)) for j in range(i + 1, len(images)) if images[i] > images[j])
    return -1 if inversions % 2 else 1


def alternate_form(f: MultilinearForm) -> MultilinearForm:
    """sum_sigma sgn(sigma) f^sigma, on top of the Koszul signs of the action"""
    result = MultilinearForm.zero(f.basis, f.arity, f.degree)
    for sigma in Permutation.all(f.arity):
        result = result + permute_form(f, sigma) * _parity(sigma.images)
    return result


def random_block_change(rng: Random, basis: GradedBasis) -> list[list[int]]:
    """Invertible integer matrix P mixing only basis vectors of equal degree, P[u][t] the e_u component of P e_t"""
    n = len(basis)
    p = [[int(i == j) * rng.choice([-2, -1, 1, 2]) for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j and basis.degrees[i] == basis.degrees[j]:
            x = rng.choice([-1, 1, 2])
            # row operation row_i += x row_j keeps P invertible
            p[i] = [a + x * b for a, b in zip(p[i], p[j])]
    return p


def transport_form(f: MultilinearForm, p: list[list[int]]) -> MultilinearForm:
    """f^P(e_t1, ..., e_tk) = f(P e_t1, ..., P e_tk)"""
    n = len(f.basis)
    columns = {u: [t for t in range(n) if p[u][t]] for u in range(n)}
    coefficients: dict = {}
    for key, value in f.coefficients.items():
        for t in product(*(columns[u] for u in key)):
            weight = value
            for u, v in zip(key, t):
                weight *= p[u][v]
            _accumulate(coefficients, t, weight)
    return MultilinearForm(basis=f.basis, arity=f.arity, degree=f.degree, coefficients=coefficients)


def transport_pairing(b: BilinearPairing, p: list[list[int]]) -> BilinearPairing:
    n = len(b.basis)
    matrix = [[sum(p[u][i] * b(u, v) * p[v][j] for u in range(n) for v in range(n)) for j in range(n)] for i in range(n)]
    return BilinearPairing(basis=b.basis, matrix=matrix)


def ternary_l_infinity() -> QuadraticStructure:
    """L-infinity structure with Q2 = 0 and a single symmetric Q3.

    Q3(e, e, e) lands in the partner of h and Q3(e, e, h) in the partner of e, so Q3 o Q3 = 0.
    """
    b = graded_pairing("wide")
    omega = symmetrize_form(MultilinearForm(basis=b.basis, arity=4, degree=3, coefficients={(0, 0, 0, 3): 1}))
    return QuadraticStructure(name="ternary", basis=b.basis, pairing=b, flavor="l-infinity", taylor=[MultilinearMap.zero(b.basis, 2), map_of_form(omega, b)])
