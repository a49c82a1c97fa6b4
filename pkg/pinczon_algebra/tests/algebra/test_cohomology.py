from fractions import Fraction
from itertools import combinations, product
from random import Random

from helpers import random_cyclic_form, random_symmetric_form
from pydantic import ValidationError
from pytest import mark, raises
from sympy import Matrix, Rational

from pinczon_algebra import (
    Cochain,
    GradedBasis,
    InvalidInputError,
    InvalidModuleError,
    InvalidStructureError,
    ModuleData,
    MultilinearForm,
    ResourceLimitError,
    check_module,
    check_phi_trials,
    classical_differential,
    cohomology_dims,
    double_extension,
    form_of_map,
    is_cyclic,
    lift_cochain,
    load_structure,
    pinczon_differential,
    random_cochain,
    unshift_map,
    verify_phi,
    verify_structure,
)


def test_module_data_regular(sl2, matrices, regular_bimodule):
    adjoint = ModuleData.regular(sl2)
    assert adjoint.right_action is None
    assert adjoint.left_action[(0, 1, 2)] == 1
    regular = ModuleData.regular(matrices)
    assert regular.left_action == regular_bimodule.left_action
    assert regular.right_action == regular_bimodule.right_action


def test_check_module(sl2, adjoint, matrices, regular_bimodule, diagonal, diagonal_regular):
    check_module(sl2, adjoint)
    check_module(matrices, regular_bimodule)
    check_module(diagonal, diagonal_regular)


def test_check_module_failure(sl2):
    # e and h both act by 1, so [e,f] = h acts by 1 while e.(f.a) - f.(e.a) = 0
    m = ModuleData(basis=GradedBasis.from_degrees([0], prefix="m"), left_action={(2, 0, 0): 1, (0, 0, 0): 1})
    with raises(InvalidModuleError) as e:
        check_module(sl2, m)
    assert e.value.witness == (0, 1, 0)


def test_check_module_needs_right_action(matrices):
    with raises(InvalidInputError):
        check_module(matrices, ModuleData.trivial(matrices.basis))


def test_double_extension_abelian(abelian, trivial_module):
    d = double_extension(abelian, trivial_module)
    assert len(d.basis) == 4
    assert d.binary.is_zero()
    assert verify_structure(d).passed


def test_double_extension_sl2(sl2, adjoint):
    d = double_extension(sl2, adjoint)
    assert len(d.basis) == 12
    assert d.flavor == "lie"
    assert d.name == "sl2_double"
    assert verify_structure(d).passed


def test_double_extension_matrices(matrices, regular_bimodule):
    d = double_extension(matrices, regular_bimodule)
    assert len(d.basis) == 16
    assert verify_structure(d).passed


def test_double_extension_rejects_homotopy(sl2, adjoint):
    s = load_structure(sl2.basis, sl2.pairing, "l-infinity", {2: {}})
    with raises(InvalidInputError):
        double_extension(s, adjoint)


def test_cochain_validation(sl2, adjoint):
    with raises(ValidationError):
        Cochain(source=sl2.basis, target=adjoint.basis, arity=2, flavor="chevalley", coefficients={((0, 1), 0): 1})
    c = Cochain(source=sl2.basis, target=adjoint.basis, arity=2, flavor="chevalley", coefficients={((0, 1), 0): 1, ((1, 0), 0): -1})
    assert not c.is_zero()
    with raises(ValidationError):
        Cochain(source=sl2.basis, target=adjoint.basis, arity=1, coefficients={((3,), 0): 1})


def test_classical_differential_one_dim(one_dim):
    m = ModuleData.regular(one_dim)
    c = Cochain(source=one_dim.basis, target=m.basis, arity=1, coefficients={((0,), 0): 1})
    d = classical_differential(c, one_dim, m)
    assert d.arity == 2
    assert d.coefficients == {((0, 0), 0): Fraction(1)}


FLAVOR_DATA = {
    "hochschild": ("matrices", "regular_bimodule"),
    "chevalley": ("sl2", "adjoint"),
    "harrison": ("diagonal", "diagonal_regular"),
}

TRIALS = 25


@mark.parametrize("k", [0, 1, 2])
@mark.parametrize("flavor", sorted(FLAVOR_DATA))
def test_classical_differential_squares_to_zero(request, flavor, k):
    s, m = (request.getfixturevalue(name) for name in FLAVOR_DATA[flavor])
    rng = Random(3)
    for _ in range(TRIALS):
        c = random_cochain(s, m, flavor, k, rng)
        d = classical_differential(c, s, m)
        assert d.arity == k + 1
        assert classical_differential(d, s, m).is_zero()


def test_classical_differential_flavor_mismatch(matrices, regular_bimodule):
    c = Cochain.zero(matrices.basis, regular_bimodule.basis, 1, flavor="chevalley")
    with raises(InvalidInputError):
        classical_differential(c, matrices, regular_bimodule)


def test_lift_cochain_is_b_quadratic(sl2, adjoint):
    c = random_cochain(sl2, adjoint, "chevalley", 2, Random(1))
    lifted = lift_cochain(c, sl2, adjoint)
    d = double_extension(sl2, adjoint)
    assert lifted.basis == d.basis
    assert is_cyclic(form_of_map(lifted, d.pairing))


def test_pinczon_differential(sl2, abelian, matrices):
    omega = sl2.structure_form
    assert pinczon_differential(sl2, omega).is_zero()
    alpha = MultilinearForm.linear(abelian.basis, 0)
    assert pinczon_differential(abelian, alpha).is_zero()
    alpha = MultilinearForm.linear(matrices.basis, 0)
    once = pinczon_differential(matrices, alpha)
    assert once.arity == 2
    assert pinczon_differential(matrices, once).is_zero()


@mark.parametrize("name", ["sl2", "matrices"])
def test_pinczon_differential_squares_to_zero(request, name):
    s = request.getfixturevalue(name)
    make = random_symmetric_form if s.is_lie_like else random_cyclic_form
    rng = Random(13)
    for _ in range(TRIALS):
        form = make(rng, s.basis, rng.choice([1, 2, 3]))
        once = pinczon_differential(s, form)
        assert once.arity == form.arity + 1
        assert pinczon_differential(s, once, check=False).is_zero()


def test_pinczon_differential_needs_structure(sl2_as_associative):
    with raises(InvalidStructureError):
        pinczon_differential(sl2_as_associative, sl2_as_associative.structure_form)


@mark.parametrize("k,betti", [(0, 1), (1, 1)])
def test_cohomology_abelian(abelian, trivial_module, k, betti):
    dims = cohomology_dims(abelian, trivial_module, "chevalley", k)
    assert dims.dimension == 1
    assert dims.betti == betti


@mark.parametrize("k", [0, 1, 2])
def test_cohomology_sl2_adjoint(sl2, adjoint, k):
    assert cohomology_dims(sl2, adjoint, "chevalley", k).betti == 0


def test_cohomology_matrices(matrices, regular_bimodule):
    center = cohomology_dims(matrices, regular_bimodule, "hochschild", 0)
    assert center.dimension == 4
    assert center.betti == 1
    derivations = cohomology_dims(matrices, regular_bimodule, "hochschild", 1)
    assert derivations.dimension == 16
    assert derivations.betti == 0


def test_cohomology_harrison(diagonal, diagonal_regular):
    dims = cohomology_dims(diagonal, diagonal_regular, "harrison", 2)
    # shuffle vanishing binary cochains are the symmetric ones
    assert dims.dimension == 6
    assert dims.betti == 0


def test_cohomology_size_cap(sl2, adjoint):
    with raises(ResourceLimitError):
        cohomology_dims(sl2, adjoint, "chevalley", 2, size_cap=10)
    with raises(InvalidInputError):
        cohomology_dims(sl2, adjoint, "hochschild", 1)
    with raises(InvalidInputError):
        cohomology_dims(sl2, adjoint, "chevalley", -1)


def test_verify_phi_zero(sl2, adjoint):
    report = verify_phi(Cochain.zero(sl2.basis, adjoint.basis, 1, flavor="chevalley"), sl2, adjoint)
    assert report.passed


def test_verify_phi_one_dim(one_dim):
    m = ModuleData.regular(one_dim)
    c = Cochain(source=one_dim.basis, target=m.basis, arity=1, coefficients={((0,), 0): 1})
    report = verify_phi(c, one_dim, m)
    assert report.passed
    assert "measured 1" in report["chain map"].detail


def test_check_phi_trial_names(matrices, regular_bimodule):
    report = check_phi_trials(matrices, regular_bimodule, "hochschild", 1, 3, seed=11)
    assert report.passed
    assert [check.name for check in report.checks] == ["trial 1", "trial 2", "trial 3"]


@mark.parametrize("k", [1, 2])
@mark.parametrize("flavor", sorted(FLAVOR_DATA))
def test_check_phi(request, flavor, k):
    s, m = (request.getfixturevalue(name) for name in FLAVOR_DATA[flavor])
    report = check_phi_trials(s, m, flavor, k, TRIALS, seed=2)
    assert report.passed
    assert len(report.checks) == TRIALS


@mark.parametrize("k,factor", [(1, 3), (2, 4)])
def test_check_phi_chevalley_factor(sl2, adjoint, k, factor):
    report = check_phi_trials(sl2, adjoint, "chevalley", k, 5, seed=7)
    assert report.passed
    assert all(check.detail.startswith(f"expected factor {factor},") for check in report.checks)
    assert any(check.detail.endswith(f"measured {factor}") for check in report.checks)


def test_check_phi_is_reproducible(sl2, adjoint):
    first = random_cochain(sl2, adjoint, "chevalley", 2, Random(42))
    second = random_cochain(sl2, adjoint, "chevalley", 2, Random(42))
    assert first == second


def _sort_sign(t: tuple[int, ...]) -> int:
    if len(set(t)) < len(t):
        return 0
    inversions = sum(1 for i in range(len(t)) for j in range(i + 1, len(t)) if t[i] > t[j])
    return -1 if inversions % 2 else 1


def _tables(s, m):
    products: dict = {}
    for ((x, y), out), c in unshift_map(s.binary).coefficients.items():
        products.setdefault((x, y), []).append((out, c))
    left: dict = {}
    for (v, a, out), c in m.left_action.items():
        left.setdefault((v, a), []).append((out, c))
    right: dict = {}
    for (v, a, out), c in m.right(s).items():
        right.setdefault((v, a), []).append((out, c))
    return products, left, right


def _hochschild_column(tables, n: int, inputs: tuple[int, ...], a: int) -> dict:
    # d c(x_0..x_k) = x_0.c(x_1..) + sum_r (-1)^(r+1) c(.., x_r x_(r+1), ..) + (-1)^(k+1) c(x_0..x_(k-1)).x_k
    products, left, right = tables
    k = len(inputs)
    column: dict = {}

    def add(key, value):
        column[key] = column.get(key, 0) + value

    for x in range(n):
        for out, c in left.get((x, a), ()):
            add(((x,) + inputs, out), c)
        for out, c in right.get((x, a), ()):
            add((inputs + (x,), out), (-1) ** (k + 1) * c)
    for r in range(k):
        for (x1, x2), entries in products.items():
            for out, c in entries:
                if out == inputs[r]:
                    add((inputs[:r] + (x1, x2) + inputs[r + 1 :], a), (-1) ** (r + 1) * c)
    return column


def _chevalley_column(tables, n: int, inputs: tuple[int, ...], a: int) -> dict:
    # d c(x_0..x_k) = sum_i (-1)^i x_i.c(..) + sum_(i<j) (-1)^(i+j) c([x_i, x_j], ..), on increasing tuples
    products, left, _ = tables
    k = len(inputs)
    column: dict = {}
    for subset in combinations(range(n), k + 1):
        for i, x in enumerate(subset):
            rest = subset[:i] + subset[i + 1 :]
            if rest == inputs:
                for out, c in left.get((x, a), ()):
                    column[(subset, out)] = column.get((subset, out), 0) + (-1) ** i * c
        for i, j in combinations(range(k + 1), 2):
            rest = tuple(x for t, x in enumerate(subset) if t not in (i, j))
            for out, c in products.get((subset[i], subset[j]), ()):
                sign = _sort_sign((out,) + rest)
                if sign and tuple(sorted((out,) + rest)) == inputs:
                    column[(subset, a)] = column.get((subset, a), 0) + (-1) ** (i + j) * sign * c
    return column


def _brute_rank(flavor: str, s, m, k: int) -> tuple[int, int]:
    """Number of cochains of arity k and the rank of the coboundary map on them"""
    if k < 0:
        return 0, 0
    n, p = len(s.basis), len(m.basis)
    tables = _tables(s, m)
    if flavor == "chevalley":
        columns = [_chevalley_column(tables, n, inputs, a) for inputs in combinations(range(n), k) for a in range(p)]
    else:
        columns = [_hochschild_column(tables, n, inputs, a) for inputs in product(range(n), repeat=k) for a in range(p)]
    rows = sorted({key for column in columns for key, value in column.items() if value})
    if not rows:
        return len(columns), 0
    matrix = Matrix([[Rational(column.get(key, 0)) for column in columns] for key in rows])
    return len(columns), matrix.rank()


@mark.parametrize(
    "flavor,names,k",
    [
        ("chevalley", ("sl2", "adjoint"), 0),
        ("chevalley", ("sl2", "adjoint"), 1),
        ("chevalley", ("sl2", "adjoint"), 2),
        ("chevalley", ("abelian", "trivial_module"), 1),
        ("hochschild", ("matrices", "regular_bimodule"), 0),
        ("hochschild", ("matrices", "regular_bimodule"), 1),
        ("hochschild", ("matrices", "regular_bimodule"), 2),
        ("hochschild", ("diagonal", "diagonal_regular"), 1),
        ("hochschild", ("diagonal", "diagonal_regular"), 2),
    ],
)
def test_cohomology_matches_brute_force_ranks(request, flavor, names, k):
    s, m = (request.getfixturevalue(name) for name in names)
    dimension, rank = _brute_rank(flavor, s, m, k)
    _, image = _brute_rank(flavor, s, m, k - 1)
    dims = cohomology_dims(s, m, flavor, k)
    assert (dims.dimension, dims.kernel, dims.image) == (dimension, dimension - rank, image)


def test_matrices_are_rigid(matrices, regular_bimodule):
    dims = cohomology_dims(matrices, regular_bimodule, "hochschild", 2)
    assert dims.dimension == 64
    assert dims.betti == 0
