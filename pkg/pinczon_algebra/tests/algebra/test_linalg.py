from fractions import Fraction

from pytest import raises

from pinczon_algebra import DegeneratePairingError, InvalidInputError, inverse, rational_rank


def test_rational_rank():
    result = rational_rank([[1, 2], [2, 4]])
    assert result.rank == 1
    assert result.nullity == 1
    assert result.pivots == (0,)
    assert result.kernel == [[Fraction(-2), Fraction(1)]]


def test_rational_rank_fractions():
    result = rational_rank([[Fraction(1, 3), Fraction(2, 3)], [0, 1]])
    assert result.rank == 2
    assert result.kernel == []


def test_rational_rank_degenerate_shapes():
    assert rational_rank([[0, 0], [0, 0]]).kernel == [[1, 0], [0, 1]]
    assert rational_rank([], columns=2).nullity == 2
    with raises(InvalidInputError):
        rational_rank([])
    with raises(InvalidInputError):
        rational_rank([[1, 2], [3]])


def test_inverse():
    assert inverse([[2, 0], [0, 4]]) == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]
    assert inverse([]) == []
    with raises(DegeneratePairingError):
        inverse([[1, 2], [2, 4]])
