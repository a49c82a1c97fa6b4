from collections.abc import Sequence
from fractions import Fraction
from logging import getLogger

from pydantic import BaseModel, ConfigDict, Field
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ..exceptions import DegeneratePairingError, InvalidInputError

__all__ = (
    "Elimination",
    "inverse",
    "rational_rank",
)

log = getLogger(__name__)

Matrix = Sequence[Sequence[Fraction | int]]


class Elimination(BaseModel):
    """Result of an exact row reduction"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rank: int = Field(ge=0)
    columns: int = Field(ge=0)
    pivots: tuple[int, ...] = ()
    kernel: list[list[Fraction]] = Field(default_factory=list, description="Basis of the right kernel, one vector per free column")

    @property
    def nullity(self) -> int:
        return self.columns - self.rank


def _to_domain(matrix: Matrix, columns: int) -> DomainMatrix:
    rows = []
    for row in matrix:
        if len(row) != columns:
            raise InvalidInputError(f"Ragged matrix: expected {columns} columns, got {len(row)}")
        rows.append([QQ(Fraction(x).numerator, Fraction(x).denominator) for x in row])
    return DomainMatrix(rows, (len(rows), columns), QQ)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def rational_rank(matrix: Matrix, columns: int | None = None) -> Elimination:
    """Exact rank and right kernel of a rational matrix.

    `columns` is required when the matrix has no rows.
    """
    if columns is None:
        if not matrix:
            raise InvalidInputError("Column count is required for a matrix without rows")
        columns = len(matrix[0])
    if not matrix or not columns:
        kernel = [[Fraction(int(i == j)) for i in range(columns)] for j in range(columns)]
        return Elimination(rank=0, columns=columns, kernel=kernel)

    reduced, pivots = _to_domain(matrix, columns).rref()
    rows = reduced.to_list()
    pivots = tuple(pivots)
    log.debug(f"Reduced a {len(matrix)}x{columns} matrix to rank {len(pivots)}")

    kernel = []
    for free in (j for j in range(columns) if j not in pivots):
        vector = [Fraction(0)] * columns
        vector[free] = Fraction(1)
        for row, pivot in enumerate(pivots):
            vector[pivot] = -_to_fraction(rows[row][free])
        kernel.append(vector)
    return Elimination(rank=len(pivots), columns=columns, pivots=pivots, kernel=kernel)


def inverse(matrix: Matrix) -> list[list[Fraction]]:
    n = len(matrix)
    if not n:
        return []
    domain = _to_domain(matrix, n)
    rank = len(domain.rref()[1])
    if rank < n:
        raise DegeneratePairingError(n, rank)
    return [[_to_fraction(x) for x in row] for row in domain.inv().to_list()]
