"""Exact rational arithmetic and exact dense linear algebra.

Every numeric quantity in this package is an exact rational
(`fractions.Fraction`). Floating point is never used: the downstream
tight-or-overtwisted verdicts flip on the exact sign of a determinant,
so a single rounding error could silently change an answer.

`fractions.Fraction` already maintains the canonical form the rest of
the package relies on (positive denominator, lowest terms, zero stored
as 0/1) on top of arbitrary-precision integers. The linear algebra
here is deliberately small and dense; linking matrices of surgery
presentations rarely exceed a few dozen rows, so asymptotics are a
non-issue but exactness is not negotiable.

Determinants use fraction-free Bareiss elimination: on integer
matrices (the common case) every intermediate pivot stays integral,
which avoids both rounding (there is none anyway) and the coefficient
blow-up of naive fractional elimination.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "DimensionMismatch",
    "Rational",
    "RationalLike",
    "SingularMatrix",
    "SquareMatrix",
    "as_rational",
    "det",
    "format_rational",
    "inner_product",
    "parse_rational",
    "solve",
]

#: The universal numeric type of the package.
Rational = Fraction

RationalLike = Union[int, str, Fraction]

_RATIONAL_FORMAT = re.compile(r"[+-]?[0-9]+(?:/[1-9][0-9]*)?")


class DimensionMismatch(ValueError):
    """Vector or matrix dimensions do not agree."""


class SingularMatrix(ValueError):
    """Linear solve attempted on a matrix with determinant zero."""


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction.

    Floats (and bools) are rejected outright; accepting them would
    invite silent loss of exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"not an exact rational: {value!r}")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse a rational written as "p/q", or "n" for an integer.

    The denominator, when present, must be a positive integer.
    Decimal notation is rejected: files and options exchange rationals
    exactly or not at all.
    """
    if not isinstance(text, str):
        raise ValueError(f"not a rational 'p/q' string: {text!r}")
    stripped = text.strip()
    if not _RATIONAL_FORMAT.fullmatch(stripped):
        raise ValueError(f"not a rational 'p/q' string: {text!r}")
    return Fraction(stripped)


def format_rational(value: RationalLike) -> str:
    """Render a rational as "p/q", or plain "p" when the denominator is 1."""
    return str(as_rational(value))


class SquareMatrix:
    """Immutable square matrix of exact rationals.

    Rows are stored as a tuple of tuples of Fraction; every operation
    treats the matrix as a value. Entries may be given as ints,
    Fractions or "p/q" strings.
    """

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[RationalLike]]):
        normalized = tuple(tuple(as_rational(entry) for entry in row) for row in rows)
        for index, row in enumerate(normalized):
            if len(row) != len(normalized):
                raise DimensionMismatch(
                    f"row {index} has {len(row)} entries, expected {len(normalized)}"
                )
        self._rows = normalized

    @classmethod
    def identity(cls, dimension: int) -> "SquareMatrix":
        return cls(
            tuple(
                tuple(Fraction(int(i == j)) for j in range(dimension))
                for i in range(dimension)
            )
        )

    @property
    def dimension(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, index: int) -> tuple[Fraction, ...]:
        return self._rows[index]

    def column(self, index: int) -> tuple[Fraction, ...]:
        return tuple(row[index] for row in self._rows)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def is_symmetric(self) -> bool:
        return all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.dimension)
            for j in range(i)
        )

    def apply(self, vector: Sequence[RationalLike]) -> tuple[Fraction, ...]:
        """Matrix-vector product, exact."""
        vec = tuple(as_rational(entry) for entry in vector)
        if len(vec) != self.dimension:
            raise DimensionMismatch(
                f"vector has {len(vec)} entries, matrix dimension is {self.dimension}"
            )
        return tuple(inner_product(row, vec) for row in self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = ", ".join(
            "[" + ", ".join(format_rational(x) for x in row) + "]" for row in self._rows
        )
        return f"SquareMatrix([{body}])"


def det(matrix: SquareMatrix) -> Fraction:
    """Exact determinant by fraction-free Bareiss elimination.

    The empty (0 x 0) matrix has determinant 1, so bordered and chain
    constructions compose correctly in the degenerate "no surgery"
    case.
    """
    n = matrix.dimension
    if n == 0:
        return Fraction(1)
    a = [list(row) for row in matrix.rows]
    sign = 1
    previous_pivot = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss step: the division by the previous pivot is exact.
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) / previous_pivot
            a[i][k] = Fraction(0)
        previous_pivot = pivot
    value = a[n - 1][n - 1]
    return -value if sign < 0 else value


def solve(matrix: SquareMatrix, vector: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    """Solve matrix . x = vector exactly.

    Raises SingularMatrix when the determinant vanishes (no pivot can
    be found), DimensionMismatch when the vector length is wrong.
    """
    n = matrix.dimension
    vec = tuple(as_rational(entry) for entry in vector)
    if len(vec) != n:
        raise DimensionMismatch(
            f"vector has {len(vec)} entries, matrix dimension is {n}"
        )
    if n == 0:
        return ()
    aug = [list(matrix.row(i)) + [vec[i]] for i in range(n)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot_row is None:
            raise SingularMatrix("matrix has determinant zero")
        if pivot_row != k:
            aug[k], aug[pivot_row] = aug[pivot_row], aug[k]
        pivot = aug[k][k]
        for i in range(k + 1, n):
            factor = aug[i][k] / pivot
            if factor == 0:
                continue
            for j in range(k, n + 1):
                aug[i][j] -= factor * aug[k][j]
    solution = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = aug[i][n]
        for j in range(i + 1, n):
            acc -= aug[i][j] * solution[j]
        solution[i] = acc / aug[i][i]
    return tuple(solution)


def inner_product(
    left: Sequence[RationalLike], right: Sequence[RationalLike]
) -> Fraction:
    """Exact dot product of two equal-length rational vectors."""
    a = tuple(as_rational(entry) for entry in left)
    b = tuple(as_rational(entry) for entry in right)
    if len(a) != len(b):
        raise DimensionMismatch(f"vector lengths differ: {len(a)} vs {len(b)}")
    total = Fraction(0)
    for x, y in zip(a, b):
        total += x * y
    return total
