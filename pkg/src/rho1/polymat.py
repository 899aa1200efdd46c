"""Exact linear algebra over Laurent polynomials.

`det_fraction_free` is Bareiss elimination: every division along the way
is exact in the polynomial ring, so no rational-function normal forms are
needed and intermediate growth stays bounded by minor sizes.
`scaled_inverse` reuses one forward elimination of the augmented system
[M | I] and back-substitutes fraction-freely, producing the pair (H, d)
with M*H = H*M = d*I and d = det(M).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .laurent import ZERO, ONE, LaurentPoly


class SingularMatrixError(ArithmeticError):
    """Raised when a scaled inverse of a singular matrix is requested."""


class PolyMatrix:
    """A square matrix of LaurentPoly entries."""

    __slots__ = ("size", "rows")

    def __init__(self, rows: Sequence[Sequence[LaurentPoly]]):
        self.size = len(rows)
        self.rows = [list(r) for r in rows]
        for r in self.rows:
            if len(r) != self.size:
                raise ValueError("matrix must be square")

    @staticmethod
    def identity(m: int) -> "PolyMatrix":
        return PolyMatrix([[ONE if i == j else ZERO for j in range(m)]
                           for i in range(m)])

    @staticmethod
    def zeros(m: int) -> "PolyMatrix":
        return PolyMatrix([[ZERO] * m for _ in range(m)])

    def __getitem__(self, key: tuple[int, int]) -> LaurentPoly:
        i, j = key
        return self.rows[i][j]

    def __setitem__(self, key: tuple[int, int], value: LaurentPoly) -> None:
        i, j = key
        self.rows[i][j] = value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.size == other.size and self.rows == other.rows

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.size != other.size:
            raise ValueError("size mismatch")
        m = self.size
        out = PolyMatrix.zeros(m)
        for i in range(m):
            row = self.rows[i]
            for j in range(m):
                acc = ZERO
                for k in range(m):
                    if row[k] and other.rows[k][j]:
                        acc = acc + row[k] * other.rows[k][j]
                out.rows[i][j] = acc
        return out

    def scale(self, c: LaurentPoly) -> "PolyMatrix":
        return PolyMatrix([[c * e for e in row] for row in self.rows])

    def copy_rows(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]"
                         for row in self.rows)

    def __repr__(self) -> str:
        return f"PolyMatrix(size={self.size})"


@dataclass(frozen=True)
class GreenMatrix:
    """A scaled matrix inverse: entry (a, b) of the inverse is numerators[a, b] / denominator."""

    numerators: PolyMatrix
    denominator: LaurentPoly

    def entry(self, i: int, j: int) -> tuple[LaurentPoly, LaurentPoly]:
        return self.numerators[i, j], self.denominator

    @property
    def size(self) -> int:
        return self.numerators.size

    def evaluate_entry(self, i: int, j: int, t0) -> float:
        return self.numerators[i, j].evaluate(t0) / self.denominator.evaluate(t0)


def _span(p: LaurentPoly) -> int:
    return p.max_exp - p.min_exp


def _choose_pivot(rows: list[list[LaurentPoly]], col: int, start: int) -> int | None:
    """Index of the nonzero entry in `col` at/below `start` with the smallest
    exponent span (ties to the topmost row); None when the column is zero."""
    best = None
    best_span = None
    for r in range(start, len(rows)):
        entry = rows[r][col]
        if entry.is_zero:
            continue
        s = _span(entry)
        if best is None or s < best_span:
            best, best_span = r, s
    return best


def _forward_eliminate(rows: list[list[LaurentPoly]], width: int) -> tuple[int, list[LaurentPoly]] | None:
    """Bareiss forward pass on `rows` (m rows of `width` entries, the left
    m columns forming the square system).  Mutates `rows` in place into an
    upper-triangular left block.  Returns (sign, pivots) or None when the
    left block is singular."""
    m = len(rows)
    sign = 1
    prev = ONE
    pivots: list[LaurentPoly] = []
    for k in range(m):
        piv = _choose_pivot(rows, k, k)
        if piv is None:
            return None
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        pivot = rows[k][k]
        pivots.append(pivot)
        for i in range(k + 1, m):
            head = rows[i][k]
            if head.is_zero:
                # Bareiss still rescales untouched rows to keep every entry
                # an exact minor of the input.
                for j in range(k + 1, width):
                    if not rows[i][j].is_zero:
                        rows[i][j] = (pivot * rows[i][j]).exact_div(prev)
            else:
                for j in range(k + 1, width):
                    num = pivot * rows[i][j] - head * rows[k][j]
                    rows[i][j] = num.exact_div(prev) if num else ZERO
                rows[i][k] = ZERO
        prev = pivot
    return sign, pivots


def det_fraction_free(matrix: PolyMatrix) -> LaurentPoly:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = matrix.size
    if m == 0:
        return ONE
    rows = matrix.copy_rows()
    result = _forward_eliminate(rows, m)
    if result is None:
        return ZERO
    sign, pivots = result
    det = pivots[-1]
    return -det if sign < 0 else det


def scaled_inverse(matrix: PolyMatrix) -> GreenMatrix:
    """Exact scaled inverse (H, d) with matrix*H = H*matrix = d*identity.

    Raises SingularMatrixError when det(matrix) is the zero polynomial.
    """
    m = matrix.size
    if m == 0:
        return GreenMatrix(PolyMatrix([]), ONE)
    # One elimination of the augmented system [M | I].
    rows = [list(matrix.rows[i]) + [ONE if j == i else ZERO for j in range(m)]
            for i in range(m)]
    result = _forward_eliminate(rows, 2 * m)
    if result is None:
        raise SingularMatrixError(
            f"matrix is singular (zero determinant), size {m}x{m}: "
            f"row 0 = [{', '.join(str(e) for e in matrix.rows[0])}]")
    sign, pivots = result
    det = -pivots[-1] if sign < 0 else pivots[-1]
    # Fraction-free back substitution, one right-hand column at a time:
    # U x = det * b  has polynomial solutions (entries of the adjugate),
    # and each division by the pivot above is exact.
    inverse = PolyMatrix.zeros(m)
    for col in range(m):
        x: list[LaurentPoly] = [ZERO] * m
        for i in range(m - 1, -1, -1):
            acc = det * rows[i][m + col]
            for j in range(i + 1, m):
                if not rows[i][j].is_zero and not x[j].is_zero:
                    acc = acc - rows[i][j] * x[j]
            x[i] = acc.exact_div(pivots[i]) if acc else ZERO
        for i in range(m):
            inverse[i, col] = x[i]
    return GreenMatrix(inverse, det)


def cofactor_det(matrix: PolyMatrix) -> LaurentPoly:
    """Brute-force determinant by first-row cofactor expansion.

    Exponential; test oracle only.
    """
    m = matrix.size
    if m == 0:
        return ONE
    if m == 1:
        return matrix[0, 0]
    total = ZERO
    for j in range(m):
        entry = matrix[0, j]
        if entry.is_zero:
            continue
        sub = PolyMatrix([[matrix[i, c] for c in range(m) if c != j]
                          for i in range(1, m)])
        term = entry * cofactor_det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total
