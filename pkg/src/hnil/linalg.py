"""Dense exact linear algebra over the rationals.

Every cohomology, quotient, and homology computation in this package
reduces to row reduction of small dense matrices with Fraction entries.
Pivoting is deterministic (first nonzero entry, scanning left to right)
so that all downstream bases and reports are byte-for-byte reproducible.
"""

from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(*values) -> Vector:
    """Build a vector of Fractions from ints/strings/Fractions."""
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix, row-major Fraction entries."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows) -> "Matrix":
        rows = [tuple(Fraction(x) for x in r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("rows have unequal lengths")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols, nrows=None) -> "Matrix":
        cols = [tuple(Fraction(x) for x in c) for c in cols]
        if cols:
            nrows = len(cols[0])
            if any(len(c) != nrows for c in cols):
                raise ValueError("columns have unequal lengths")
        elif nrows is None:
            nrows = 0
        entries = tuple(cols[j][i] for i in range(nrows) for j in range(len(cols)))
        return cls(nrows, len(cols), entries)

    @classmethod
    def zeros(cls, rows, cols) -> "Matrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n) -> "Matrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    def at(self, i, j) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def mul_vec(self, x) -> Vector:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(
            sum((self.at(i, j) * x[j] for j in range(self.cols)), ZERO)
            for i in range(self.rows)
        )


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and the strictly increasing pivot columns."""
    work = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    r = 0
    for c in range(m.cols):
        pivot_row = next((i for i in range(r, m.rows) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = ONE / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(m.rows):
            if i != r and work[i][c] != 0:
                factor = work[i][c]
                work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    reduced = Matrix(m.rows, m.cols, tuple(x for row in work for x in row))
    return reduced, tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[Vector]:
    """Basis of the null space in the canonical RREF parametrization.

    One vector per free column, in ascending column order, with the free
    coordinate set to 1.
    """
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for r, p in enumerate(pivots):
            v[p] = -reduced.at(r, free)
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b) -> Vector | None:
    """Some x with m*x = b, or None when the system is inconsistent.

    Returns the RREF particular solution: free coordinates are set to 0.
    """
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    augmented = Matrix(
        m.rows,
        m.cols + 1,
        tuple(
            x
            for i in range(m.rows)
            for x in (*m.row(i), Fraction(b[i]))
        ),
    )
    reduced, pivots = rref(augmented)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for r, p in enumerate(pivots):
        x[p] = reduced.at(r, m.cols)
    return tuple(x)


def in_span(v, basis) -> Vector | None:
    """Coefficients c with sum(c_i * basis_i) = v, or None if v is outside the span."""
    basis = [tuple(Fraction(x) for x in w) for w in basis]
    v = tuple(Fraction(x) for x in v)
    if any(len(w) != len(v) for w in basis):
        raise ValueError("vectors have unequal lengths")
    m = Matrix.from_columns(basis, nrows=len(v))
    return solve(m, v)


def row_space_basis(vectors, length=None) -> list[Vector]:
    """Canonical (RREF) basis of the span of the given vectors."""
    vectors = list(vectors)
    if not vectors:
        return []
    m = Matrix.from_rows(vectors)
    reduced, pivots = rref(m)
    return [reduced.row(i) for i in range(len(pivots))]
