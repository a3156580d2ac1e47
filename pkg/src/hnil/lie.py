"""Finite graded Lie algebras with exact structure constants."""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import LieInvariantError


@dataclass(eq=True)
class GradedLieAlgebra:
    """Labelled graded basis plus the bracket of every ordered basis pair."""

    basis: tuple[tuple[str, int], ...]
    structure: dict[tuple[int, int], tuple[Fraction, ...]]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree(self, i: int) -> int:
        return self.basis[i][1]

    def bracket_basis(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.structure[(i, j)]

    def bracket_with(self, i: int, coords) -> tuple[Fraction, ...]:
        """[b_i, x] for x given in coordinates."""
        out = [Fraction(0)] * self.dim
        for j, c in enumerate(coords):
            if c == 0:
                continue
            for k, s in enumerate(self.structure[(i, j)]):
                out[k] += c * s
        return tuple(out)

    def bracket_coords(self, x, y) -> tuple[Fraction, ...]:
        """[x, y] for both arguments in coordinates."""
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                for k, s in enumerate(self.structure[(i, j)]):
                    out[k] += a * b * s
        return tuple(out)

    def validate(self, check_jacobi: bool = True) -> list[str]:
        """Violations of antisymmetry, degree additivity, or graded Jacobi.

        The Jacobi sweep over all basis triples is cubic in the dimension, so
        hot paths may restrict to the cheap checks and leave it to the tests.
        """
        problems = []
        n = self.dim
        for i in range(n):
            for j in range(n):
                if (i, j) not in self.structure:
                    problems.append(f"missing bracket ({i},{j})")
                    continue
                v = self.structure[(i, j)]
                if len(v) != n:
                    problems.append(f"bracket ({i},{j}) has wrong length")
                    continue
                sign = (-1) ** ((self.degree(i) * self.degree(j)) % 2)
                w = self.structure.get((j, i))
                if w is None or any(a != -sign * c for a, c in zip(v, w)):
                    problems.append(f"bracket ({i},{j}) breaks graded antisymmetry")
                for k, c in enumerate(v):
                    if c != 0 and self.degree(k) != self.degree(i) + self.degree(j):
                        problems.append(
                            f"bracket ({i},{j}) hits degree {self.degree(k)}, "
                            f"expected {self.degree(i) + self.degree(j)}"
                        )
        if problems or not check_jacobi:
            return problems
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = self.bracket_with(i, self.bracket_basis(j, k))
                    right1 = self.bracket_coords(self.bracket_basis(i, j), unit(n, k))
                    sign = (-1) ** ((self.degree(i) * self.degree(j)) % 2)
                    right2 = self.bracket_with(j, self.bracket_basis(i, k))
                    if any(
                        a != b + sign * c for a, b, c in zip(left, right1, right2)
                    ):
                        problems.append(f"Jacobi fails on ({i},{j},{k})")
        return problems


def unit(n: int, k: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1 if i == k else 0) for i in range(n))


def nil_index(L: GradedLieAlgebra) -> int:
    """Least q with the (q+1)-st lower central series term zero; 0 iff L = 0.

    Gamma^1 = L and Gamma^(k+1) = [L, Gamma^k].  Each term contains the next,
    so strictly decreasing dimensions force termination; stabilizing at a
    nonzero term cannot happen for a degree-bounded positive grading and is
    reported as an invariant violation.
    """
    n = L.dim
    if n == 0:
        return 0
    gamma = [unit(n, k) for k in range(n)]
    q = 0
    while gamma:
        q += 1
        produced = [L.bracket_with(i, g) for i in range(n) for g in gamma]
        nxt = linalg.row_space_basis([v for v in produced if any(x != 0 for x in v)])
        if len(nxt) == len(gamma):
            raise LieInvariantError(
                "lower central series stabilized at a nonzero term"
            )
        gamma = nxt
    return q
