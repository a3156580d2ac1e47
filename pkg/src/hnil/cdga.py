"""Commutative differential graded algebras and their cohomology.

The differential is stored by its generator values and extended by the signed
Leibniz rule.  Cohomology bases are chosen deterministically: the cocycle
space and the boundary space of each degree are put in reduced row echelon
form relative to the canonical monomial basis, and representatives are picked
greedily from the cocycle rows that grow the span of the boundaries.  This
makes every class coordinate, cup product, and downstream structure constant
reproducible byte for byte.

A truncated algebra only represents degrees up to T faithfully when the
differential out of them stays in budget, so every cohomology query of degree
k requires k + 1 <= T.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import (
    AlgebraSignature,
    Element,
    Monomial,
    coordinates,
    degree_basis,
    from_coordinates,
    leibniz_apply,
    multiply,
)
from .errors import DegreeBudgetError, NotACocycleError, SignatureError


@dataclass(eq=True)
class CDGA:
    """A signature plus the differential's values on generators.

    Generators missing from `d_values` have differential zero.
    """

    signature: AlgebraSignature
    d_values: dict[str, Element] = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        # Missing and zero values mean the same thing; store only nonzero.
        self.d_values = {k: v for k, v in self.d_values.items() if not v.is_zero()}

    def d_value(self, name: str) -> Element:
        self.signature.index_of(name)
        return self.d_values.get(name, self.signature.zero())


def apply_differential(a: CDGA, u: Element, strict: bool = False) -> Element:
    """The differential of u, extended by the Leibniz rule with p = 1.

    With a truncated signature the result is taken in the quotient (terms
    over budget vanish); `strict=True` raises instead when u has a term whose
    image would leave the represented range.
    """
    if u.signature != a.signature:
        raise SignatureError("element does not belong to this algebra")
    T = a.signature.truncation
    if strict and T is not None:
        for mono in u.terms:
            if a.signature.monomial_degree(mono) + 1 > T:
                raise DegreeBudgetError(
                    f"differential of a degree-{a.signature.monomial_degree(mono)} "
                    f"term leaves the truncation budget {T}"
                )
    return leibniz_apply(u, a.d_values, 1)


def validate_cdga(a: CDGA) -> list[str]:
    """All violations of the CDGA contract; an empty list means valid."""
    violations = []
    sig = a.signature
    for name, value in a.d_values.items():
        try:
            g = sig.generator(name)
        except SignatureError:
            violations.append(f"differential assigned to unknown generator {name!r}")
            continue
        if value.signature != sig:
            violations.append(f"d({name}) uses a different signature")
            continue
        if value.is_zero():
            continue
        deg = value.homogeneous_degree()
        if deg is None:
            violations.append(f"d({name}) is not homogeneous")
        elif deg != g.degree + 1:
            violations.append(
                f"d({name}) has degree {deg}, expected {g.degree + 1}"
            )
    for g in sig.generators:
        value = a.d_values.get(g.name)
        if value is None or value.is_zero() or value.signature != sig:
            continue
        dd = apply_differential(a, value)
        if not dd.is_zero():
            violations.append(f"d(d({g.name})) = {dd} is nonzero")
    return violations


@dataclass(frozen=True)
class CohomologyClass:
    """Coordinates relative to the canonical cohomology basis of one degree."""

    degree: int
    coordinates: tuple[Fraction, ...]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)


def differential_matrix(a: CDGA, k: int) -> linalg.Matrix:
    """Matrix of d from the degree-k slice to the degree-(k+1) slice.

    In a truncated algebra the degree-(T+1) slice is zero, so the matrix out
    of degree T has no rows and everything there is a cocycle of the quotient.
    """
    key = ("dmat", k)
    if key in a._cache:
        return a._cache[key]
    source = degree_basis(a.signature, k)
    T = a.signature.truncation
    if T is not None and k + 1 > T:
        target: tuple = ()
    else:
        target = degree_basis(a.signature, k + 1)
    cols = []
    for mono in source:
        image = apply_differential(a, a.signature.monomial_element(mono))
        cols.append(coordinates(image, target))
    m = linalg.Matrix.from_columns(cols, nrows=len(target))
    a._cache[key] = m
    return m


def _degree_data(a: CDGA, k: int):
    """Cocycle rows, boundary rows, and chosen representatives for H^k.

    Defined for k <= T (the cohomology of the quotient algebra); it agrees
    with the untruncated model exactly when k + 1 <= T.  Degrees above T are
    a budget error, surfaced by the slice enumeration.
    """
    key = ("homology", k)
    if key in a._cache:
        return a._cache[key]
    if k < 0:
        data = ((), (), ())
        a._cache[key] = data
        return data
    cocycles = linalg.row_space_basis(kernel_vectors(a, k))
    boundaries = []
    if k > 0:
        prev = differential_matrix(a, k - 1)
        boundaries = linalg.row_space_basis(
            [prev.column(j) for j in range(prev.cols)]
        )
    reps = []
    span = list(boundaries)
    for z in cocycles:
        if linalg.in_span(z, span) is None:
            reps.append(z)
            span.append(z)
    data = (tuple(cocycles), tuple(boundaries), tuple(reps))
    a._cache[key] = data
    return data


def kernel_vectors(a: CDGA, k: int):
    return linalg.kernel_basis(differential_matrix(a, k))


def cohomology_basis(a: CDGA, k: int) -> tuple[int, list[Element]]:
    """Dimension of H^k and its canonical cocycle representatives."""
    _, _, reps = _degree_data(a, k)
    basis = degree_basis(a.signature, k)
    return len(reps), [from_coordinates(a.signature, basis, r) for r in reps]


def class_of(a: CDGA, u: Element, degree: int | None = None) -> CohomologyClass:
    """Coordinates of [u] in the canonical basis of its cohomology degree.

    A zero element is ambiguous, so its intended degree must be supplied.
    """
    if u.is_zero():
        if degree is None:
            raise ValueError("class of the zero element needs an explicit degree")
        dim, _ = cohomology_basis(a, degree)
        return CohomologyClass(degree, (Fraction(0),) * dim)
    k = u.homogeneous_degree()
    if k is None:
        raise ValueError("element is not homogeneous")
    if degree is not None and degree != k:
        raise ValueError(f"element has degree {k}, expected {degree}")
    _, boundaries, reps = _degree_data(a, k)
    if not apply_differential(a, u).is_zero():
        raise NotACocycleError(f"element {u} is not a cocycle")
    vec = coordinates(u, degree_basis(a.signature, k))
    columns = list(reps) + list(boundaries)
    x = linalg.in_span(vec, columns)
    if x is None:
        raise NotACocycleError("cocycle not inside the computed cocycle space")
    return CohomologyClass(k, tuple(x[: len(reps)]))


def representative(a: CDGA, c: CohomologyClass) -> Element:
    """The canonical cocycle representing a class."""
    dim, reps = cohomology_basis(a, c.degree)
    if len(c.coordinates) != dim:
        raise ValueError("class coordinates do not match H^k dimension")
    out = a.signature.zero()
    for coeff, rep in zip(c.coordinates, reps):
        out = out + rep.scale(coeff)
    return out


def cup(a: CDGA, c1: CohomologyClass, c2: CohomologyClass) -> CohomologyClass:
    """Product of classes, computed on the stored representatives."""
    r1 = representative(a, c1)
    r2 = representative(a, c2)
    return class_of(a, multiply(r1, r2), degree=c1.degree + c2.degree)


def exact_witness(a: CDGA, u: Element, degree: int | None = None) -> Element | None:
    """Some w with d(w) = u, or None when u is not exact.

    The witness is the particular solution with all free coordinates zero.
    """
    if u.is_zero():
        if degree is None:
            raise ValueError("witness for the zero element needs an explicit degree")
        k = degree
    else:
        k = u.homogeneous_degree()
        if k is None:
            raise ValueError("element is not homogeneous")
    m = differential_matrix(a, k - 1)
    target = degree_basis(a.signature, k)
    x = linalg.solve(m, coordinates(u, target))
    if x is None:
        return None
    return from_coordinates(a.signature, degree_basis(a.signature, k - 1), x)
