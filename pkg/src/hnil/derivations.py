"""The differential graded Lie algebra of base-linear derivations.

A derivation of homological degree p lowers word degree by p, vanishes on the
base algebra, and obeys theta(xy) = theta(x)y + (-1)^(p|x|) x theta(y).  It
is determined by its values on the fiber generators, so Der^p has one basis
element per pair (fiber generator v, monomial of degree deg v - p in the
total algebra).  The differential is the commutator with the model's
differential, which on fiber generators reduces to differentiating the
stored values; the bracket is the signed commutator.  Homology in degrees
1..max fiber degree is computed with the same deterministic representative
convention as base cohomology, and carries the induced bracket as a graded
Lie algebra.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import (
    Element,
    Monomial,
    coordinates,
    degree_basis,
    from_coordinates,
    leibniz_apply,
)
from .bundle import BundleModel
from .cdga import apply_differential
from .errors import SignatureError
from .lie import GradedLieAlgebra


@dataclass(eq=True)
class Derivation:
    """Homological degree p plus values on fiber generators (absent = zero)."""

    degree: int
    values: dict[str, Element] = field(default_factory=dict)

    def __post_init__(self):
        self.values = {k: v for k, v in self.values.items() if not v.is_zero()}

    def is_zero(self) -> bool:
        return not self.values

    def value(self, name: str, sig) -> Element:
        return self.values.get(name, sig.zero())

    def __add__(self, other: "Derivation") -> "Derivation":
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("cannot add derivations of different degrees")
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out[k] + v if k in out else v
        return Derivation(self.degree if not self.is_zero() else other.degree, out)

    def scale(self, coeff) -> "Derivation":
        coeff = Fraction(coeff)
        return Derivation(self.degree, {k: v.scale(coeff) for k, v in self.values.items()})

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + other.scale(-1)


def apply_derivation(theta: Derivation, u: Element) -> Element:
    """Signed Leibniz extension of the stored values; zero on pure-base terms."""
    return leibniz_apply(u, theta.values, theta.degree)


def pair_basis(model: BundleModel, p: int) -> list[tuple[str, Monomial]]:
    """Coordinate system of Der^p: (fiber generator, target monomial) pairs."""
    pairs = []
    for g in model.fiber:
        k = g.degree - p
        if k < 0:
            continue
        for mono in degree_basis(model.total_signature, k):
            pairs.append((g.name, mono))
    return pairs


def derivation_space_basis(model: BundleModel, p: int) -> list[Derivation]:
    """Basis derivations of homological degree p, in canonical pair order."""
    if not 1 <= p <= model.max_fiber_degree():
        raise ValueError(
            f"derivation degree {p} outside [1, {model.max_fiber_degree()}]"
        )
    sig = model.total_signature
    return [
        Derivation(p, {name: sig.monomial_element(mono)})
        for name, mono in pair_basis(model, p)
    ]


def derivation_coordinates(model: BundleModel, theta: Derivation) -> tuple[Fraction, ...]:
    """Coordinates of a derivation in its pair basis."""
    sig = model.total_signature
    coords: list[Fraction] = []
    for g in model.fiber:
        k = g.degree - theta.degree
        if k < 0:
            if not theta.value(g.name, sig).is_zero():
                raise ValueError(f"value on {g.name} has negative target degree")
            continue
        basis = degree_basis(sig, k)
        coords.extend(coordinates(theta.value(g.name, sig), basis))
    return tuple(coords)


def derivation_from_coordinates(model: BundleModel, p: int, coords) -> Derivation:
    sig = model.total_signature
    values: dict[str, Element] = {}
    pos = 0
    for g in model.fiber:
        k = g.degree - p
        if k < 0:
            continue
        basis = degree_basis(sig, k)
        chunk = coords[pos : pos + len(basis)]
        pos += len(basis)
        values[g.name] = from_coordinates(sig, basis, chunk)
    if pos != len(coords):
        raise ValueError("coordinate vector has wrong length")
    return Derivation(p, values)


def differential(model: BundleModel, theta: Derivation) -> Derivation:
    """Commutator with the model differential: degree drops by one.

    On a fiber generator v only the D(theta(v)) term survives, because Dv
    lies in the base algebra where theta vanishes.
    """
    values = {
        name: apply_differential(model.total, value)
        for name, value in theta.values.items()
    }
    return Derivation(theta.degree - 1, values)


def bracket(theta1: Derivation, theta2: Derivation, model: BundleModel) -> Derivation:
    """Signed commutator [t1, t2] = t1 t2 - (-1)^(p1 p2) t2 t1."""
    sig = model.total_signature
    sign = (-1) ** ((theta1.degree * theta2.degree) % 2)
    values = {}
    for g in model.fiber:
        first = apply_derivation(theta1, theta2.value(g.name, sig))
        second = apply_derivation(theta2, theta1.value(g.name, sig))
        values[g.name] = first - second.scale(sign)
    return Derivation(theta1.degree + theta2.degree, values)


class DerivationComplex:
    """Per-degree chain data of the derivation DGL, with cached homology.

    All slice computations are pure and independent per degree; results are
    memoized on first use.
    """

    def __init__(self, model: BundleModel):
        if model.total_signature is None:
            raise SignatureError("model has no total signature")
        self.model = model
        self.top = model.max_fiber_degree()
        self._matrices: dict[int, linalg.Matrix] = {}
        self._data: dict[int, tuple] = {}

    def matrix(self, p: int) -> linalg.Matrix:
        """Matrix of the differential Der^p -> Der^(p-1) in pair coordinates."""
        if p in self._matrices:
            return self._matrices[p]
        target_dim = len(pair_basis(self.model, p - 1))
        cols = []
        for name, mono in pair_basis(self.model, p):
            theta = Derivation(
                p, {name: self.model.total_signature.monomial_element(mono)}
            )
            image = differential(self.model, theta)
            cols.append(derivation_coordinates(self.model, Derivation(p - 1, image.values)))
        m = linalg.Matrix.from_columns(cols, nrows=target_dim)
        self._matrices[p] = m
        return m

    def slice_data(self, p: int):
        """(cycle rows, boundary rows, representative rows) for H_p."""
        if p in self._data:
            return self._data[p]
        cycles = linalg.row_space_basis(linalg.kernel_basis(self.matrix(p)))
        if p < self.top:
            nxt = self.matrix(p + 1)
            boundaries = linalg.row_space_basis(
                [nxt.column(j) for j in range(nxt.cols)]
            )
        else:
            boundaries = []  # Der above the top fiber degree is zero.
        reps = []
        span = list(boundaries)
        for z in cycles:
            if linalg.in_span(z, span) is None:
                reps.append(z)
                span.append(z)
        data = (tuple(cycles), tuple(boundaries), tuple(reps))
        self._data[p] = data
        return data

    def homology_dimension(self, p: int) -> int:
        return len(self.slice_data(p)[2])

    def representatives(self, p: int) -> list[Derivation]:
        _, _, reps = self.slice_data(p)
        return [derivation_from_coordinates(self.model, p, r) for r in reps]

    def class_coordinates(self, theta: Derivation) -> tuple[Fraction, ...]:
        """Coordinates of a cycle's homology class over the degree-p representatives."""
        p = theta.degree
        if p > self.top or theta.is_zero():
            dim = self.homology_dimension(p) if 1 <= p <= self.top else 0
            return (Fraction(0),) * dim
        _, boundaries, reps = self.slice_data(p)
        vec = derivation_coordinates(self.model, theta)
        x = linalg.in_span(vec, list(reps) + list(boundaries))
        if x is None:
            raise ValueError("derivation is not a cycle in the computed complex")
        return tuple(x[: len(reps)])

    def lie_algebra(self) -> GradedLieAlgebra:
        """Homology of the complex as a graded Lie algebra with exact constants."""
        labels: list[tuple[str, int]] = []
        reps: list[Derivation] = []
        for p in range(1, self.top + 1):
            for i, rep in enumerate(self.representatives(p)):
                labels.append((f"p{p}.{i}", p))
                reps.append(rep)
        index_by_degree: dict[int, list[int]] = {}
        for i, (_, p) in enumerate(labels):
            index_by_degree.setdefault(p, []).append(i)
        structure: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        dim = len(labels)
        for i in range(dim):
            for j in range(dim):
                br = bracket(reps[i], reps[j], self.model)
                coords = [Fraction(0)] * dim
                q = labels[i][1] + labels[j][1]
                if 1 <= q <= self.top and not br.is_zero():
                    local = self.class_coordinates(br)
                    for pos, c in zip(index_by_degree.get(q, []), local):
                        coords[pos] = c
                elif not br.is_zero():
                    raise AssertionError(
                        "bracket above the top degree must vanish identically"
                    )
                structure[(i, j)] = tuple(coords)
        algebra = GradedLieAlgebra(basis=tuple(labels), structure=structure)
        problems = algebra.validate(check_jacobi=False)
        if problems:
            raise AssertionError(
                "homology bracket violates Lie axioms: " + "; ".join(problems)
            )
        return algebra


def homology_lie(model: BundleModel) -> GradedLieAlgebra:
    """The homology of the positive-degree derivation complex, as a Lie algebra."""
    return DerivationComplex(model).lie_algebra()


def hnil(model: BundleModel) -> int:
    """Nilpotency index of the derivation homology Lie algebra."""
    from .lie import nil_index

    return nil_index(homology_lie(model))
