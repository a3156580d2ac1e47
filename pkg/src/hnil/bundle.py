"""Relative models of principal bundles over a simply connected base.

A bundle model is a base CDGA (A, d) together with odd-degree fiber
generators whose differentials land in A.  From it we compute the
characteristic classes, the count of distinct fiber degrees n, and N_lin:
the number of fiber degrees m where the map w -> [Dw] stays injective even
after allowing triangular generator changes (rational mixing within the
degree, cocycle-coefficient corrections by strictly lower fiber generators,
and subtraction of base elements).  Each non-injective ("killable") degree
comes with an explicit witness substitution that makes the new generator's
differential literally zero.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import AlgebraSignature, Element, GeneratorSymbol, multiply
from .cdga import (
    CDGA,
    CohomologyClass,
    apply_differential,
    class_of,
    cohomology_basis,
    cup,
    exact_witness,
    validate_cdga,
)
from .errors import SignatureError


@dataclass(eq=True)
class BundleModel:
    """Base CDGA plus fiber generators with differentials inside the base."""

    base: CDGA
    fiber: tuple[GeneratorSymbol, ...]
    D_values: dict[str, Element] = field(default_factory=dict)

    def __post_init__(self):
        ordered = sorted(
            (GeneratorSymbol(g.name, g.degree, "fiber") for g in self.fiber),
            key=lambda g: g.degree,
        )
        self.fiber = tuple(ordered)
        self.D_values = {k: v for k, v in self.D_values.items() if not v.is_zero()}
        self.total_signature = AlgebraSignature(
            self.base.signature.generators + self.fiber,
            truncation=self.base.signature.truncation,
        )
        total_d = {
            name: self.embed(value) for name, value in self.base.d_values.items()
        }
        for g in self.fiber:
            value = self.D_values.get(g.name)
            if value is not None and not value.is_zero():
                total_d[g.name] = self.embed(value)
        self.total = CDGA(self.total_signature, total_d)

    def embed(self, e: Element) -> Element:
        """Reinterpret a base element inside the total algebra.

        Base generators occupy the leading indices of the total signature in
        the same order, so monomials carry over unchanged.
        """
        if e.signature == self.total_signature:
            return e
        if e.signature != self.base.signature:
            raise SignatureError("element belongs to neither the base nor the total algebra")
        return Element(self.total_signature, dict(e.terms))

    def D_value(self, name: str) -> Element:
        if all(g.name != name for g in self.fiber):
            raise SignatureError(f"unknown fiber generator {name!r}")
        return self.D_values.get(name, self.base.signature.zero())

    def fiber_degrees(self) -> list[int]:
        return sorted({g.degree for g in self.fiber})

    def max_fiber_degree(self) -> int:
        return max((g.degree for g in self.fiber), default=0)


def validate_bundle(b: BundleModel) -> list[str]:
    """All violations of the bundle-model contract; empty list means valid."""
    violations = [f"base: {v}" for v in validate_cdga(b.base)]
    for g in b.base.signature.generators:
        if g.degree < 2:
            violations.append(
                f"base generator {g.name!r} has degree {g.degree}; "
                "a simply connected base needs degrees >= 2"
            )
    for g in b.fiber:
        if g.degree % 2 == 0:
            violations.append(f"fiber degree must be odd: {g.name!r} has degree {g.degree}")
    for name in b.D_values:
        if all(g.name != name for g in b.fiber):
            violations.append(f"D assigned to unknown fiber generator {name!r}")
    for g in b.fiber:
        value = b.D_values.get(g.name)
        if value is None or value.is_zero():
            continue
        if value.signature != b.base.signature:
            violations.append(f"D({g.name}) must lie in the base algebra")
            continue
        deg = value.homogeneous_degree()
        if deg != g.degree + 1:
            violations.append(
                f"D({g.name}) has degree {deg}, expected {g.degree + 1}"
            )
            continue
        if not apply_differential(b.base, value).is_zero():
            violations.append(f"D-value of {g.name!r} is not a cocycle")
    T = b.base.signature.truncation
    needed = b.max_fiber_degree() + 2
    if T is None:
        violations.append(f"base algebra must carry a truncation degree (need T >= {needed})")
    elif T < needed:
        violations.append(f"truncation budget too small: T = {T}, need T >= {needed}")
    return violations


def fiber_degree_count(b: BundleModel) -> int:
    """Number of distinct degrees among the fiber generators."""
    return len(b.fiber_degrees())


def characteristic_classes(b: BundleModel) -> dict[str, CohomologyClass]:
    """The class of Dv in H^(deg v + 1) of the base, per fiber generator."""
    return {
        g.name: class_of(b.base, b.D_value(g.name), degree=g.degree + 1)
        for g in b.fiber
    }


@dataclass(eq=True)
class GeneratorSubstitution:
    """Replace `target` by target - correction (same degree, triangular).

    The correction combines base elements, strictly lower fiber generators
    with cocycle coefficients, and rational multiples of the other fiber
    generators of the same degree, so the substituted set still generates.
    """

    target: str
    correction: Element


@dataclass(eq=True)
class DegreeVerdict:
    """Outcome for one fiber degree: injective, or killable with witnesses."""

    degree: int
    injective: bool
    kernel_vector: tuple[Fraction, ...] | None = None
    module_combination: Element | None = None
    phi: Element | None = None
    substitution: GeneratorSubstitution | None = None


@dataclass(eq=True)
class NpReport:
    verdicts: tuple[DegreeVerdict, ...]
    n_lin: int
    n: int

    def killable_degrees(self) -> list[int]:
        return [v.degree for v in self.verdicts if not v.injective]


def _lower_module_span(b: BundleModel, m: int):
    """Columns of H^(m+1) reachable as (base class) * (lower characteristic class).

    Returns a list of (coordinates, fiber generator, cocycle coefficient
    representative), deterministic in fiber order then basis index.
    """
    columns = []
    for u in b.fiber:
        if u.degree >= m:
            break
        alpha = class_of(b.base, b.D_value(u.name), degree=u.degree + 1)
        hdeg = m - u.degree
        hdim, hreps = cohomology_basis(b.base, hdeg)
        for i in range(hdim):
            unit = CohomologyClass(
                hdeg, tuple(Fraction(1 if j == i else 0) for j in range(hdim))
            )
            s = cup(b.base, unit, alpha)
            columns.append((s.coordinates, u, hreps[i]))
    return columns


def compute_N_lin(b: BundleModel) -> NpReport:
    """Per-degree injectivity verdicts and the invariant N_lin.

    Degrees are processed in ascending order.  At degree m the map sends the
    span W of the degree-m fiber generators to H^(m+1) of the base; the
    degree is killable when some nonzero combination w lands in the span S of
    products (base class)*(characteristic class of a lower generator),
    computed from the original differentials.  The witness then solves
    d(phi) = D(w - module combination), so the substituted generator has
    differential exactly zero.
    """
    verdicts = []
    total_sig = b.total_signature
    for m in b.fiber_degrees():
        W = [g for g in b.fiber if g.degree == m]
        hdim, _ = cohomology_basis(b.base, m + 1)
        f_cols = [
            class_of(b.base, b.D_value(g.name), degree=m + 1).coordinates for g in W
        ]
        s_cols = _lower_module_span(b, m)
        block = linalg.Matrix.from_columns(
            f_cols + [tuple(-x for x in s) for s, _, _ in s_cols], nrows=hdim
        )
        kernel = linalg.kernel_basis(block)
        witness = next(
            (k for k in kernel if any(x != 0 for x in k[: len(W)])), None
        )
        if witness is None:
            verdicts.append(DegreeVerdict(degree=m, injective=True))
            continue
        w = witness[: len(W)]
        cs = witness[len(W) :]
        # Element combination in the total algebra and its differential in A.
        w_elt = total_sig.zero()
        residual = b.base.signature.zero()
        for coeff, g in zip(w, W):
            w_elt = w_elt + total_sig.gen(g.name).scale(coeff)
            residual = residual + b.D_value(g.name).scale(coeff)
        module_comb = total_sig.zero()
        for coeff, (s, u, h_rep) in zip(cs, s_cols):
            if coeff == 0:
                continue
            # D(h*u) = (-1)^|h| h*Du for a cocycle coefficient h, so scale by
            # the same sign to cancel the class of D(w) exactly.
            sign = (-1) ** (h_rep.homogeneous_degree() % 2)
            module_comb = module_comb + multiply(
                b.embed(h_rep), total_sig.gen(u.name)
            ).scale(coeff * sign)
            residual = residual - multiply(h_rep, b.D_value(u.name)).scale(coeff)
        phi = exact_witness(b.base, residual, degree=m + 1)
        if phi is None:
            raise AssertionError("killable witness produced a non-exact residual")
        target_pos = next(i for i, x in enumerate(w) if x != 0)
        mu = w[target_pos]
        target = W[target_pos].name
        new_gen = (w_elt - module_comb - b.embed(phi)).scale(Fraction(1) / mu)
        correction = total_sig.gen(target) - new_gen
        verdicts.append(
            DegreeVerdict(
                degree=m,
                injective=False,
                kernel_vector=w,
                module_combination=module_comb,
                phi=phi,
                substitution=GeneratorSubstitution(target, correction),
            )
        )
    n = fiber_degree_count(b)
    n_lin = sum(1 for v in verdicts if v.injective)
    return NpReport(verdicts=tuple(verdicts), n_lin=n_lin, n=n)


def normalize_generators(
    b: BundleModel, report: NpReport | None = None
) -> tuple[list[GeneratorSubstitution], BundleModel]:
    """Apply the killable-degree witnesses; the new targets get D-value 0."""
    if report is None:
        report = compute_N_lin(b)
    substitutions = [
        v.substitution for v in report.verdicts if v.substitution is not None
    ]
    new_D = {
        name: value
        for name, value in b.D_values.items()
        if name not in {s.target for s in substitutions}
    }
    normalized = BundleModel(base=b.base, fiber=b.fiber, D_values=new_D)
    return substitutions, normalized
