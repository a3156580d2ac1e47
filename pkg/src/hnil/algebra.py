"""Free graded-commutative algebras over the rationals.

Generators carry a positive degree; parity (degree mod 2) drives the Koszul
sign rule: moving a past b costs (-1)^(|a||b|), and odd generators square to
zero.  Monomials are kept in canonical form, sorted by generator declaration
order, so every per-degree basis, matrix, and report derived from them is
deterministic.

A signature may carry a truncation degree T, in which case the algebra is the
quotient by the ideal of elements of degree > T.  The ideal is stable under
any degree-raising derivation, so the quotient is a legitimate graded algebra
and products simply drop the over-budget terms.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import DegreeBudgetError, SignatureError

# A monomial is a sorted tuple of (generator index, exponent) pairs with
# exponents >= 1; the empty tuple is the unit.
Monomial = tuple[tuple[int, int], ...]

UNIT: Monomial = ()


@dataclass(frozen=True)
class GeneratorSymbol:
    """A named generator with a positive degree and a base-or-fiber tag."""

    name: str
    degree: int
    origin: str = "base"  # "base" | "fiber"

    def __post_init__(self):
        if self.degree < 1:
            raise SignatureError(f"generator {self.name!r} must have degree >= 1")
        if self.origin not in ("base", "fiber"):
            raise SignatureError(f"generator {self.name!r} has unknown origin {self.origin!r}")

    @property
    def is_odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True)
class AlgebraSignature:
    """An ordered list of generators plus an optional truncation degree."""

    generators: tuple[GeneratorSymbol, ...]
    truncation: int | None = None

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise SignatureError(f"duplicate generator name {dup!r}")
        if self.truncation is not None:
            if self.truncation < 1:
                raise SignatureError("truncation degree must be positive")
            too_big = [g.name for g in self.generators if g.degree > self.truncation]
            if too_big:
                raise SignatureError(
                    f"generators above the truncation degree: {', '.join(too_big)}"
                )

    def index_of(self, name: str) -> int:
        for i, g in enumerate(self.generators):
            if g.name == name:
                return i
        raise SignatureError(f"unknown generator {name!r}")

    def generator(self, name: str) -> GeneratorSymbol:
        return self.generators[self.index_of(name)]

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(self.generators[i].degree * e for i, e in mono)

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {UNIT: Fraction(1)})

    def gen(self, name: str) -> "Element":
        i = self.index_of(name)
        return Element(self, {((i, 1),): Fraction(1)})

    def monomial_element(self, mono: Monomial, coeff=1) -> "Element":
        coeff = Fraction(coeff)
        if coeff == 0:
            return self.zero()
        return Element(self, {mono: coeff})


def normalize_monomial(sig: AlgebraSignature, factors) -> tuple[int, Monomial]:
    """Sort a factor word into canonical order, accumulating the Koszul sign.

    `factors` is any iterable of (generator index, exponent) pairs, in
    multiplication order.  Returns (sign, monomial) with sign in {1, -1, 0};
    the sign is 0 exactly when an odd generator ends up with exponent >= 2.
    """
    blocks = []
    for i, e in factors:
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            continue
        if not 0 <= i < len(sig.generators):
            raise SignatureError(f"generator index {i} out of range")
        g = sig.generators[i]
        if g.is_odd and e > 1:
            return 0, UNIT
        blocks.append((i, e, g.degree * e))
    # Count Koszul transpositions: each inverted pair contributes the product
    # of the two block degrees to the sign exponent.
    sign_exp = 0
    for a in range(len(blocks)):
        for b in range(a + 1, len(blocks)):
            if blocks[a][0] > blocks[b][0]:
                sign_exp += blocks[a][2] * blocks[b][2]
    merged: dict[int, int] = {}
    for i, e, _ in blocks:
        merged[i] = merged.get(i, 0) + e
    for i, e in merged.items():
        if sig.generators[i].is_odd and e > 1:
            return 0, UNIT
    mono = tuple(sorted(merged.items()))
    return (-1) ** (sign_exp % 2), mono


@dataclass(eq=True)
class Element:
    """A finite rational combination of canonical monomials in one signature."""

    signature: AlgebraSignature
    terms: dict[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {m: Fraction(c) for m, c in self.terms.items() if c != 0}

    def is_zero(self) -> bool:
        return not self.terms

    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms, or None if zero or mixed."""
        degrees = {self.signature.monomial_degree(m) for m in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def _require_same(self, other: "Element"):
        if self.signature != other.signature:
            raise SignatureError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._require_same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Element(self.signature, out)

    def __neg__(self) -> "Element":
        return Element(self.signature, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, coeff) -> "Element":
        coeff = Fraction(coeff)
        return Element(self.signature, {m: coeff * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<Element {format_element(self)}>"


def multiply(u: Element, v: Element) -> Element:
    """Bilinear extension of monomial normalization; truncation drops overflow."""
    u._require_same(v)
    sig = u.signature
    out: dict[Monomial, Fraction] = {}
    for m1, c1 in u.terms.items():
        for m2, c2 in v.terms.items():
            sign, mono = normalize_monomial(sig, (*m1, *m2))
            if sign == 0:
                continue
            if sig.truncation is not None and sig.monomial_degree(mono) > sig.truncation:
                continue
            out[mono] = out.get(mono, Fraction(0)) + sign * c1 * c2
    return Element(sig, out)


@lru_cache(maxsize=None)
def degree_basis(sig: AlgebraSignature, k: int) -> tuple[Monomial, ...]:
    """All canonical monomials of total degree k, in ascending lexicographic
    order of the exponent sequence (over generators in declaration order)."""
    if k < 0:
        return ()
    if sig.truncation is not None and k > sig.truncation:
        raise DegreeBudgetError(
            f"degree {k} exceeds the truncation budget {sig.truncation}"
        )
    gens = sig.generators
    results: list[Monomial] = []

    def rec(i: int, remaining: int, acc: list[tuple[int, int]]):
        if remaining == 0:
            # All later exponents must be zero: record this completion.
            results.append(tuple(acc))
            return
        if i == len(gens):
            return
        g = gens[i]
        cap = 1 if g.is_odd else remaining // g.degree
        for e in range(cap + 1):
            if e == 0:
                rec(i + 1, remaining, acc)
            else:
                acc.append((i, e))
                rec(i + 1, remaining - e * g.degree, acc)
                acc.pop()

    rec(0, k, [])
    return tuple(results)


def coordinates(u: Element, basis: tuple[Monomial, ...]) -> tuple[Fraction, ...]:
    """Coordinates of a homogeneous element relative to a monomial basis."""
    index = {m: i for i, m in enumerate(basis)}
    coords = [Fraction(0)] * len(basis)
    for m, c in u.terms.items():
        if m not in index:
            raise SignatureError(f"monomial {m} outside the given degree slice")
        coords[index[m]] = c
    return tuple(coords)


def from_coordinates(sig: AlgebraSignature, basis, coords) -> Element:
    terms = {m: Fraction(c) for m, c in zip(basis, coords) if c != 0}
    return Element(sig, terms)


def leibniz_apply(u: Element, values: dict[str, Element], p: int) -> Element:
    """Extend generator values to an operator via the signed Leibniz rule.

    `values` maps generator names to images (missing names act as zero) and
    `p` is the homological degree of the operator, entering through the sign
    (-1)^(p*|prefix|) picked up when the operator passes a prefix.  This is
    the one Leibniz engine: p=1 with the differential's generator values
    gives the differential, and a derivation's values give the derivation.
    """
    sig = u.signature
    out = sig.zero()
    value_by_index: dict[int, Element] = {}
    for name, val in values.items():
        if not val.is_zero():
            value_by_index[sig.index_of(name)] = val
    for mono, coeff in u.terms.items():
        for pos, (i, e) in enumerate(mono):
            if i not in value_by_index:
                continue
            prefix = mono[:pos]
            suffix = mono[pos + 1 :]
            prefix_degree = sig.monomial_degree(prefix)
            sign = (-1) ** ((p * prefix_degree) % 2)
            # theta(g^e) = e * g^(e-1) * theta(g); the value sits where g was.
            stub = prefix + (((i, e - 1),) if e > 1 else ())
            head = sig.monomial_element(stub, coeff * e * sign)
            term = multiply(multiply(head, value_by_index[i]), sig.monomial_element(suffix))
            out = out + term
    return out


def _format_coeff(c: Fraction) -> str:
    return str(c)


def format_element(u: Element) -> str:
    """Canonical text form: terms sorted by (degree, exponent sequence)."""
    if u.is_zero():
        return "0"
    sig = u.signature

    def expseq(mono: Monomial) -> tuple[int, ...]:
        d = dict(mono)
        return tuple(d.get(i, 0) for i in range(len(sig.generators)))

    items = sorted(u.terms.items(), key=lambda mc: (sig.monomial_degree(mc[0]), expseq(mc[0])))
    parts = []
    for idx, (mono, coeff) in enumerate(items):
        factors = []
        for i, e in mono:
            name = sig.generators[i].name
            factors.append(name if e == 1 else f"{name}^{e}")
        body = "*".join(factors)
        mag = abs(coeff)
        if not body:
            text = _format_coeff(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{_format_coeff(mag)}*{body}"
        if idx == 0:
            parts.append(text if coeff > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if coeff > 0 else f"- {text}")
    return " ".join(parts)
