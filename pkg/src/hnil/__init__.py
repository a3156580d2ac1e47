"""Exact computer algebra for principal-bundle models given as relative
Sullivan data: characteristic classes, a computable bound for the
generator-set invariant N(p), the homology of the base-linear derivation
complex as a graded Lie algebra, and the nilpotency inequality
n - N(p) <= hnil <= n checked on concrete models."""

from .algebra import AlgebraSignature, Element, GeneratorSymbol, degree_basis, multiply, normalize_monomial
from .bundle import (
    BundleModel,
    GeneratorSubstitution,
    NpReport,
    characteristic_classes,
    compute_N_lin,
    fiber_degree_count,
    normalize_generators,
    validate_bundle,
)
from .cdga import CDGA, CohomologyClass, apply_differential, class_of, cohomology_basis, cup, validate_cdga
from .catalog import builtin_example, example_names
from .derivations import (
    Derivation,
    DerivationComplex,
    apply_derivation,
    bracket,
    derivation_space_basis,
    differential,
    hnil,
    homology_lie,
)
from .errors import (
    DegreeBudgetError,
    Diagnostic,
    HnilError,
    LieInvariantError,
    NotACocycleError,
    ParseError,
    SignatureError,
    UnknownExampleError,
)
from .lie import GradedLieAlgebra, nil_index
from .linalg import Matrix, Rational, in_span, kernel_basis, rref, solve
from .parser import ModelDocument, format_model, parse_model
from .report import TheoremReport, check_theorem

__version__ = "0.1.0"
