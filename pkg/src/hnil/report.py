"""Assemble the invariants of a model into one inequality verdict."""

from dataclasses import dataclass

from .bundle import BundleModel, GeneratorSubstitution, compute_N_lin, fiber_degree_count, normalize_generators
from .derivations import homology_lie
from .lie import nil_index

# n_lin minimizes over triangular generator changes only, so it bounds the
# fully general invariant N(p) from above and max(0, n - n_lin) stays a valid
# lower bound for the nilpotency index.
NOTE = (
    "n_lin is computed over triangular generator changes and bounds N(p) "
    "from above, so lower_bound = max(0, n - n_lin) is a valid lower bound."
)


@dataclass(frozen=True)
class TheoremReport:
    n: int
    n_lin: int
    hnil: int
    lower_bound: int
    upper_bound: int
    holds: bool
    homology_dims: tuple[tuple[int, int], ...]
    witnesses: tuple[GeneratorSubstitution, ...]


def check_theorem(b: BundleModel) -> TheoremReport:
    """Compute n, n_lin, and hnil, and check n - n_lin <= hnil <= n.

    The inequality is expected to hold on every model this package
    constructs; holds=False on such input signals a defect, and the CLI
    surfaces it with a dedicated exit code.
    """
    n = fiber_degree_count(b)
    np_report = compute_N_lin(b)
    algebra = homology_lie(b)
    h = nil_index(algebra)
    counts: dict[int, int] = {}
    for _, p in algebra.basis:
        counts[p] = counts.get(p, 0) + 1
    dims = tuple(sorted(counts.items()))
    substitutions, _ = normalize_generators(b, report=np_report)
    lower = max(0, n - np_report.n_lin)
    return TheoremReport(
        n=n,
        n_lin=np_report.n_lin,
        hnil=h,
        lower_bound=lower,
        upper_bound=n,
        holds=lower <= h <= n,
        homology_dims=dims,
        witnesses=tuple(substitutions),
    )
