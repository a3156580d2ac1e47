"""Exception types shared across the package."""

from dataclasses import dataclass


class HnilError(Exception):
    """Base class for all errors raised by this package."""


class SignatureError(HnilError):
    """Unknown generator, duplicate name, or mixing elements of different algebras."""


class DegreeBudgetError(HnilError):
    """A computation would consult a degree the truncated algebra does not represent."""


class NotACocycleError(HnilError):
    """A cohomology class was requested for an element with nonzero differential."""


class LieInvariantError(HnilError):
    """A graded Lie algebra violated an invariant it was assumed to satisfy."""


@dataclass(frozen=True)
class Diagnostic:
    """A parse-time problem, anchored to a 1-based source position."""

    line: int
    column: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.column}: {self.message}"


class ParseError(HnilError):
    """Model text could not be parsed; carries all collected diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class UnknownExampleError(HnilError):
    """Requested a builtin example that does not exist."""

    def __init__(self, name, known):
        self.name = name
        self.known = tuple(known)
        super().__init__(
            f"unknown example {name!r}; valid names: {', '.join(self.known)}"
        )
