"""Exception hierarchy shared across the workbench."""


class GpteError(Exception):
    """Base class for all workbench errors."""


class ZeroWithNonpositiveExponent(GpteError):
    """A zero element was used with an exponent k <= 0."""


class ZeroElement(ZeroWithNonpositiveExponent):
    """A transform requiring nonzero elements saw a zero."""


class NotApplicable(GpteError):
    """The operation is not defined for this exponent set."""


class SingularBase(GpteError):
    """A divisor determinant vanished; the fixed tuple is degenerate."""


class PreconditionViolated(GpteError):
    """Input data does not satisfy the operation's stated preconditions."""


class UnsupportedGapPattern(GpteError):
    """The exponent set has a gap pattern the determinant machinery
    does not cover (more than one missing exponent below the maximum)."""


class UnsupportedFamily(GpteError):
    """The exponent set fits none of the constant-C families."""


class TrivialSolution(GpteError):
    """The two sides are equal as multisets (C = 0)."""


class OutOfTable(GpteError):
    """A value lies outside a precomputed table's range."""


class NoConvergence(GpteError):
    """The extended-precision root finder failed to converge."""


class UnsupportedSpec(GpteError):
    """The boundary solver cannot handle this exponent set."""


class OutOfDomain(GpteError):
    """A conditioning value lies below the feasible boundary."""


class EmptyInterval(GpteError):
    """A conservative bound interval is empty (prune signal)."""


class DegenerateParameters(GpteError):
    """Generator parameters produce zero or coincident elements."""


class OutOfPositivityWindow(GpteError):
    """Generator parameters fall outside the positivity window."""


class NonSquareSeed(GpteError):
    """A Pell-style seed does not make the radicand a perfect square."""


class ParseError(GpteError):
    """A solution record line is malformed."""


class VerificationFailed(GpteError):
    """A solution record does not verify."""


class NonSquareDiscriminant(GpteError):
    """A back-solve discriminant is not a perfect square (reject)."""


class NonIntegerRoot(GpteError):
    """A recovered block polynomial has a non-integer root (reject)."""


class OutOfRange(GpteError):
    """A recovered value falls outside the search range (reject)."""


class CorruptProgressFile(GpteError):
    """The search progress file cannot be parsed."""


class ConfigError(GpteError):
    """Inconsistent search configuration."""


class IoError(GpteError):
    """A catalog file could not be read."""
