"""Exception hierarchy shared by all quasifree modules."""


class QuasifreeError(Exception):
    """Base class for every error raised by this package."""


class NotSquare(QuasifreeError, ValueError):
    """A matrix argument was expected to be square."""


class NotHermitian(QuasifreeError, ValueError):
    """A matrix failed the Hermiticity tolerance check."""


class NumericalFailure(QuasifreeError, ArithmeticError):
    """A numerical routine diverged, overflowed or missed its accuracy contract."""


class Resonant(QuasifreeError, ArithmeticError):
    """The Sylvester operator is singular: an eigenvalue of p equals minus an
    eigenvalue of q, so no unique solution exists."""


class NotNormalizable(QuasifreeError, ValueError):
    """A pure-state squeezing parameter has modulus >= 1."""


class NegativeOccupation(QuasifreeError, ValueError):
    """A thermal occupation number was negative."""


class NotCP(QuasifreeError, ValueError):
    """The bath is not completely positive (Kossakowski matrix not PSD)."""


class NonPhysicalInput(QuasifreeError, ValueError):
    """A covariance matrix violates the positivity condition V + Sigma/2 >= 0."""


class Unstable(QuasifreeError, ArithmeticError):
    """The drift matrix has an eigenvalue with non-negative real part, so no
    unique asymptotic state exists."""


class WrongModeCount(QuasifreeError, ValueError):
    """An operation defined for two modes received a different mode count."""


class EmptyNullSpace(QuasifreeError, ValueError):
    """The partial-transposed initial covariance has no null vector; the
    generation witness is inapplicable."""


class NotNullVector(QuasifreeError, ValueError):
    """The supplied witness vector is not in the required null space."""


class DomainError(QuasifreeError, ValueError):
    """Scalar parameters are outside the domain of a closed-form expression."""


class CutoffTooSmall(QuasifreeError, ValueError):
    """The Fock-space cutoff is too small to represent the requested state."""


class TruncationLeak(QuasifreeError, ArithmeticError):
    """Population reached the top of the truncated Fock space; the oracle
    result cannot be trusted."""


class ConfigError(QuasifreeError, ValueError):
    """A run configuration file is malformed or inconsistent."""


class UnknownParam(QuasifreeError, ValueError):
    """An unsupported sweep parameter name was requested."""
