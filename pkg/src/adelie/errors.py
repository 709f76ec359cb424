"""Exception types shared across the package."""


class AdelieError(Exception):
    """Base class for all errors raised by this package."""


class IllegalType(AdelieError):
    """Root system kind/rank combination outside the supported range."""


class BasisMismatch(AdelieError):
    """Two lattice vectors disagree on rank or were combined across bases."""


class NotInRootLattice(AdelieError):
    """Weight-basis vector has no integral simple-root expansion."""


class DependentRoots(AdelieError):
    """Root string requested through a dependent pair (beta = +-alpha)."""


class ConstructionFailure(AdelieError):
    """A structure-constant invariant failed; signals an implementation bug."""


class NotDominant(AdelieError):
    """Operation requires a dominant weight."""


class IndexOutOfRange(AdelieError):
    """Simple-root index outside 1..rank."""


class NonUniqueMinimal(AdelieError):
    """Dominant interval has no unique minimal element."""


class BudgetExceeded(AdelieError):
    """Enumeration would exceed the configured budget."""


class CancellationFailure(AdelieError):
    """Curvature expansion left terms outside the expected span."""


class IncompleteOracle(AdelieError):
    """Solvability certification queried a root the oracle does not cover."""


class NotARootClass(AdelieError):
    """Divisor class is not the image of a root."""


class SystemMismatch(AdelieError):
    """Objects built from different root systems were mixed."""
