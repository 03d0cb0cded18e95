"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the mathematical domain of an operation."""


class CoincidentPoints(DomainError):
    """Two points that must be distinct coincide."""


class EmptyFeasible(DomainError):
    """A node's feasible tangent interval is empty (anti-parallel chords)."""


class NotApplicable(DomainError):
    """A diagnostic applies only under a reduction that does not hold here."""


class NoConvergence(RuntimeError):
    """An iterative solve exhausted its iteration or reseed budget."""
