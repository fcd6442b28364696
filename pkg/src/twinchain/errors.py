"""Exception types shared across the package."""


class TwinchainError(Exception):
    pass


class CycleError(TwinchainError, ValueError):
    """The given relation is not acyclic, so it has no strict order closure."""


class SizeError(TwinchainError, ValueError):
    """Input exceeds the range an exhaustive routine supports."""


class DimensionMismatch(TwinchainError, ValueError):
    pass


class OddDimension(TwinchainError, ValueError):
    pass


class DegenerateInput(TwinchainError, ValueError):
    """Point set does not affinely span the ambient space."""


class UnvalidatedInput(TwinchainError, ValueError):
    pass


class BoundViolation(TwinchainError):
    """A pair exceeded the facet bound. Carries the offending pair."""

    def __init__(self, P, Q, n_facets, bound):
        self.P = P
        self.Q = Q
        self.n_facets = n_facets
        self.bound = bound
        super().__init__(f"N = {n_facets} exceeds bound {bound} at d = {P.d}")


class GoldenMismatch(TwinchainError):
    def __init__(self, table, diffs):
        self.table = table
        self.diffs = list(diffs)
        lines = "; ".join(f"{cell}: got {got}, expected {want}" for cell, got, want in self.diffs)
        super().__init__(f"{table}: {lines}")
