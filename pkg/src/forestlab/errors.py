"""Shared exception types and default enumeration caps."""


class CapExceededError(RuntimeError):
    """An enumeration or memory cap would be exceeded; fail loudly instead of thrashing."""


class OracleInconsistencyError(RuntimeError):
    """An injected oracle returned values inconsistent with the algebra built on top."""


class NonIntegralResultError(OracleInconsistencyError):
    """A rational solve produced non-integers where integrality is forced."""


class SingularMatrixError(ValueError):
    """An exact linear solve hit a singular coefficient matrix."""


#: Default cap on the number of subsets any brute-force scan may visit.
DEFAULT_SUBSET_CAP = 10_000_000
