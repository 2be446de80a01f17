from .mannwhitney import (
    EXHAUSTIVE_LIMIT,
    MONTE_CARLO_PERMUTATIONS,
    DisparityResult,
    InputError,
    ProtocolError,
    TestMethod,
    mann_whitney_u,
    test_disparity,
)

__all__ = (
    "DisparityResult",
    "EXHAUSTIVE_LIMIT",
    "InputError",
    "MONTE_CARLO_PERMUTATIONS",
    "ProtocolError",
    "TestMethod",
    "mann_whitney_u",
    "test_disparity",
)
