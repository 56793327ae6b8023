"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid generator configuration (bad permutation, non-bijective index map, ...)."""


class BudgetExceededError(RuntimeError):
    """Requested computation exceeds the allowed work or enumeration budget."""
