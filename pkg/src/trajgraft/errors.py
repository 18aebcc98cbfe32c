"""Shared exception types."""


class TrajgraftError(Exception):
    """Base class for package errors."""


class ShapeError(TrajgraftError):
    """Operands have incompatible dimensions."""


class ContractError(TrajgraftError):
    """An operation was called outside its stated preconditions."""


class NonFiniteError(TrajgraftError):
    """An op produced NaN or Inf."""

    def __init__(self, op: str, detail: str = ""):
        self.op = op
        super().__init__(f"non-finite values produced by op '{op}'" + (f" ({detail})" if detail else ""))


class ConfigError(TrajgraftError):
    """Invalid or inconsistent configuration."""
