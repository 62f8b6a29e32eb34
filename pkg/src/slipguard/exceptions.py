"""Custom exception hierarchy for slipguard."""

from __future__ import annotations

from pathlib import Path


class SlipGuardError(Exception):
    """Base exception for all slipguard errors."""


class DomainError(SlipGuardError, ValueError):
    """An argument lies outside the domain of the operation."""


class InfeasibleQuoteError(DomainError):
    """Requested output cannot be produced by the pool."""


class ArithmeticOverflowError(SlipGuardError, ArithmeticError):
    """Swap arithmetic produced a non-finite value."""


class UnboundedOptimumError(DomainError):
    """The attacker's profit has no finite maximiser (fee-free pool, no tolerance)."""


class NoInteriorOptimumError(SlipGuardError):
    """The attacker's profit does not increase from zero input."""


class VictimRevertedError(SlipGuardError):
    """The victim's trade would revert under the given front-run."""


class NotEnoughDataError(SlipGuardError):
    """The history window is too short for the requested statistic."""


class SearchError(SlipGuardError):
    """A numeric search did not converge."""

    def __init__(self, message: str, bracket: tuple[float, float]) -> None:
        super().__init__(f"{message} (bracket [{bracket[0]!r}, {bracket[1]!r}])")
        self.bracket = bracket


class IngestionError(SlipGuardError):
    """Error while loading or validating a dataset."""

    def __init__(self, message: str, path: Path | str | None = None, line: int | None = None) -> None:
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(f"{location}{message}")
        self.path = path
        self.line = line


class PriceFeedError(IngestionError):
    """A price is missing or a feed gap exceeds the forward-fill limit."""


class ReserveDataError(IngestionError):
    """A reserve record is non-positive or cannot be reconstructed."""

    def __init__(self, message: str, block: int, path: Path | str | None = None) -> None:
        super().__init__(f"block {block}: {message}", path=path)
        self.block = block


class ReportError(SlipGuardError):
    """Error during report generation."""


class ConfigError(SlipGuardError):
    """Error in configuration loading or validation."""
