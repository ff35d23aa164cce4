"""Error types shared across the toolkit. Config and data errors are ValueErrors too."""


class HarnessError(Exception):
    """Root of every error the toolkit raises on purpose."""


class ConfigError(HarnessError, ValueError):
    """Experiment config is invalid. CLI exit code 1."""

    def __init__(self, message: str, diagnostics: list[str] | None = None) -> None:
        super().__init__(message)
        self.diagnostics = diagnostics or [message]


class DataError(HarnessError, ValueError):
    """Input data cannot be loaded or does not fit its schema. CLI exit code 2."""


class FoldFailure(HarnessError):
    """A cross-validation fold could not be fitted or scored."""

    def __init__(self, fold: int, reason: str) -> None:
        super().__init__(f"fold {fold}: {reason}")
        self.fold = fold
        self.reason = reason


class GridSearchError(HarnessError):
    """Every lattice point of a grid search failed."""
