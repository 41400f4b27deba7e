"""Exception hierarchy shared by all pdlab modules."""


class PdlabError(Exception):
    """Base class for all pdlab failures."""


class ParameterDomainError(PdlabError, ValueError):
    """A mode or link parameter is outside its physical/supported domain."""


class ResolutionError(PdlabError, RuntimeError):
    """A time grid cannot represent the requested state at the required accuracy."""


class AccuracyError(PdlabError, RuntimeError):
    """An adaptive numerical routine failed to reach its accuracy target."""

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class ConfigError(PdlabError, ValueError):
    """A sweep configuration file (or CLI flag set) is invalid."""
