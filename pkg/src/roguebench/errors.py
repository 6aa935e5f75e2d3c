"""Exception types shared across the package."""

from __future__ import annotations


class RogueBenchError(Exception):
    """Base class for all package errors."""


class ConfigError(RogueBenchError):
    """Invalid configuration text or values. Messages name the offending field."""


class GenerationError(RogueBenchError):
    """Floor generation could not satisfy its own invariants."""


class EncodeError(RogueBenchError):
    """A view cannot be encoded/decoded against the symbol table."""


class ContractError(RogueBenchError):
    """An API was called out of order (step before reset, step after done)."""


class AgentProtocolError(RogueBenchError):
    """An agent returned something outside the policy contract."""


class ReplayFormatError(RogueBenchError):
    """A replay log is malformed. Messages carry the 1-based line number."""


class ReplayDivergence(RogueBenchError):
    """Re-execution of a replay log disagrees with the logged rewards."""

    def __init__(self, step: int, message: str):
        super().__init__(message)
        self.step = step


class ReplayTamperError(RogueBenchError):
    """A replay log fails its checksum."""


class PlayError(RogueBenchError):
    """Interactive play cannot run in this terminal."""
