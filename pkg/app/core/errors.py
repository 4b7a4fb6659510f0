"""
Exception hierarchy for the solver
"""
from typing import Optional


class GaError(Exception):
    """Base class for every error raised by the solver"""


class ConfigError(GaError):
    """Unreadable or invalid configuration file"""


class InvalidRange(GaError, ValueError):
    """Requested integer range has lo > hi"""

    def __init__(self, lo: int, hi: int):
        super().__init__(f"invalid range: lo={lo} > hi={hi}")
        self.lo = lo
        self.hi = hi


class LengthMismatch(GaError, ValueError):
    """Chromosome length differs from the objective's variable count"""

    def __init__(self, expected: int, actual: int):
        super().__init__(f"length mismatch: expected {expected} genes, got {actual}")
        self.expected = expected
        self.actual = actual


class InvalidCutPoint(GaError, ValueError):
    """Crossover cut point outside [1, L-1]"""

    def __init__(self, cut: int, length: int):
        super().__init__(f"invalid cut point {cut}: must lie in [1, {length - 1}]")
        self.cut = cut
        self.length = length


class DomainTooLarge(GaError):
    """Oracle scan would exceed the configured cell limit"""

    def __init__(self, cells: int, limit: int):
        super().__init__(
            f"domain has {cells} cells, above the scan limit of {limit}; "
            "narrow the bounds or pass a cap"
        )
        self.cells = cells
        self.limit = limit


class ScriptParseError(GaError, ValueError):
    """Malformed line in a draw script"""

    def __init__(self, line_number: int, message: str, source: Optional[str] = None):
        where = f"{source}:{line_number}" if source else f"line {line_number}"
        super().__init__(f"{where}: {message}")
        self.line_number = line_number
        self.source = source


class ScriptError(GaError):
    """Scripted draw could not be served. Carries the phase and generation once known."""

    reason = "failed"

    def __init__(self, message: str):
        super().__init__(message)
        self.phase: Optional[str] = None
        self.generation: Optional[int] = None


class ScriptExhausted(ScriptError):
    reason = "exhausted"


class ScriptTypeMismatch(ScriptError):
    reason = "type mismatch"


class ScriptOutOfRange(ScriptError):
    reason = "value out of range"


class RunAborted(GaError):
    """A run stopped because its random source failed mid-flight"""

    def __init__(self, cause: ScriptError):
        phase = cause.phase or "unknown phase"
        generation = cause.generation if cause.generation is not None else "?"
        super().__init__(f"script {cause.reason} during {phase}, generation {generation}: {cause}")
        self.cause = cause
        self.phase = cause.phase
        self.generation = cause.generation
