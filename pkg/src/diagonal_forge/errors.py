"""Exception hierarchy shared by every module.

Each error carries a stable ``code`` string so the CLI and the JSON service
can map failures to structured ``{code, message, witness?}`` payloads without
string-matching messages.
"""


class EngineError(Exception):
    """Base class for all engine failures."""

    code = "engine-error"

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DomainError(EngineError):
    """Input outside an operation's stated domain."""

    code = "domain-error"


class UnsupportedComparisonError(EngineError):
    """Comparison of two surds with different radicands (both irrational)."""

    code = "unsupported-comparison"


class ParseError(EngineError):
    """Malformed canonical text form; ``line`` set when parsing files."""

    code = "parse-error"

    def __init__(self, message, line=None, witness=None):
        super().__init__(message, witness)
        self.line = line


class NestingError(EngineError):
    """A chain of intervals violates closed-interval nesting."""

    code = "nesting-violation"

    def __init__(self, message, link=None):
        super().__init__(message)
        self.link = link


class InsufficientDigitsError(EngineError):
    """A digit stream is too short for the requested position."""

    code = "insufficient-digits"

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class NotACoverError(EngineError):
    """The pieces fail to cover the target; ``witness`` is an uncovered point."""

    code = "not-a-cover"


class DensityViolationError(EngineError):
    """A promised-dense open set misses a required subinterval."""

    code = "density-violation"

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ModulusViolationError(EngineError):
    """Stored terms of a Cauchy real violate its declared modulus."""

    code = "modulus-violation"

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class OracleViolationError(EngineError):
    """A perfect-set oracle broke its sampling contract."""

    code = "oracle-violation"


class ConfigurationError(EngineError):
    """Mismatched game kind / enumeration payload."""

    code = "configuration-error"


class TurnError(EngineError):
    """A move was submitted out of turn."""

    code = "turn-error"


class IllegalMoveError(EngineError):
    """A move violates the game's exact inequality constraints."""

    code = "illegal-move"
