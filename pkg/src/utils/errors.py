"""Exception hierarchy shared by every subpackage."""

from typing import Optional


class DiffSpaceError(Exception):
    """Base class for all library errors."""


class ExpressionParseError(DiffSpaceError):
    """Text expression does not follow the grammar."""

    def __init__(self, message: str, line: int = 1, column: int = 1, source: Optional[str] = None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{message} (line {line}, column {column})")


class EvaluationError(DiffSpaceError):
    """A node was evaluated outside its open domain."""

    def __init__(self, node: str, reason: str):
        self.node = node
        self.reason = reason
        super().__init__(f"Cannot evaluate {node}: {reason}")


class DimensionMismatchError(DiffSpaceError):
    """Input or output dimensions do not agree."""


class MembershipError(DiffSpaceError):
    """A point is not in the space it is supposed to lie in."""


class SpaceConstructionError(DiffSpaceError):
    """A space definition is unusable."""


class ChainError(DiffSpaceError):
    """Invalid cube or chain operation."""


class FormError(DiffSpaceError):
    """Degree or space mismatch between forms and cubes."""


class NormalizationError(FormError):
    """Form is not presented in dt-split shape."""


class NotClosedError(FormError):
    """Closedness certificate failed."""

    def __init__(self, residual: float, tolerance: float):
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            f"Form is not closed: max |<d alpha, tau>| = {residual:.3e} exceeds {tolerance:.1e}"
        )


class ContractionError(DiffSpaceError):
    """Contraction endpoints or star shape do not validate."""


class GroupActionError(DiffSpaceError):
    """Group elements are not closed under products, or not invertible."""


class InvarianceError(DiffSpaceError):
    """A function or field is not invariant under a group action."""

    def __init__(self, message: str, residual: float = float("nan")):
        self.residual = residual
        super().__init__(message)


class SeparationError(DiffSpaceError):
    """Invariant components fail to separate sampled orbits."""


class CoverError(DiffSpaceError):
    """Cover flags disagree with sampling."""


class ConfigError(DiffSpaceError):
    """Configuration file cannot be loaded or validated."""


class FixtureNotFoundError(ConfigError):
    """A referenced fixture is not registered."""

    def __init__(self, kind: str, name: str, available: Optional[list] = None):
        self.kind = kind
        self.name = name
        hint = f"; available: {', '.join(sorted(available))}" if available else ""
        super().__init__(f"Unknown {kind} fixture '{name}'{hint}")
