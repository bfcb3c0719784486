"""Exception hierarchy shared by every tower module."""


class TowerError(Exception):
    """Base class for domain errors raised by towerarith."""


class DomainError(TowerError, ValueError):
    """Input lies outside the domain of an operation (e.g. encode(0))."""


class EvaluationOverflow(TowerError, OverflowError):
    """An intermediate value exceeded the configured evaluation cap."""


class DuplicateGenerated(TowerError):
    """A generating product produced some tower more than once."""


class NonRepresentable(TowerError):
    """The result has no tower (subtraction reaching zero or below)."""


class NotPerfectSquare(TowerError):
    pass


class NotApplicable(TowerError):
    """A specialised strategy does not apply to the given inputs."""


class NotFound(TowerError):
    """A search universe did not contain the requested tower."""


class CanonicalError(TowerError, ValueError):
    """Text describes a non-canonical value (repeated pillar, signed exponent)."""


class TowerSyntaxError(TowerError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position
