"""Exception types shared across the package."""


class QSubfactorError(Exception):
    """Base class; ``kind`` is the machine-readable tag the CLI prints."""

    kind = "error"


class DomainError(QSubfactorError, ValueError):
    kind = "domain"


class ParseError(QSubfactorError, ValueError):
    """Malformed rep-spec. ``offset`` is the byte offset of the problem."""

    kind = "parse"

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class ShapeError(QSubfactorError, ValueError):
    kind = "shape"


class DegeneracyError(QSubfactorError, ArithmeticError):
    """Numerical rank deficiency while splitting a tensor product."""

    kind = "degeneracy"
