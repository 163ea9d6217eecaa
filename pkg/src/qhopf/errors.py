"""Exception hierarchy shared across the package.

Every error raised by the library derives from QhopfError so callers
(and the CLI) can distinguish mathematical failures from bugs.
"""


class QhopfError(Exception):
    """Base class for all library errors."""


class ScalarError(QhopfError):
    """A string or JSON value does not denote an exact rational."""


class DimensionError(QhopfError):
    """Shapes of vectors, matrices or tensor factors do not match."""


class SingularMatrixError(QhopfError):
    """A square matrix required to be invertible is singular."""

    def __init__(self, message: str, rank: int):
        super().__init__(f"{message} (rank {rank})")
        self.rank = rank


class AlgebraAxiomError(QhopfError):
    """The multiplication table fails associativity or unitality."""


class NotInvertibleError(QhopfError):
    """An algebra element has no right inverse."""


class OneSidedInverseError(QhopfError):
    """An algebra element has a right inverse that is not a left inverse."""


class InvalidGaugeError(QhopfError):
    """A claimed gauge element is not invertible or not counit-normalized."""


class InternalInconsistencyError(QhopfError):
    """A uniqueness theorem was violated; signals a bug, not user error."""


class XiNotWellDefinedError(QhopfError):
    """The descent of a map to a quotient fails on a subspace generator."""


class XiNotInvertibleError(QhopfError):
    """The canonical quotient-to-algebra map is not bijective."""

    def __init__(self, message: str, rank: int):
        super().__init__(f"{message} (rank {rank})")
        self.rank = rank


class PhiNotCentralError(QhopfError):
    """The reassociator is not central, so the shortcut does not apply."""


class CNotInvertibleError(QhopfError):
    """The canonical element of the one-element-twist construction is singular."""


class NotRelatedError(QhopfError):
    """No invertible element connects the two given antipode triples."""


class NotAGroupError(QhopfError):
    """A claimed group multiplication table fails the group axioms."""


class DocumentError(QhopfError):
    """An input document is malformed (missing field, bad kind, bad index)."""
