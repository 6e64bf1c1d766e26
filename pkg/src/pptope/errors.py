"""Exception hierarchy shared by all modules."""


class PreconditionError(ValueError):
    """An operation was called with input violating its contract."""


class GeneralPositionError(PreconditionError):
    """Three points are collinear (or two coincide)."""

    def __init__(self, triple, message=None):
        self.triple = tuple(triple)
        super().__init__(message or f"points {self.triple} are not in general position")


class NotInImageError(PreconditionError):
    """A strain vector is not the image of any motion."""


class InvariantViolation(RuntimeError):
    """A structural guarantee failed; signals a geometry bug or an invalid perturbation."""


class InvalidPerturbationError(InvariantViolation):
    """A perturbation table does not produce the expected simple polyhedron."""
