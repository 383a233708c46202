"""Exception types shared across the library."""


class NeurochaosError(Exception):
    """Base class for all library errors."""


class DomainError(NeurochaosError, ValueError):
    """An input value lies outside its legal domain."""


class NonConvergenceError(NeurochaosError, RuntimeError):
    """A neural trace failed to enter the recognition neighbourhood.

    ``cells`` lists the offending (row, attribute) pairs when raised from a
    matrix transform, or is None for a single-stimulus firing.
    """

    def __init__(self, message, cells=None):
        super().__init__(message)
        self.cells = cells


class ShapeMismatchError(NeurochaosError, ValueError):
    """Array shapes are incompatible."""


class ConstantAttributeError(NeurochaosError, ValueError):
    """Min-max scaling is undefined for constant attributes.

    ``attributes`` holds the offending column indices so callers can drop
    them or abort.
    """

    def __init__(self, attributes):
        self.attributes = list(attributes)
        super().__init__(f"constant attribute(s) at column(s) {self.attributes}")


class EmptyClassError(NeurochaosError, ValueError):
    """A class has no training rows."""


class KTooLargeError(NeurochaosError, ValueError):
    """k exceeds the number of training rows."""


class LabelOutOfRangeError(NeurochaosError, ValueError):
    """A label falls outside 0..C-1."""


class EmptyMatrixError(NeurochaosError, ValueError):
    """A confusion matrix with zero total count."""


class ZeroBaselineError(NeurochaosError, ValueError):
    """Boost is undefined for a zero baseline score."""


class ClassTooSmallError(NeurochaosError, ValueError):
    """A class has too few rows for the requested split or sample."""


class TooFewRowsError(NeurochaosError, ValueError):
    """Fewer rows than cross-validation folds."""


class ParseError(NeurochaosError, ValueError):
    """A CSV cell failed to parse; carries row and column context."""

    def __init__(self, message, row=None, column=None):
        self.row = row
        self.column = column
        super().__init__(message)


class UnknownLabelError(NeurochaosError, ValueError):
    """A raw label is missing from the label map."""


class ProvenanceMismatchError(NeurochaosError, ValueError):
    """Two experiment results cannot be compared (different provenance)."""
