"""Exception types shared across the package."""


class AlgebraError(ValueError):
    """Base class for all algebraic input/contract violations."""


class InvalidInputError(AlgebraError):
    """Malformed argument (length mismatch, flavor mismatch, bad key)."""


class DegreeError(AlgebraError):
    """An operation required homogeneous input or a specific degree."""


class ArityError(AlgebraError):
    """Requested bracket arity exceeds the arity cap of the algebra."""


class KindError(AlgebraError):
    """Operation not defined for this algebra kind."""


class NotMaurerCartanError(AlgebraError):
    """A gauge operation was applied to an element with nonzero MC defect."""


class DivergenceError(AlgebraError):
    """A derivation exponential failed to terminate within its bound.

    Cannot happen for a valid weight-nilpotent algebra; raised instead of
    silently truncating when a malformed table makes a series run away.
    """


class InvertibilityError(AlgebraError):
    """Element of a unital algebra has no inverse (zero constant term)."""


class ParseError(ValueError):
    """Spec-file syntax or semantic error, with a 1-based line number."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", col {column}"
            loc += ": "
        super().__init__(loc + message)
