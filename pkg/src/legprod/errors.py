"""Exception taxonomy.

Every domain error carries a stable ``name`` (the class name) that the CLI
reports in its JSON error object.
"""


class LegprodError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def name(self):
        return type(self).__name__


class InvalidModel(LegprodError):
    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("invalid model: " + "; ".join(self.violations))


class UnknownWhitneySign(LegprodError):
    pass


class BadChordOrder(LegprodError):
    pass


class ConstraintViolated(LegprodError):
    pass


class ActionTie(LegprodError):
    pass


class ActionCollision(LegprodError):
    pass


class DuplicateProductAction(LegprodError):
    pass


class ParityViolation(LegprodError):
    pass


class WindowViolation(LegprodError):
    pass


class DegenerateTriple(LegprodError):
    pass


class UnknownVariable(LegprodError):
    pass


class InfeasibleBase(LegprodError):
    pass


class InvalidDiagram(LegprodError):
    pass


class ParseError(LegprodError):
    """Malformed textual input (rationals, PD tokens, JSON documents)."""
