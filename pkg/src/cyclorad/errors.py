"""Exception hierarchy.

Every error carries an ``exit_code`` that the command-line front end uses
verbatim, so codes are part of the public contract:

    2  invalid input (bad sides, bad signature, parse failure, ...)
    3  no admissible root
    1  internal failure (non-convergence, reconstruction did not close)
"""


class CycloradError(Exception):
    exit_code = 1


class ValidationError(CycloradError, ValueError):
    exit_code = 2


class ParseError(ValidationError):
    pass


class TooFewSides(ValidationError):
    pass


class NonPositiveSide(ValidationError):
    pass


class DegeneratePolygon(ValidationError):
    pass


class ChordExceedsDiameter(ValidationError):
    pass


class InvalidSignature(ValidationError):
    pass


class InvalidStar(ValidationError):
    pass


class InconsistentClassification(ValidationError):
    pass


class DivergentTerm(ValidationError):
    pass


class DegreeOverflow(ValidationError):
    pass


class NoRoot(CycloradError):
    exit_code = 3


class NoQualifyingRoot(NoRoot):
    pass


class NoConvergence(CycloradError):
    pass


class NotClosed(CycloradError):
    pass
