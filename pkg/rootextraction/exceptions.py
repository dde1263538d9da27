"""
Error hierarchy for the root extraction library.

Modelled on DRF's APIException: each class has a default message and a
machine-readable code, which the management commands report as the `kind`
of their error payloads.
"""


class RootExtractionError(Exception):
    default_detail = 'Root extraction failed.'
    default_code = 'error'

    def __init__(self, detail=None, code=None, **extra):
        self.detail = detail if detail is not None else self.default_detail
        self.code = code if code is not None else self.default_code
        self.extra = extra
        super().__init__(self.detail)

    def as_dict(self):
        return {'kind': self.code, 'detail': str(self.detail), **self.extra}


# Field arithmetic

class FieldMismatch(RootExtractionError):
    default_detail = 'Operands belong to different fields.'
    default_code = 'field_mismatch'


class DivisionByZero(RootExtractionError, ZeroDivisionError):
    default_detail = 'Division by zero in a finite field.'
    default_code = 'division_by_zero'


class NotASquare(RootExtractionError):
    default_detail = 'Element is not a square.'
    default_code = 'not_a_square'


class BadParams(RootExtractionError):
    default_detail = 'Invalid parameters.'
    default_code = 'bad_params'


# Curve and torsion

class OffCurve(RootExtractionError):
    default_detail = 'Point does not lie on the curve.'
    default_code = 'off_curve'


class NotInTorsion(RootExtractionError):
    default_detail = 'Point is not in the l^e-torsion subgroup.'
    default_code = 'not_in_torsion'


class OrderError(RootExtractionError):
    default_detail = 'Point does not have the required order.'
    default_code = 'order_error'


class RetryLimitExceeded(RootExtractionError):
    default_detail = 'Randomized search exceeded its retry limit.'
    default_code = 'retry_limit_exceeded'


# Discrete logarithms

class NotInSubgroup(RootExtractionError):
    default_detail = 'Element is not in the subgroup generated by the base.'
    default_code = 'not_in_subgroup'


class VerificationFailed(RootExtractionError):
    default_detail = 'Internal verification of a result failed.'
    default_code = 'verification_failed'


# Solvers

class PreconditionViolated(RootExtractionError):
    default_detail = 'Instance does not satisfy the algorithm precondition.'
    default_code = 'precondition_violated'


class NoSolution(RootExtractionError):
    default_detail = 'No generating solution exists (u + r != e).'
    default_code = 'no_solution'


class NotAPower(RootExtractionError):
    default_detail = 'Element is not an l^r-th power.'
    default_code = 'not_a_power'


class DegenerateSystem(RootExtractionError):
    default_detail = 'Simultaneous system is degenerate.'
    default_code = 'degenerate_system'


class NoGeneratingSolution(RootExtractionError):
    default_detail = 'Equations are consistent but no generating pair was found.'
    default_code = 'no_generating_solution'


# Oracles and parameter search

class TooLarge(RootExtractionError):
    default_detail = 'Group is too large to enumerate.'
    default_code = 'too_large'


class NotFound(RootExtractionError):
    default_detail = 'No parameters found within the search bound.'
    default_code = 'not_found'


# Errors that mean "mathematically no answer" rather than a fault
NON_EXISTENCE_ERRORS = (NoSolution, NotAPower, NoGeneratingSolution)
