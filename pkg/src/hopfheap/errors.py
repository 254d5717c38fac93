"""Exception hierarchy.

Every error raised by the library derives from :class:`HopfError`, so callers
(the CLI in particular) can separate library failures from programming bugs.
Errors that mean "the input data is malformed" derive from :class:`InputError`;
the CLI maps those to exit code 2.
"""

from __future__ import annotations


class HopfError(Exception):
    """Base class for all library errors."""


class InputError(HopfError):
    """Malformed input: bad dimensions, unparsable data, dangling names."""


class DimMismatch(InputError, ValueError):
    pass


class FieldMismatch(InputError, ValueError):
    pass


class BadPermutation(InputError, ValueError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, position: str | None = None, token: str | None = None):
        self.message = message
        self.position = position
        self.token = token
        detail = message
        if position is not None:
            detail += f" at {position}"
        if token is not None:
            detail += f" (token {token!r})"
        super().__init__(detail)


class DanglingReference(InputError):
    pass


class ZeroInverse(HopfError, ZeroDivisionError):
    pass


class Singular(HopfError):
    pass


class UnsupportedDimension(HopfError):
    pass


class ConstructionInvalid(HopfError):
    """A construction produced an object that failed re-verification."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)


class PreconditionFailed(HopfError):
    """Base for typed hypothesis failures of constructions."""


class NotGroupLike(PreconditionFailed):
    pass


class CounitNotOne(PreconditionFailed):
    pass


class NotCocommutative(PreconditionFailed):
    pass


class NotCommutative(PreconditionFailed):
    pass


class NotIdempotent(PreconditionFailed):
    pass


class NotHeapEndo(PreconditionFailed):
    pass


class NoCircUnit(PreconditionFailed):
    pass


class NoAntipode(PreconditionFailed):
    pass


class NotCommutativeAlgebra(PreconditionFailed):
    pass


class NotAlgebraMap(PreconditionFailed):
    pass


class AntipodeCommutationFails(PreconditionFailed):
    pass


class FixedPointFails(PreconditionFailed):
    pass


class NotAutomorphism(PreconditionFailed):
    pass


class CounitCondFails(PreconditionFailed):
    pass


class ImageNotGroupLike(PreconditionFailed):
    pass


class NotSurjective(PreconditionFailed):
    def __init__(self, message: str, rank: int | None = None):
        self.rank = rank
        super().__init__(message)


class NotVerified(PreconditionFailed):
    """An input object fails its own axioms, so a construction refuses it."""

    def __init__(self, message: str, report=None):
        self.report = report
        super().__init__(message)
