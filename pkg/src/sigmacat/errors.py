"""Exception types shared across the package.

Failures of *validation* (a category that is not a category, a
transformation that breaks an axiom) are never exceptions: they are
reported as content.  Exceptions are reserved for resource limits,
malformed input, and internal-consistency violations that signal a bug.
"""


class SigmacatError(Exception):
    pass


class SizeLimitExceeded(SigmacatError):
    """An enumeration passed the configured candidate budget."""


class UndecidedAtCap(SigmacatError):
    """A bounded word closure was still growing at the cap.

    Most operations report this as a status flag on the result; the
    exception form exists for callers that cannot proceed without a
    finite realization.
    """


class CertificateFailure(SigmacatError):
    """A universal-property certificate failed.  Always a bug."""


class Inconsistency(SigmacatError):
    """Two routes that must agree disagreed.  Always a bug."""


class PreconditionFailed(SigmacatError):
    """A documented precondition of an operation does not hold."""


class ParseError(SigmacatError):
    """A document does not conform to the wire format."""


class ValidationError(SigmacatError):
    """A parsed document fails its structural validation."""
