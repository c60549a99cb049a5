"""Exception hierarchy shared by every seifertkit module."""


class SeifertError(Exception):
    """Base class for all seifertkit errors."""


class ParseError(SeifertError, ValueError):
    def __init__(self, text, offset, expected):
        self.text = text
        self.offset = offset
        self.expected = expected
        super().__init__(f"parse error at offset {offset}: expected {expected} in {text!r}")


class NonCoprimePair(SeifertError, ValueError):
    pass


# The local model and the symbol normalizer raise the same condition.
NotCoprime = NonCoprimePair


class NonPositiveOrder(SeifertError, ValueError):
    pass


class MembershipViolation(SeifertError, ValueError):
    pass


class NotRootOfUnity(SeifertError, ValueError):
    pass


class BadOrbifold(SeifertError, ValueError):
    def __init__(self, kind, orbifold=None):
        self.kind = kind
        self.orbifold = orbifold
        super().__init__(f"bad orbifold ({kind.value}): {orbifold}")


class CoverNotFound(SeifertError):
    """Raised when no smooth cover exists within the degree bound.

    ``exhausted`` is False when at least one degree was abandoned because
    the node budget ran out, in which case the answer is a resource limit
    and says nothing about existence.
    """

    def __init__(self, orbifold, max_degree, exhausted=True, truncated_degrees=()):
        self.orbifold = orbifold
        self.max_degree = max_degree
        self.exhausted = exhausted
        self.truncated_degrees = tuple(truncated_degrees)
        how = "exhaustively" if exhausted else f"with budget cut-offs at degrees {list(truncated_degrees)}"
        super().__init__(f"no smooth cover of {orbifold} up to degree {max_degree} (searched {how})")


class AlreadyOrientable(SeifertError, ValueError):
    pass


class GroupTooLarge(SeifertError):
    pass


class NotRegular(SeifertError, ValueError):
    pass


class NonInvertible(SeifertError, ValueError):
    pass


class AmbiguousExponent(SeifertError, ArithmeticError):
    pass


class LengthMismatch(SeifertError, ValueError):
    pass


class NonIntegralPullback(SeifertError, ValueError):
    pass


class PipelineError(SeifertError):
    """A module error re-raised with the pipeline stage that produced it."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
