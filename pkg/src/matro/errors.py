"""Exception hierarchy. Every error raised on bad input derives from ``MatroidError``."""

from __future__ import annotations


class MatroidError(ValueError):
    pass


class BoundsViolated(MatroidError):
    pass


class EmptyFamily(MatroidError):
    def __init__(self):
        super().__init__("bases family is empty")


class WrongCardinality(MatroidError):
    def __init__(self, basis, r):
        from .bits import fmt

        self.basis = basis
        super().__init__(f"set {fmt(basis)} does not have cardinality {r}")


class ExchangeViolated(MatroidError):
    def __init__(self, b1, b2, e):
        from .bits import fmt

        self.b1, self.b2, self.e = b1, b2, e
        super().__init__(
            f"basis exchange fails: B1={fmt(b1)}, B2={fmt(b2)}, e={e} has no partner in B2-B1"
        )


class RankZero(MatroidError):
    def __init__(self):
        super().__init__("operation requires rank at least 1")


class NotCircuitHyperplane(MatroidError):
    pass


class BasepointDegenerate(MatroidError):
    pass


class SizeMismatch(MatroidError):
    pass


class SameElement(MatroidError):
    def __init__(self, e):
        super().__init__(f"elements must be distinct (got {e} twice)")


class PreconditionViolated(MatroidError):
    pass


class NonpositivePoint(MatroidError):
    pass


class ParseError(MatroidError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class CountMismatch(MatroidError):
    pass
