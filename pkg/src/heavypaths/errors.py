"""Exception types shared across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Structural problem with a graph or a graph operation's arguments."""


class ParseError(GraphError):
    """Graph text could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class BudgetExceededError(RuntimeError):
    """An exact search hit its vertex or node budget before finishing."""


class HypothesisViolationError(ValueError):
    """A weighted-degree hypothesis does not hold at the requested threshold.

    Carries the largest threshold that would have been admissible and, when
    one exists, the vertex tuple that falls short.
    """

    def __init__(self, kind, d, d_star, witness=None):
        self.kind = kind
        self.d = d
        self.d_star = d_star
        self.witness = witness
        where = f" (witness tuple {witness})" if witness else ""
        super().__init__(
            f"hypothesis {kind} fails at d={d}: largest admissible threshold "
            f"is {d_star}{where}"
        )


class GuaranteeError(RuntimeError):
    """A degree condition promised a path that the exact search cannot find.

    This never fires on correct inputs; it exists so that a violation of the
    guaranteed bound surfaces as a loud test failure instead of a bad witness.
    """


class InternalConsistencyError(RuntimeError):
    """A constructive case's asserted precondition failed mid-run.

    Signals a bug in the construction (or an instance outside its analysis),
    never a problem with caller input.
    """
