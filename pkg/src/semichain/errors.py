"""Exception types for the engine, referee and service layers.

Every error carries a stable snake_case ``code`` so the HTTP layer can
mirror engine errors verbatim.
"""

from __future__ import annotations


class SemichainError(Exception):
    code = "error"


class OrderError(SemichainError):
    """An insertion would break the semi-order axioms."""

    def __init__(self, message: str = "", witness: int | None = None):
        super().__init__(message or self.__class__.__name__)
        self.witness = witness


class DownUpOverlap(OrderError):
    code = "down_up_overlap"


class NotDownwardClosed(OrderError):
    code = "not_downward_closed"


class NotUpwardClosed(OrderError):
    code = "not_upward_closed"


class TwoPlusTwo(OrderError):
    code = "two_plus_two"


class ThreePlusOne(OrderError):
    code = "three_plus_one"


class InternalInfeasible(SemichainError):
    """The interval constraint system was infeasible on a validated order.

    Must never fire; it signals a bug in the validation core.
    """

    code = "internal_infeasible"


class InvalidChain(SemichainError):
    code = "invalid_chain"


class NotMaximal(SemichainError):
    code = "not_maximal"


class UnknownStrategy(SemichainError):
    code = "unknown_strategy"


class ModeMismatch(SemichainError):
    code = "mode_mismatch"


class PointCapExceeded(SemichainError):
    code = "point_cap_exceeded"


class WidthExceeded(SemichainError):
    code = "width_exceeded"


class NotYourTurn(SemichainError):
    code = "not_your_turn"


class InconsistentReply(SemichainError):
    code = "inconsistent_reply"


class BudgetExceeded(SemichainError):
    code = "budget_exceeded"
