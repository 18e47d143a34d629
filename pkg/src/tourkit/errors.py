"""Shared exception types.

Search budgets are node/step counts, never wall-clock, so results are
machine-independent. Exceeding a budget is always a distinct outcome,
raised as :class:`BudgetExceeded` rather than silently returned as a
negative answer.
"""


class BudgetExceeded(Exception):
    """A solver or enumeration ran out of its node/step budget.

    Attributes carry whatever partial information the search proved before
    stopping (e.g. a lower bound), so callers can report honestly.
    """

    def __init__(self, message, **info):
        super().__init__(message)
        self.info = dict(info)


class AuditError(Exception):
    """An internal structural audit failed.

    Raised loudly when a construction violates a property it is supposed
    to guarantee (e.g. a clique family that is not edge-disjoint).
    """
