"""Exception types shared across the package."""

from __future__ import annotations


class EtanuError(Exception):
    """Base class for errors raised by this package."""


class DegreeMismatch(EtanuError):
    """A permutation was combined with an object of a different degree."""


class OrderLimitExceeded(EtanuError):
    """A group was larger than the caller's element-enumeration limit."""

    def __init__(self, order: int, limit: int):
        super().__init__(f"group order {order} exceeds limit {limit}")
        self.order = order
        self.limit = limit


class EnumerationLimitExceeded(EtanuError):
    """Coset enumeration ran out of table rows before completing."""

    def __init__(self, max_cosets: int, high_water: int):
        super().__init__(
            f"coset enumeration exceeded {max_cosets} table rows "
            f"(live-row high water {high_water})"
        )
        self.max_cosets = max_cosets
        self.high_water = high_water


class InfiniteAbelianization(EtanuError):
    """A relation matrix presented an infinite abelian group."""


class NonAbelianInput(EtanuError):
    """An operation defined only for abelian groups received a non-abelian one."""


class InvariantViolation(EtanuError):
    """A structural invariant failed; this signals a bug, never bad input."""


class SearchBudgetExceeded(EtanuError):
    """An exhaustive action search hit its configured budget."""

    def __init__(self, budget: int, examined: int):
        super().__init__(f"action search budget {budget} exhausted after {examined} candidates")
        self.budget = budget
        self.examined = examined


class PairTooLarge(EtanuError):
    """A realization was requested for groups above the default order cap."""
