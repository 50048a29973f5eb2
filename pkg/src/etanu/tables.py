"""Finite groups as complete multiplication tables.

Tables are the canonical small-group representation here: element 0 is always
the identity and the element order after that is fixed by whoever constructed
the table, so every downstream report is reproducible.  Associativity is
checked exhaustively at construction up to size 256 and trusted above.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterable

import numpy as np

from .errors import InvariantViolation

ASSOCIATIVITY_CHECK_LIMIT = 256


class GroupTable:
    """A finite group given by its full multiplication table."""

    __slots__ = ("size", "mult", "inv", "name", "_abelian")

    identity = 0

    def __init__(self, mult, name: str | None = None, check: bool = True):
        table = np.array(mult, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError("multiplication table must be square")
        n = table.shape[0]
        if n == 0:
            raise ValueError("group table cannot be empty")
        if check:
            self._validate(table)
        table.setflags(write=False)
        self.size = n
        self.mult = table
        self.inv = self._inverses(table)
        self.name = name
        self._abelian: bool | None = None

    @staticmethod
    def _validate(table: np.ndarray) -> None:
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise ValueError("table entries out of range")
        idx = np.arange(n, dtype=np.int32)
        if not (table[0] == idx).all() or not (table[:, 0] == idx).all():
            raise ValueError("element 0 is not a two-sided identity")
        if not ((table == 0).any(axis=1).all() and (table == 0).any(axis=0).all()):
            raise ValueError("some element has no inverse")
        if n <= ASSOCIATIVITY_CHECK_LIMIT:
            for a in range(n):
                # mult[mult[a,b],c] vs mult[a, mult[b,c]] for all b, c
                if not np.array_equal(table[table[a]], table[a][table]):
                    raise ValueError(f"associativity fails at element {a}")

    @staticmethod
    def _inverses(table: np.ndarray) -> np.ndarray:
        n = table.shape[0]
        inv = np.empty(n, dtype=np.int32)
        rows, cols = np.nonzero(table == 0)
        inv[rows] = cols
        # right inverses must also be left inverses
        if not (table[inv, np.arange(n)] == 0).all():
            raise ValueError("left and right inverses disagree")
        inv.setflags(write=False)
        return inv

    # -- arithmetic ---------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def conj(self, a: int, x: int) -> int:
        """``a`` conjugated by ``x``: ``x^-1 a x``."""
        return int(self.mult[self.mult[self.inv[x], a], x])

    def commutator(self, a: int, b: int) -> int:
        return int(self.mult[self.mult[self.inv[a], self.inv[b]], self.mult[a, b]])

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = int(self.mult[x, a])
            k += 1
        return k

    def power(self, a: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse(a), -k)
        x = 0
        for _ in range(k):
            x = int(self.mult[x, a])
        return x

    def is_abelian(self) -> bool:
        if self._abelian is None:
            self._abelian = bool(np.array_equal(self.mult, self.mult.T))
        return self._abelian

    def elements(self) -> range:
        return range(self.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.size == other.size and np.array_equal(self.mult, other.mult)

    def __hash__(self) -> int:
        return hash(self.mult.tobytes())

    def __repr__(self) -> str:
        label = self.name or "?"
        return f"GroupTable({label}, size={self.size})"

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        out: dict = {"size": self.size, "mult": self.mult.tolist()}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json_dict(cls, data: dict) -> "GroupTable":
        mult = data["mult"]
        if len(mult) != data.get("size", len(mult)):
            raise ValueError("declared size does not match table")
        return cls(mult, name=data.get("name"))

    # -- subgroups ----------------------------------------------------------

    def subtable(self, members: Iterable[int]) -> tuple["GroupTable", list[int]]:
        """Table of a subgroup given by its (closed) element set.

        Members are ordered ascending, which keeps the identity at index 0.
        Returns the subgroup table and the list mapping new indices to
        original ones.
        """
        order = sorted(set(members))
        if not order or order[0] != 0:
            raise ValueError("subgroup must contain the identity")
        pos = {orig: i for i, orig in enumerate(order)}
        k = len(order)
        mult = np.empty((k, k), dtype=np.int32)
        for i, a in enumerate(order):
            for j, b in enumerate(order):
                prod = int(self.mult[a, b])
                if prod not in pos:
                    raise ValueError("element set is not closed under multiplication")
                mult[i, j] = pos[prod]
        return GroupTable(mult, check=False), order


def closure(table: GroupTable, seeds: Iterable[int]) -> frozenset[int]:
    """Multiplicative closure of ``seeds`` (a subgroup, since the group is finite)."""
    members = {0}
    members.update(seeds)
    frontier = sorted(members)
    while frontier:
        fresh = set()
        base = sorted(members)
        for a in frontier:
            for b in base:
                for prod in (table.mul(a, b), table.mul(b, a)):
                    if prod not in members and prod not in fresh:
                        fresh.add(prod)
        members.update(fresh)
        frontier = sorted(fresh)
    return frozenset(members)


def commutator_set(table: GroupTable) -> frozenset[int]:
    m, inv = table.mult, table.inv
    left = m[np.ix_(inv, inv)]
    return frozenset(int(x) for x in np.unique(m[left, m]))


def derived_subgroup(table: GroupTable) -> frozenset[int]:
    """Element set of the subgroup generated by all commutators."""
    return closure(table, commutator_set(table))


def exponent(table: GroupTable) -> int:
    """Least common multiple of the element orders."""
    result = 1
    for a in table.elements():
        result = lcm(result, table.element_order(a))
    return result


def conjugacy_class_sizes(table: GroupTable) -> list[int]:
    """Sorted class sizes; they always sum to the group order."""
    return sorted(len(c) for c in conjugacy_classes(table))


def conjugacy_classes(table: GroupTable) -> list[frozenset[int]]:
    m, inv = table.mult, table.inv
    all_idx = np.arange(table.size, dtype=np.int32)
    seen = np.zeros(table.size, dtype=bool)
    classes = []
    for a in range(table.size):
        if seen[a]:
            continue
        cls = np.unique(m[m[inv, a], all_idx])
        seen[cls] = True
        classes.append(frozenset(int(x) for x in cls))
    return classes


def center(table: GroupTable) -> frozenset[int]:
    mask = (table.mult == table.mult.T).all(axis=1)
    return frozenset(int(x) for x in np.flatnonzero(mask))


def is_normal(table: GroupTable, members: Iterable[int]) -> bool:
    member_set = set(members)
    return all(
        table.conj(a, x) in member_set for a in member_set for x in table.elements()
    )


@dataclass(frozen=True)
class Fingerprint:
    """Structure fingerprint used in place of full isomorphism testing."""

    order: int
    exponent: int
    class_sizes: tuple[int, ...]
    abelian_invariants: tuple[int, ...] | None

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "exponent": self.exponent,
            "class_sizes": list(self.class_sizes),
            "abelian_invariants": (
                list(self.abelian_invariants) if self.abelian_invariants is not None else None
            ),
        }


def fingerprint(table: GroupTable) -> Fingerprint:
    invariants = None
    if table.is_abelian():
        from .abelian import abelian_structure

        invariants = abelian_structure(table).invariant_factors
    return Fingerprint(
        order=table.size,
        exponent=exponent(table),
        class_sizes=tuple(conjugacy_class_sizes(table)),
        abelian_invariants=invariants,
    )


@dataclass(frozen=True)
class Homomorphism:
    """A map between group tables given on every source element."""

    source: GroupTable
    target: GroupTable
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.size:
            raise ValueError("images must cover every source element")

    def __call__(self, a: int) -> int:
        return self.images[a]

    def respects_multiplication(self) -> bool:
        im = np.asarray(self.images, dtype=np.int32)
        return bool(np.array_equal(im[self.source.mult], self.target.mult[np.ix_(im, im)]))

    def verify(self) -> None:
        if self.images[0] != 0:
            raise InvariantViolation("homomorphism does not fix the identity")
        if not self.respects_multiplication():
            raise InvariantViolation("map does not respect multiplication")

    def kernel(self) -> frozenset[int]:
        return frozenset(a for a in self.source.elements() if self.images[a] == 0)

    def image(self) -> frozenset[int]:
        return frozenset(self.images)
