"""Permutations and permutation groups.

Permutations are image arrays on 0-based points and compose left to right:
``(p * q)(x) == q(p(x))``, matching the right-action convention used by the
coset tables in :mod:`etanu.coset`.  Group order and membership go through a
deterministic Schreier-Sims chain whose base points are chosen in ascending
order, so repeated runs produce identical structures.
"""

from __future__ import annotations

from math import lcm
from typing import Callable, Sequence

import numpy as np

from .errors import DegreeMismatch, InvariantViolation, OrderLimitExceeded


class Permutation:
    """An immutable bijection on ``{0, ..., degree - 1}``."""

    __slots__ = ("images",)

    def __init__(self, images) -> None:
        arr = np.array(images, dtype=np.int32)
        if arr.ndim != 1:
            raise ValueError("permutation images must be a flat sequence")
        n = arr.shape[0]
        if n:
            seen = np.zeros(n, dtype=bool)
            if arr.min() < 0 or arr.max() >= n:
                raise ValueError("permutation images out of range")
            seen[arr] = True
            if not seen.all():
                raise ValueError("permutation images are not a bijection")
        arr.setflags(write=False)
        self.images = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Permutation":
        # Internal fast path: arr is a known-valid int32 bijection.
        p = object.__new__(cls)
        arr.setflags(write=False)
        p.images = arr
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(np.arange(degree, dtype=np.int32))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        arr = np.arange(degree, dtype=np.int32)
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:]):
                arr[a] = b
            if cyc:
                arr[cyc[-1]] = cyc[0]
        return cls(arr)

    @property
    def degree(self) -> int:
        return self.images.shape[0]

    def __call__(self, point: int) -> int:
        return int(self.images[point])

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")
        return Permutation._wrap(other.images[self.images])

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        square = self
        while k:
            if k & 1:
                result = result * square
            square = square * square
            k >>= 1
        return result

    def inverse(self) -> "Permutation":
        inv = np.empty(self.degree, dtype=np.int32)
        inv[self.images] = np.arange(self.degree, dtype=np.int32)
        return Permutation._wrap(inv)

    def conjugate_by(self, x: "Permutation") -> "Permutation":
        """Return ``x^-1 * self * x``."""
        return x.inverse() * self * x

    def is_identity(self) -> bool:
        return bool((self.images == np.arange(self.degree, dtype=np.int32)).all())

    def order(self) -> int:
        result = 1
        for cyc in self.cycles():
            result = lcm(result, len(cyc))
        return result

    def cycles(self) -> list[list[int]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            nxt = int(self.images[start])
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = int(self.images[nxt])
            out.append(cyc)
        return out

    def key(self) -> bytes:
        return self.images.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and bool((self.images == other.images).all())

    def __hash__(self) -> int:
        return hash(self.images.tobytes())

    def __repr__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return f"Permutation(identity, degree={self.degree})"
        text = "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)
        return f"Permutation({text}, degree={self.degree})"


def _dedup(perms: Sequence[Permutation]) -> list[Permutation]:
    seen: dict[bytes, Permutation] = {}
    for p in perms:
        seen.setdefault(p.key(), p)
    return list(seen.values())


class _Level:
    """One layer of a stabiliser chain: a base point with its orbit transversal."""

    __slots__ = ("point", "transversal")

    def __init__(self, point: int, generators: Sequence[Permutation], degree: int):
        self.point = point
        # transversal[q] maps the base point to q; built breadth first with
        # generators applied in their given order, so the result is canonical.
        transversal = {point: Permutation.identity(degree)}
        queue = [point]
        head = 0
        while head < len(queue):
            q = queue[head]
            head += 1
            rep = transversal[q]
            for gen in generators:
                r = int(gen.images[q])
                if r not in transversal:
                    transversal[r] = rep * gen
                    queue.append(r)
        self.transversal = transversal

    @property
    def orbit_size(self) -> int:
        return len(self.transversal)


class BSGS:
    """Base and strong generating set built by the classical deterministic
    Schreier-Sims descent (all Schreier generators, no randomisation)."""

    def __init__(self, degree: int, generators: Sequence[Permutation]):
        self.degree = degree
        self.levels: list[tuple[_Level, list[Permutation]]] = []
        gens = [g for g in _dedup(generators) if not g.is_identity()]
        while gens:
            moved = min(
                int(np.flatnonzero(g.images != np.arange(degree, dtype=np.int32))[0])
                for g in gens
            )
            level = _Level(moved, gens, degree)
            self.levels.append((level, gens))
            schreier: dict[bytes, Permutation] = {}
            orbit_points = list(level.transversal)
            for q in orbit_points:
                u = level.transversal[q]
                for s in gens:
                    r = int(s.images[q])
                    w = level.transversal[r]
                    us = u * s
                    # u*s == w means the Schreier generator is the identity
                    if not np.array_equal(us.images, w.images):
                        sg = us * w.inverse()
                        schreier.setdefault(sg.key(), sg)
            gens = list(schreier.values())

    @property
    def base(self) -> list[int]:
        return [level.point for level, _ in self.levels]

    def order(self) -> int:
        result = 1
        for level, _ in self.levels:
            result *= level.orbit_size
        return result

    def sift(self, perm: Permutation) -> Permutation:
        """Strip ``perm`` through the chain; identity residue means membership."""
        residue = perm
        for level, _ in self.levels:
            image = int(residue.images[level.point])
            rep = level.transversal.get(image)
            if rep is None:
                return residue
            residue = residue * rep.inverse()
        return residue

    def contains(self, perm: Permutation) -> bool:
        if perm.degree != self.degree:
            raise DegreeMismatch(
                f"queried permutation has degree {perm.degree}, group has {self.degree}"
            )
        return self.sift(perm).is_identity()


class PermutationGroup:
    """A permutation group given by generators, with a cached BSGS."""

    def __init__(self, degree: int, generators: Sequence[Permutation]):
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator degree {g.degree} != group degree {degree}")
        self.degree = degree
        self.generators = list(generators)
        self._bsgs: BSGS | None = None

    def bsgs(self) -> BSGS:
        if self._bsgs is None:
            self._bsgs = BSGS(self.degree, self.generators)
        return self._bsgs

    def order(self) -> int:
        return self.bsgs().order()

    def __contains__(self, perm: Permutation) -> bool:
        return self.bsgs().contains(perm)

    def membership(self) -> Callable[[Permutation], bool]:
        return self.bsgs().contains

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def elements(self, limit: int | None = None) -> list[Permutation]:
        """All elements in breadth-first closure order from the identity."""
        if limit is not None:
            order = self.order()
            if order > limit:
                raise OrderLimitExceeded(order, limit)
        seen: dict[bytes, Permutation] = {}
        identity = self.identity()
        seen[identity.key()] = identity
        frontier = [identity]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.generators:
                    q = p * g
                    k = q.key()
                    if k not in seen:
                        seen[k] = q
                        nxt.append(q)
            frontier = nxt
        return list(seen.values())

    def orbit(self, point: int) -> set[int]:
        out = {point}
        queue = [point]
        while queue:
            q = queue.pop()
            for g in self.generators:
                r = int(g.images[q])
                if r not in out:
                    out.add(r)
                    queue.append(r)
        return out

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree


def schreier_sims(group: PermutationGroup) -> tuple[int, Callable[[Permutation], bool]]:
    """Exact order of the group plus a membership oracle for same-degree permutations."""
    bsgs = group.bsgs()
    return bsgs.order(), bsgs.contains


def subgroup_generated(degree: int, seeds: Sequence[Permutation]) -> PermutationGroup:
    """The subgroup generated by ``seeds``; order and membership come from BSGS."""
    return PermutationGroup(degree, list(seeds))


def table_from_perm_group(group: PermutationGroup, limit: int):
    """Enumerate ``group`` into a multiplication table.

    Element 0 is the identity; the rest are ordered lexicographically by image
    sequence.  Returns ``(GroupTable, elements)`` where ``elements[i]`` is the
    permutation with table index ``i``.  Raises :class:`OrderLimitExceeded`
    when the group has more than ``limit`` elements.
    """
    from .tables import GroupTable

    elems = group.elements(limit=limit)
    identity = group.identity()
    rest = sorted((p for p in elems if not p.is_identity()), key=lambda p: tuple(p.images))
    ordered = [identity] + rest
    index = {p.key(): i for i, p in enumerate(ordered)}
    n = len(ordered)
    mult = np.empty((n, n), dtype=np.int32)
    for i, p in enumerate(ordered):
        for j, q in enumerate(ordered):
            mult[i, j] = index[(p * q).key()]
    return GroupTable(mult), ordered


def regular_element_perms(table) -> list[Permutation]:
    """Element permutations of the right regular action: ``p_x(y) = mult[y][x]``."""
    return [
        Permutation._wrap(np.ascontiguousarray(table.mult[:, x])) for x in range(table.size)
    ]


def regular_representation(table) -> PermutationGroup:
    """Right regular action of a group table on its own elements.

    Element ``x`` becomes the permutation ``y -> mult[y][x]``; the group is
    generated by all non-identity element permutations and has order
    ``table.size``.
    """
    perms = regular_element_perms(table)
    group = PermutationGroup(table.size, perms[1:])
    if group.order() != table.size:
        raise InvariantViolation("regular representation order differs from table size")
    return group
