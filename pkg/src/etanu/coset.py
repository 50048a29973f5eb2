"""Coset enumeration for finite presentations.

The strategy is Felsch style: deduction-stack driven, defining the first
undefined table entry in scan order, with coincidences merged through a
union-find.  There is no lookahead phase.  Relators are cyclically reduced
and expanded into all cyclic conjugates of themselves and their inverses,
bucketed by first column, which is what the deduction scans consume.

The inner loop lives in a compiled Cython kernel when available and in a pure
Python twin otherwise; set ``ETANU_FORCE_PURE=1`` to force the fallback.  Both
kernels run the identical algorithm, and every completed table is verified
here before being returned: completeness, generator/inverse consistency, and
a full trace of every relator at every coset.  A verification failure is a
bug, never bad input, and aborts hard.

Completed tables are standardized: cosets are renumbered in order of first
appearance when scanning rows in ascending order and columns left to right,
so equal inputs yield byte-equal tables regardless of kernel.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EnumerationLimitExceeded, InvariantViolation
from .perms import Permutation, PermutationGroup
from .words import Presentation, Word, cyclic_reduce, free_reduce

if os.environ.get("ETANU_FORCE_PURE"):
    from . import _felsch_py as _kernel
else:
    try:
        from . import _felsch_c as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _felsch_py as _kernel

KERNEL_NAME = _kernel.KERNEL_NAME

DEFAULT_MAX_COSETS = 2_000_000
MAX_COSETS_ENV = "ETA_MAX_COSETS"


def default_max_cosets() -> int:
    raw = os.environ.get(MAX_COSETS_ENV)
    if raw:
        value = int(raw)
        if value < 1:
            raise ValueError(f"{MAX_COSETS_ENV} must be at least 1")
        return value
    return DEFAULT_MAX_COSETS


@dataclass(frozen=True)
class CosetTable:
    """A completed (or abandoned) enumeration result.

    ``entries`` has one row per coset and one column per generator/inverse
    pair: column ``2i`` is generator ``i``, column ``2i + 1`` its inverse.
    Row 0 is the subgroup coset.  For an exceeded-limit result the partial
    table is discarded and ``entries`` is ``None``.
    """

    ngens: int
    status: str  # "complete" | "exceeded-limit"
    entries: np.ndarray | None
    max_cosets: int
    high_water: int

    @property
    def rows(self) -> int:
        if self.entries is None:
            return 0
        return int(self.entries.shape[0])

    def is_complete(self) -> bool:
        return self.status == "complete"

    def require_complete(self) -> np.ndarray:
        if not self.is_complete() or self.entries is None:
            raise EnumerationLimitExceeded(self.max_cosets, self.high_water)
        return self.entries


def _word_to_columns(word: Word) -> tuple[int, ...]:
    return tuple(2 * g if e == 1 else 2 * g + 1 for g, e in word.letters)


def _invert_columns(cols: Sequence[int]) -> tuple[int, ...]:
    return tuple(c ^ 1 for c in reversed(cols))


def _conjugate_buckets(relators: Sequence[Word], ncols: int):
    """All cyclic conjugates of each relator and its inverse, deduplicated,
    bucketed by first column."""
    words: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    buckets: list[list[int]] = [[] for _ in range(ncols)]
    for relator in relators:
        reduced = cyclic_reduce(relator)
        if not reduced.letters:
            continue
        base = _word_to_columns(reduced)
        for variant in (base, _invert_columns(base)):
            for shift in range(len(variant)):
                rotated = variant[shift:] + variant[:shift]
                if rotated not in seen:
                    seen[rotated] = len(words)
                    words.append(rotated)
                    buckets[rotated[0]].append(seen[rotated])
    return words, buckets


def coset_enumerate(
    presentation: Presentation,
    subgroup_words: Sequence[Word] = (),
    max_cosets: int | None = None,
) -> CosetTable:
    """Enumerate cosets of the subgroup generated by ``subgroup_words``.

    Returns a complete standardized table whose row count is the subgroup
    index, or an ``exceeded-limit`` result carrying the ceiling and the
    live-row high-water mark.
    """
    if max_cosets is None:
        max_cosets = default_max_cosets()
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    ngens = presentation.generator_count
    for w in subgroup_words:
        if w.max_generator() >= ngens:
            raise ValueError("subgroup word references an unknown generator")

    if ngens == 0:
        entries = np.empty((1, 0), dtype=np.int32)
        entries.setflags(write=False)
        return CosetTable(0, "complete", entries, max_cosets, 1)

    ncols = 2 * ngens
    words, buckets = _conjugate_buckets(presentation.relators, ncols)
    subgroup_cols = [
        _word_to_columns(free_reduce(w)) for w in subgroup_words if free_reduce(w).letters
    ]

    status, raw, parent, high_water = _kernel.run(
        ncols, words, buckets, subgroup_cols, max_cosets
    )
    if status == "exceeded":
        return CosetTable(ngens, "exceeded-limit", None, max_cosets, high_water)

    table = np.asarray(raw, dtype=np.int32)
    parent = np.asarray(parent, dtype=np.int32)
    compressed = _compress(table, parent)
    standardized = _standardize(compressed)
    _verify(standardized, presentation, subgroup_cols)
    standardized.setflags(write=False)
    return CosetTable(ngens, "complete", standardized, max_cosets, high_water)


def _compress(table: np.ndarray, parent: np.ndarray) -> np.ndarray:
    live = np.flatnonzero(parent == np.arange(parent.shape[0], dtype=np.int32))
    relabel = np.full(parent.shape[0], -1, dtype=np.int32)
    relabel[live] = np.arange(live.shape[0], dtype=np.int32)
    out = relabel[table[live]]
    if (out < 0).any():
        raise InvariantViolation("completed table references a dead coset")
    return out


def _standardize(table: np.ndarray) -> np.ndarray:
    n, ncols = table.shape
    new_of_old = np.full(n, -1, dtype=np.int32)
    order = [0]
    new_of_old[0] = 0
    scan = 0
    while scan < len(order):
        row = table[order[scan]]
        scan += 1
        for c in range(ncols):
            target = int(row[c])
            if new_of_old[target] == -1:
                new_of_old[target] = len(order)
                order.append(target)
    if len(order) != n:
        raise InvariantViolation("coset graph is not connected")
    return np.ascontiguousarray(new_of_old[table[np.array(order, dtype=np.int32)]])


def _verify(table: np.ndarray, presentation: Presentation, subgroup_cols) -> None:
    n, ncols = table.shape
    if (table < 0).any() or (table >= n).any():
        raise InvariantViolation("incomplete or out-of-range coset table")
    idx = np.arange(n, dtype=np.int32)
    for c in range(0, ncols, 2):
        if not np.array_equal(table[table[:, c], c + 1], idx):
            raise InvariantViolation(f"generator column {c // 2} is not invertible")
    for relator in presentation.relators:
        cols = _word_to_columns(relator)
        at = idx
        for c in cols:
            at = table[at, c]
        if not np.array_equal(at, idx):
            raise InvariantViolation(
                f"relator {presentation.format_word(relator)} fails on the completed table"
            )
    for cols in subgroup_cols:
        at = 0
        for c in cols:
            at = int(table[at, c])
        if at != 0:
            raise InvariantViolation("subgroup generator does not stabilize coset 0")


def perms_from_table(ct: CosetTable) -> tuple[PermutationGroup, list[Permutation]]:
    """One permutation of the coset set per presentation generator.

    For a trivial-subgroup enumeration this is the regular representation of
    the presented group, so the group order equals the row count.
    """
    entries = ct.require_complete()
    n = ct.rows
    perms = [
        Permutation._wrap(np.ascontiguousarray(entries[:, 2 * i])) for i in range(ct.ngens)
    ]
    group = PermutationGroup(n, perms)
    return group, perms
