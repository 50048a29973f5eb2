"""Integer Smith normal form and finite abelian group structure.

All matrix arithmetic here runs on Python integers: entries can grow past
machine words during reduction, and exactness is non-negotiable.  Pivots are
chosen as the smallest nonzero absolute value, ties broken by lowest
``(row, col)``, which makes every reduction fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .errors import InfiniteAbelianization, NonAbelianInput


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged matrix rows")
        else:
            width = cols or 0
        if cols is not None and data and width != cols:
            raise ValueError(f"expected {cols} columns, got {width}")
        return cls(len(data), width, data)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntegerMatrix":
        n = len(values)
        return cls.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n
        )

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        data = [
            [
                sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)
            ]
            for i in range(self.rows)
        ]
        return IntegerMatrix.from_rows(data, cols=other.cols)


@dataclass(frozen=True)
class SmithNormalForm:
    """``left @ matrix @ right`` is diagonal with the divisibility chain."""

    diagonal: tuple[int, ...]
    left: IntegerMatrix
    right: IntegerMatrix


def smith_normal_form(matrix: IntegerMatrix) -> SmithNormalForm:
    r, c = matrix.rows, matrix.cols
    a = [list(row) for row in matrix.entries]
    left = [[int(i == j) for j in range(r)] for i in range(r)]
    right = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, factor):
        # row[dst] += factor * row[src]
        arow, lsrc = a[src], left[src]
        adst, ldst = a[dst], left[dst]
        for j in range(c):
            adst[j] += factor * arow[j]
        for j in range(r):
            ldst[j] += factor * lsrc[j]

    def add_col(src, dst, factor):
        for row in a:
            row[dst] += factor * row[src]
        for row in right:
            row[dst] += factor * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    def pivot_at(k):
        best = None
        for i in range(k, r):
            for j in range(k, c):
                v = abs(a[i][j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        return best

    k = 0
    while k < min(r, c):
        found = pivot_at(k)
        if found is None:
            break
        _, pi, pj = found
        if pi != k:
            swap_rows(k, pi)
        if pj != k:
            swap_cols(k, pj)
        if a[k][k] < 0:
            negate_row(k)

        dirty = False
        for i in range(k + 1, r):
            if a[i][k]:
                q = a[i][k] // a[k][k]
                add_row(k, i, -q)
                if a[i][k]:
                    dirty = True
        for j in range(k + 1, c):
            if a[k][j]:
                q = a[k][j] // a[k][k]
                add_col(k, j, -q)
                if a[k][j]:
                    dirty = True
        if dirty:
            # remainders survive: a smaller pivot is now available, retry
            continue

        offender = None
        d = a[k][k]
        for i in range(k + 1, r):
            for j in range(k + 1, c):
                if a[i][j] % d:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            # fold the offending row in so the next pivot divides it
            add_row(offender, k, 1)
            continue
        k += 1

    diagonal = tuple(a[i][i] for i in range(min(r, c)))
    return SmithNormalForm(
        diagonal=diagonal,
        left=IntegerMatrix.from_rows(left, cols=r),
        right=IntegerMatrix.from_rows(right, cols=c),
    )


@dataclass(frozen=True)
class AbelianGroup:
    """A finite abelian group in invariant-factor form: d1 | d2 | ... | dk."""

    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        factors = self.invariant_factors
        if any(d < 2 for d in factors):
            raise ValueError("invariant factors must all be >= 2")
        if any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"C{d}" for d in self.invariant_factors)


TRIVIAL_ABELIAN = AbelianGroup(())


def abelian_invariants_from_relations(
    generator_count: int, relation_rows: IntegerMatrix
) -> AbelianGroup:
    """Invariant factors of ``Z^n`` modulo the row span of the relations.

    A free summand (fewer constraints than generators, or a zero invariant)
    means the quotient is infinite, which this artifact refuses to represent.
    """
    if relation_rows.rows and relation_rows.cols != generator_count:
        raise ValueError(
            f"relations have {relation_rows.cols} columns, expected {generator_count}"
        )
    snf = smith_normal_form(relation_rows)
    diagonal = list(snf.diagonal)
    rank = sum(1 for d in diagonal if d != 0)
    if rank < generator_count:
        raise InfiniteAbelianization(
            f"quotient has free rank {generator_count - rank}; only finite groups are supported"
        )
    return AbelianGroup(tuple(d for d in diagonal if d >= 2))


def tensor_Z(a: AbelianGroup, b: AbelianGroup) -> AbelianGroup:
    """Tensor product over Z: the direct sum of ``C_gcd(di, ej)`` renormalized."""
    factors = [
        gcd(d, e) for d in a.invariant_factors for e in b.invariant_factors if gcd(d, e) > 1
    ]
    if not factors:
        return TRIVIAL_ABELIAN
    return abelian_invariants_from_relations(
        len(factors), IntegerMatrix.diagonal(factors)
    )


def abelianization(table) -> AbelianGroup:
    """Abelian invariants of ``G / G'`` straight from the multiplication table.

    Every element becomes a Z-generator and every product ``ab = c`` the
    relation ``e_a + e_b - e_c``; the Smith form of that system is exactly the
    abelianization.
    """
    n = table.size
    rows = []
    for x in range(n):
        for y in range(n):
            row = [0] * n
            row[x] += 1
            row[y] += 1
            row[table.mul(x, y)] -= 1
            rows.append(row)
    return abelian_invariants_from_relations(n, IntegerMatrix.from_rows(rows, cols=n))


def abelian_structure(table) -> AbelianGroup:
    """Invariant factors of an abelian group table; rejects non-abelian input."""
    if not table.is_abelian():
        raise NonAbelianInput("abelian_structure requires an abelian table")
    return abelianization(table)
