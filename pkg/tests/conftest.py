"""Shared fixtures and independent oracles.

The oracles here are deliberately naive re-implementations (brute-force
closures, determinant expansions, order scans) so that the package's fast
paths are always checked against a second, unrelated route.
"""

from __future__ import annotations

from itertools import combinations, permutations
from math import gcd, lcm

import pytest

from etanu.catalog import cyclic, dihedral, elem_abelian, klein4, quaternion8, sym


# -- permutation oracles -------------------------------------------------------


def compose_tuples(p, q):
    """Apply p first, then q (same convention as the package)."""
    return tuple(q[x] for x in p)


def invert_tuple(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def brute_force_closure(degree, seed_tuples):
    """All products of the seeds and their inverses, by saturation."""
    identity = tuple(range(degree))
    gens = set(seed_tuples) | {invert_tuple(p) for p in seed_tuples}
    known = {identity} | gens
    frontier = set(known)
    while frontier:
        fresh = set()
        for p in frontier:
            for g in gens:
                q = compose_tuples(p, g)
                if q not in known:
                    fresh.add(q)
        known |= fresh
        frontier = fresh
    return known


# -- table oracles -------------------------------------------------------------


def table_mul(table, a, b):
    return int(table.mult[a, b])


def table_inv(table, a):
    return int(table.inv[a])


def commutator_closure_oracle(table):
    """Brute-force commutator set closure, scalar arithmetic only."""
    n = table.size
    comms = set()
    for a in range(n):
        for b in range(n):
            ab = table_mul(table, a, b)
            ia = table_inv(table, a)
            ib = table_inv(table, b)
            comms.add(table_mul(table, table_mul(table, ia, ib), ab))
    members = set(comms) | {0}
    changed = True
    while changed:
        changed = False
        for x in sorted(members):
            for y in sorted(members):
                z = table_mul(table, x, y)
                if z not in members:
                    members.add(z)
                    changed = True
    return frozenset(members)


def element_order_oracle(table, a):
    k, x = 1, a
    while x != 0:
        x = table_mul(table, x, a)
        k += 1
    return k


def exponent_oracle(table):
    out = 1
    for a in range(table.size):
        out = lcm(out, element_order_oracle(table, a))
    return out


def class_sizes_oracle(table):
    """Conjugation orbits by scalar brute force."""
    n = table.size
    seen = set()
    sizes = []
    for a in range(n):
        if a in seen:
            continue
        orbit = {
            table_mul(table, table_mul(table, table_inv(table, g), a), g)
            for g in range(n)
        }
        seen |= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


# -- integer matrix oracles ------------------------------------------------------


def det_exact(rows):
    """Exact determinant by permutation expansion; fine for n <= 5."""
    n = len(rows)
    if n == 0:
        return 1
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = [False] * n
        for start in range(n):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def determinantal_divisor(rows, k):
    """gcd of all k x k minors; 0 when every minor vanishes."""
    m, n = len(rows), len(rows[0]) if rows else 0
    value = 0
    for row_idx in combinations(range(m), k):
        for col_idx in combinations(range(n), k):
            minor = det_exact([[rows[i][j] for j in col_idx] for i in row_idx])
            value = gcd(value, minor)
    return abs(value)


# -- builtin group fixtures ------------------------------------------------------


@pytest.fixture(scope="session")
def groups():
    return {
        "c2": cyclic(2),
        "c3": cyclic(3),
        "c4": cyclic(4),
        "c6": cyclic(6),
        "v4": klein4(),
        "s3": sym(3),
        "s4": sym(4),
        "d8": dihedral(8),
        "q8": quaternion8(),
        "e8": elem_abelian(2, 3),
    }
