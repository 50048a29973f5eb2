"""Builtin groups, builtin pairs, and the default verification catalog.

Element orderings are documented per constructor and never change: the
identity is element 0 everywhere, and reports are diffable across runs.

Builtin group names:  ``cyclic(n)`` (n <= 12), ``klein4``, ``dihedral(m)``
(order m, even, 4 <= m <= 12), ``quaternion8``, ``sym(3)``, ``sym(4)``,
``elem_abelian(p,k)`` (p prime, p^k <= 16).

Builtin pair names:  ``trivial(G,H)``, ``nu(G)``, and
``normal_pair(K; A, B)`` where A and B name normal subgroups of the builtin
ambient K (descriptors: ``all``, ``derived``, ``center``, ``alt``,
``rotations``, ``klein4``, ``cyclic:<element>``) acting on each other by
conjugation inside K.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .actions import ActionPair, conjugation_pair, nu_setup, trivial_actions
from .tables import GroupTable, center, closure, derived_subgroup, is_normal


def cyclic(n: int) -> GroupTable:
    """C_n with addition mod n; element i is the i-th power of the generator."""
    if not 1 <= n <= 12:
        raise ValueError("cyclic(n) supports 1 <= n <= 12")
    return GroupTable([[(i + j) % n for j in range(n)] for i in range(n)], name=f"cyclic({n})")


def elem_abelian(p: int, k: int) -> GroupTable:
    """(C_p)^k; element index encodes the vector little-endian in base p."""
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise ValueError("p must be prime")
    size = p**k
    if not 1 <= size <= 16:
        raise ValueError("elem_abelian(p,k) supports p^k <= 16")

    def add(a: int, b: int) -> int:
        out, shift = 0, 1
        for _ in range(k):
            out += ((a % p + b % p) % p) * shift
            a //= p
            b //= p
            shift *= p
        return out

    mult = [[add(a, b) for b in range(size)] for a in range(size)]
    return GroupTable(mult, name=f"elem_abelian({p},{k})")


def klein4() -> GroupTable:
    table = elem_abelian(2, 2)
    return GroupTable(table.mult, name="klein4", check=False)


def dihedral(order: int) -> GroupTable:
    """Dihedral group of the given order; element ``j*n + i`` is r^i s^j."""
    if order % 2 or not 4 <= order <= 12:
        raise ValueError("dihedral(m) supports even 4 <= m <= 12")
    n = order // 2

    def mul(a: int, b: int) -> int:
        i1, j1 = a % n, a // n
        i2, j2 = b % n, b // n
        i = (i1 + (i2 if j1 == 0 else -i2)) % n
        return i + n * ((j1 + j2) % 2)

    return GroupTable(
        [[mul(a, b) for b in range(order)] for a in range(order)], name=f"dihedral({order})"
    )


def quaternion8() -> GroupTable:
    """Unit quaternions ordered 1, i, j, k, -1, -i, -j, -k."""
    unit = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }

    def mul(a: int, b: int) -> int:
        sa, va = divmod(a, 4)
        sb, vb = divmod(b, 4)
        v, s = unit[(va, vb)]
        return v + 4 * ((sa + sb + s) % 2)

    return GroupTable([[mul(a, b) for b in range(8)] for a in range(8)], name="quaternion8")


def sym(n: int) -> GroupTable:
    """Symmetric group on n letters; identity first, the rest ordered
    lexicographically by image tuple; product applies the left factor first."""
    if n not in (3, 4):
        raise ValueError("sym(n) supports n in {3, 4}")
    identity = tuple(range(n))
    elems = [identity] + sorted(p for p in permutations(range(n)) if p != identity)
    index = {p: i for i, p in enumerate(elems)}
    mult = [
        [index[tuple(q[p[i]] for i in range(n))] for q in elems] for p in elems
    ]
    return GroupTable(mult, name=f"sym({n})")


_GROUP_BUILDERS = {
    "cyclic": lambda n: cyclic(int(n)),
    "dihedral": lambda m: dihedral(int(m)),
    "sym": lambda n: sym(int(n)),
    "elem_abelian": lambda p, k: elem_abelian(int(p), int(k)),
}
_GROUP_CONSTANTS = {
    "klein4": klein4,
    "quaternion8": quaternion8,
}


def _split_args(text: str) -> list[str]:
    """Split a comma list at depth zero (arguments may contain parentheses)."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    if current:
        parts.append("".join(current).strip())
    return [p for p in parts if p]


def builtin_group(name: str) -> GroupTable:
    text = name.strip()
    if text in _GROUP_CONSTANTS:
        return _GROUP_CONSTANTS[text]()
    if "(" in text and text.endswith(")"):
        head, _, rest = text.partition("(")
        head = head.strip()
        if head in _GROUP_BUILDERS:
            args = _split_args(rest[:-1])
            try:
                return _GROUP_BUILDERS[head](*args)
            except TypeError:
                raise ValueError(f"wrong argument count for {head!r}") from None
    raise ValueError(f"unknown builtin group {name!r}")


def resolve_subgroup(table: GroupTable, descriptor: str) -> frozenset[int]:
    """Element set of a named subgroup of a builtin group."""
    text = descriptor.strip()
    if text == "all":
        return frozenset(table.elements())
    if text == "derived" or text == "alt":
        return derived_subgroup(table)
    if text == "center":
        return center(table)
    if text == "rotations":
        if not (table.name or "").startswith("dihedral"):
            raise ValueError("'rotations' applies to dihedral groups only")
        return closure(table, [1])
    if text == "klein4":
        if table.name != "sym(4)":
            raise ValueError("'klein4' applies to sym(4) only")
        inside = derived_subgroup(table)
        members = {0} | {x for x in inside if x and table.mul(x, x) == 0}
        return frozenset(members)
    if text.startswith("cyclic:"):
        seed = int(text.split(":", 1)[1])
        return closure(table, [seed])
    raise ValueError(f"unknown subgroup descriptor {descriptor!r}")


def builtin_pair(name: str) -> ActionPair:
    text = name.strip()
    if text.startswith("trivial(") and text.endswith(")"):
        args = _split_args(text[len("trivial(") : -1])
        if len(args) != 2:
            raise ValueError("trivial(G,H) takes two groups")
        return trivial_actions(builtin_group(args[0]), builtin_group(args[1]))
    if text.startswith("nu(") and text.endswith(")"):
        return nu_setup(builtin_group(text[len("nu(") : -1]))
    if text.startswith("normal_pair(") and text.endswith(")"):
        body = text[len("normal_pair(") : -1]
        ambient_name, _, rest = body.partition(";")
        descriptors = _split_args(rest)
        if not rest or len(descriptors) != 2:
            raise ValueError("normal_pair(K; A, B) takes an ambient group and two subgroups")
        ambient = builtin_group(ambient_name.strip())
        members_a = resolve_subgroup(ambient, descriptors[0])
        members_b = resolve_subgroup(ambient, descriptors[1])
        for label, members in (("A", members_a), ("B", members_b)):
            if not is_normal(ambient, members):
                raise ValueError(
                    f"normal_pair component {label} is not normal in {ambient.name}"
                )
        return conjugation_pair(ambient, sorted(members_a), sorted(members_b))
    raise ValueError(f"unknown builtin pair {name!r}")


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    pair_name: str
    tags: tuple[str, ...]

    def build(self) -> ActionPair:
        return builtin_pair(self.pair_name)


def default_catalog() -> list[CatalogEntry]:
    """The default verification catalog: every group involved has order <= 8."""
    entries: list[CatalogEntry] = []
    for a in range(2, 7):
        for b in range(2, 7):
            entries.append(
                CatalogEntry(
                    f"trivial-c{a}-c{b}",
                    f"trivial(cyclic({a}),cyclic({b}))",
                    ("trivial-action",),
                )
            )
    entries.extend(
        [
            CatalogEntry("trivial-v4-c2", "trivial(klein4,cyclic(2))", ("trivial-action",)),
            CatalogEntry("trivial-v4-v4", "trivial(klein4,klein4)", ("trivial-action",)),
            CatalogEntry("trivial-s3-c2", "trivial(sym(3),cyclic(2))", ("trivial-action",)),
            CatalogEntry("trivial-q8-c4", "trivial(quaternion8,cyclic(4))", ("trivial-action",)),
            CatalogEntry("nu-c2", "nu(cyclic(2))", ("nu", "conjugation-pair")),
            CatalogEntry("nu-c3", "nu(cyclic(3))", ("nu", "conjugation-pair")),
            CatalogEntry("nu-c4", "nu(cyclic(4))", ("nu", "conjugation-pair")),
            CatalogEntry("nu-c6", "nu(cyclic(6))", ("nu", "conjugation-pair")),
            CatalogEntry("nu-v4", "nu(klein4)", ("nu", "conjugation-pair")),
            CatalogEntry("nu-s3", "nu(sym(3))", ("nu", "conjugation-pair")),
            CatalogEntry("nu-d8", "nu(dihedral(8))", ("nu", "conjugation-pair")),
            CatalogEntry("nu-q8", "nu(quaternion8)", ("nu", "conjugation-pair")),
            CatalogEntry(
                "conj-s3-derived-all",
                "normal_pair(sym(3); derived, all)",
                ("conjugation-pair",),
            ),
            CatalogEntry(
                "conj-d8-rotations-all",
                "normal_pair(dihedral(8); rotations, all)",
                ("conjugation-pair",),
            ),
            CatalogEntry(
                "conj-d8-center-all",
                "normal_pair(dihedral(8); center, all)",
                ("conjugation-pair",),
            ),
            CatalogEntry(
                "conj-q8-i-all",
                "normal_pair(quaternion8; cyclic:1, all)",
                ("conjugation-pair",),
            ),
            CatalogEntry(
                "conj-q8-center-all",
                "normal_pair(quaternion8; center, all)",
                ("conjugation-pair",),
            ),
        ]
    )
    ids = [entry.id for entry in entries]
    if len(set(ids)) != len(ids):
        raise RuntimeError("catalog ids must be unique")
    return entries


def catalog_by_id() -> dict[str, CatalogEntry]:
    return {entry.id: entry for entry in default_catalog()}


def search_group_list(max_order: int) -> list[GroupTable]:
    """Deterministic group list for the exhaustive action search."""
    groups: list[GroupTable] = []
    for n in range(1, min(max_order, 12) + 1):
        groups.append(cyclic(n))
    if max_order >= 4:
        groups.append(klein4())
    if max_order >= 6:
        groups.append(sym(3))
    if max_order >= 8:
        groups.append(dihedral(8))
        groups.append(quaternion8())
        groups.append(elem_abelian(2, 3))
    return groups
