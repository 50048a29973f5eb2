"""Mutual group actions and their compatibility conditions.

An :class:`ActionPair` holds two group tables together with both cross
actions, stored as full permutation tables over element indices: for each
acting element one row giving the image of every element it acts on.  Storing
whole tables (rather than generator images) makes the axiom and compatibility
checks direct, exhaustive loops with no lifting step.

The compatibility conditions checked here, in exponent notation with
same-group superscripts meaning conjugation, are

    g^(h^g1) = ((g^(g1^-1))^h)^g1        for all g, g1 in G, h in H
    h^(g^h1) = ((h^(h1^-1))^g)^h1        for all h, h1 in H, g in G

and the scan runs in lexicographic order over (g, h, g1) then (h, g, h1), so
the first reported witness is deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Literal, Sequence

import numpy as np

from .errors import SearchBudgetExceeded
from .tables import GroupTable, closure

Side = Literal["g-under-h", "h-under-g"]


@dataclass(frozen=True)
class ActionViolation:
    """A failed action axiom with a witness tuple of element indices."""

    axiom: str
    witness: tuple[int, ...]


@dataclass(frozen=True)
class CompatibilityWitness:
    """A triple violating one of the two compatibility identities."""

    family: Side
    triple: tuple[int, int, int]  # (g, h, g1) or (h, g, h1)


class ActionPair:
    """Two finite groups with validated mutual actions."""

    __slots__ = ("g_table", "h_table", "act_h_on_g", "act_g_on_h")

    def __init__(
        self,
        g_table: GroupTable,
        h_table: GroupTable,
        act_h_on_g,
        act_g_on_h,
        unchecked: bool = False,
    ):
        self.g_table = g_table
        self.h_table = h_table
        self.act_h_on_g = _as_action_array(act_h_on_g, h_table.size, g_table.size)
        self.act_g_on_h = _as_action_array(act_g_on_h, g_table.size, h_table.size)
        if not unchecked:
            violations = validate_actions(self)
            if violations:
                first = violations[0]
                raise ValueError(
                    f"invalid actions ({len(violations)} violations; first: "
                    f"{first.axiom} at {first.witness})"
                )
            witness = check_compatibility(self)
            if witness is not None:
                raise ValueError(
                    f"actions are not compatible: {witness.family} fails at {witness.triple}"
                )

    def g_under(self, g: int, h: int) -> int:
        """Image of ``g`` in G under the action of ``h`` in H."""
        return int(self.act_h_on_g[h, g])

    def h_under(self, h: int, g: int) -> int:
        """Image of ``h`` in H under the action of ``g`` in G."""
        return int(self.act_g_on_h[g, h])

    def is_trivial_pair(self) -> bool:
        g_id = np.arange(self.g_table.size, dtype=np.int32)
        h_id = np.arange(self.h_table.size, dtype=np.int32)
        return bool(
            (self.act_h_on_g == g_id).all() and (self.act_g_on_h == h_id).all()
        )

    def is_nu_setup(self) -> bool:
        """True when both groups share one table and all actions are conjugation."""
        if self.g_table.size != self.h_table.size:
            return False
        if not np.array_equal(self.g_table.mult, self.h_table.mult):
            return False
        conj = _conjugation_action(self.g_table)
        return bool(
            np.array_equal(self.act_h_on_g, conj) and np.array_equal(self.act_g_on_h, conj)
        )

    def to_json_dict(self) -> dict:
        return {
            "G": self.g_table.to_json_dict(),
            "H": self.h_table.to_json_dict(),
            "act_h_on_g": self.act_h_on_g.tolist(),
            "act_g_on_h": self.act_g_on_h.tolist(),
            "unchecked": False,
        }

    def __repr__(self) -> str:
        return f"ActionPair(G={self.g_table!r}, H={self.h_table!r})"


def _as_action_array(raw, actors: int, acted: int) -> np.ndarray:
    arr = np.array(raw, dtype=np.int32)
    if arr.shape != (actors, acted):
        raise ValueError(f"action table must be {actors}x{acted}, got {arr.shape}")
    for row in arr:
        if not np.array_equal(np.sort(row), np.arange(acted, dtype=np.int32)):
            raise ValueError("each actor must permute the acted-on elements")
    arr.setflags(write=False)
    return arr


def _conjugation_action(table: GroupTable) -> np.ndarray:
    n = table.size
    out = np.empty((n, n), dtype=np.int32)
    idx = np.arange(n, dtype=np.int32)
    for x in range(n):
        out[x] = table.mult[table.mult[table.inv[x], idx], x]
    return out


def trivial_actions(g_table: GroupTable, h_table: GroupTable) -> ActionPair:
    return ActionPair(
        g_table,
        h_table,
        np.tile(np.arange(g_table.size, dtype=np.int32), (h_table.size, 1)),
        np.tile(np.arange(h_table.size, dtype=np.int32), (g_table.size, 1)),
    )


def nu_setup(table: GroupTable) -> ActionPair:
    """Same table on both sides, all four actions by conjugation."""
    conj = _conjugation_action(table)
    return ActionPair(table, table, conj, conj)


def conjugation_pair(
    ambient: GroupTable, g_members: Sequence[int], h_members: Sequence[int]
) -> ActionPair:
    """Mutual conjugation actions of two normal subgroups of a common group."""
    g_sub, g_orig = ambient.subtable(g_members)
    h_sub, h_orig = ambient.subtable(h_members)
    g_pos = {orig: i for i, orig in enumerate(g_orig)}
    h_pos = {orig: i for i, orig in enumerate(h_orig)}
    act_h_on_g = np.empty((h_sub.size, g_sub.size), dtype=np.int32)
    for j, h in enumerate(h_orig):
        for i, g in enumerate(g_orig):
            act_h_on_g[j, i] = g_pos[ambient.conj(g, h)]
    act_g_on_h = np.empty((g_sub.size, h_sub.size), dtype=np.int32)
    for i, g in enumerate(g_orig):
        for j, h in enumerate(h_orig):
            act_g_on_h[i, j] = h_pos[ambient.conj(h, g)]
    return ActionPair(g_sub, h_sub, act_h_on_g, act_g_on_h)


def validate_actions(pair: ActionPair) -> list[ActionViolation]:
    """Every violated action axiom with a witness; empty means both actions
    are automorphism actions, homomorphic in the actor."""
    out: list[ActionViolation] = []
    out.extend(_validate_side(pair.g_table, pair.h_table, pair.act_h_on_g, "h-on-g"))
    out.extend(_validate_side(pair.h_table, pair.g_table, pair.act_g_on_h, "g-on-h"))
    return out


def _validate_side(acted: GroupTable, actor: GroupTable, act, tag: str):
    n, m = acted.size, actor.size
    for h in range(m):
        if act[h, 0] != 0:
            yield ActionViolation(f"{tag}: actor must fix the identity", (h,))
    for h in range(m):
        row = act[h]
        for a in range(n):
            for b in range(n):
                if row[acted.mul(a, b)] != acted.mul(int(row[a]), int(row[b])):
                    yield ActionViolation(f"{tag}: actor is not an automorphism", (h, a, b))
                    break
            else:
                continue
            break
    if not np.array_equal(act[0], np.arange(n, dtype=np.int32)):
        yield ActionViolation(f"{tag}: identity actor must act trivially", (0,))
    for h1 in range(m):
        for h2 in range(m):
            composed = act[h2][act[h1]]
            if not np.array_equal(act[actor.mul(h1, h2)], composed):
                yield ActionViolation(f"{tag}: action is not homomorphic in the actor", (h1, h2))


def check_compatibility(pair: ActionPair) -> CompatibilityWitness | None:
    """First violating triple in deterministic scan order, or None."""
    g_t, h_t = pair.g_table, pair.h_table
    a_hg, a_gh = pair.act_h_on_g, pair.act_g_on_h
    for g in range(g_t.size):
        for h in range(h_t.size):
            for g1 in range(g_t.size):
                lhs = a_hg[int(a_gh[g1, h]), g]
                inner = g_t.conj(g, g_t.inverse(g1))
                rhs = g_t.conj(int(a_hg[h, inner]), g1)
                if lhs != rhs:
                    return CompatibilityWitness("g-under-h", (g, h, g1))
    for h in range(h_t.size):
        for g in range(g_t.size):
            for h1 in range(h_t.size):
                lhs = a_gh[int(a_hg[h1, g]), h]
                inner = h_t.conj(h, h_t.inverse(h1))
                rhs = h_t.conj(int(a_gh[g, inner]), h1)
                if lhs != rhs:
                    return CompatibilityWitness("h-under-g", (h, g, h1))
    return None


@dataclass(frozen=True)
class DerivativeData:
    """The set D = {x^-1 * x^y} on one side, with its generated subgroup."""

    side: Side
    element_set: frozenset[int]
    m: int
    subgroup: frozenset[int]


def derivative(pair: ActionPair, side: Side) -> DerivativeData:
    """Exhaustive derivative set and its multiplicative closure.

    The identity is always a member (take the acting and acted elements to be
    identities), so ``m`` counts it.
    """
    if side == "g-under-h":
        acted, act = pair.g_table, pair.act_h_on_g
        actors = pair.h_table.size
    else:
        acted, act = pair.h_table, pair.act_g_on_h
        actors = pair.g_table.size
    elements = {
        acted.mul(acted.inverse(x), int(act[y, x]))
        for x in range(acted.size)
        for y in range(actors)
    }
    subgroup = closure(acted, elements)
    return DerivativeData(
        side=side,
        element_set=frozenset(elements),
        m=len(elements),
        subgroup=subgroup,
    )


def normality_check(pair: ActionPair, side: Side) -> bool:
    """D is closed under conjugation by its own closure, and the derivative
    identity (x^-1 x^y)^z = (x^z)^-1 (x^z)^(y^z) holds for all triples."""
    data = derivative(pair, side)
    if side == "g-under-h":
        acted, act, mirror = pair.g_table, pair.act_h_on_g, pair.act_g_on_h
        actors = pair.h_table.size
    else:
        acted, act, mirror = pair.h_table, pair.act_g_on_h, pair.act_h_on_g
        actors = pair.g_table.size
    for d in data.element_set:
        for z in data.subgroup:
            if acted.conj(d, z) not in data.element_set:
                return False
    for x in range(acted.size):
        for y in range(actors):
            bracket = acted.mul(acted.inverse(x), int(act[y, x]))
            for z in range(acted.size):
                lhs = acted.conj(bracket, z)
                xz = acted.conj(x, z)
                yz = int(mirror[z, y])
                rhs = acted.mul(acted.inverse(xz), int(act[yz, xz]))
                if lhs != rhs:
                    return False
    return True


# -- exhaustive action search -------------------------------------------------


def minimal_generating_sequence(table: GroupTable) -> list[int]:
    """Greedy deterministic generating sequence: repeatedly adjoin the
    smallest element outside the subgroup generated so far."""
    gens: list[int] = []
    generated = closure(table, gens)
    while len(generated) < table.size:
        candidate = min(set(table.elements()) - generated)
        gens.append(candidate)
        generated = closure(table, gens)
    return gens


def element_words(table: GroupTable, gens: Sequence[int]) -> list[list[int]]:
    """Express every element as a product of generators, breadth first."""
    words: dict[int, list[int]] = {0: []}
    queue = [0]
    while queue:
        x = queue.pop(0)
        for s in gens:
            y = table.mul(x, s)
            if y not in words:
                words[y] = words[x] + [s]
                queue.append(y)
    if len(words) != table.size:
        raise ValueError("sequence does not generate the group")
    return [words[x] for x in range(table.size)]


def automorphisms(table: GroupTable) -> list[np.ndarray]:
    """All automorphisms, by brute force over generator images.

    Candidate images are pruned by element order before the full extension
    and homomorphism check, which keeps this usable up to order ~8-16.
    """
    gens = minimal_generating_sequence(table)
    words = element_words(table, gens)
    orders = [table.element_order(x) for x in table.elements()]
    pools = [
        [x for x in table.elements() if orders[x] == orders[g]] for g in gens
    ]
    out: list[np.ndarray] = []
    identity = np.arange(table.size, dtype=np.int32)
    for images in product(*pools):
        phi = np.empty(table.size, dtype=np.int32)
        lookup = dict(zip(gens, images))
        for x, word in enumerate(words):
            value = 0
            for s in word:
                value = table.mul(value, lookup[s])
            phi[x] = value
        if np.unique(phi).size != table.size:
            continue
        if not np.array_equal(phi[table.mult], table.mult[np.ix_(phi, phi)]):
            continue
        out.append(phi)
    if not any(np.array_equal(phi, identity) for phi in out):
        raise RuntimeError("automorphism search lost the identity map")
    return out


def action_homomorphisms(actor: GroupTable, auts: Sequence[np.ndarray]) -> list[np.ndarray]:
    """All homomorphisms from ``actor`` into the given automorphism list,
    returned as full action tables (one row per actor element)."""
    gens = minimal_generating_sequence(actor)
    words = element_words(actor, gens)
    acted_size = auts[0].shape[0] if auts else 0
    identity = np.arange(acted_size, dtype=np.int32)
    out: list[np.ndarray] = []
    for assignment in product(range(len(auts)), repeat=len(gens)):
        lookup = dict(zip(gens, assignment))
        act = np.empty((actor.size, acted_size), dtype=np.int32)
        for x, word in enumerate(words):
            row = identity
            for s in word:
                row = auts[lookup[s]][row]
            act[x] = row
        ok = True
        for a in range(actor.size):
            for b in range(actor.size):
                if not np.array_equal(act[actor.mul(a, b)], act[b][act[a]]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(act)
    return out


@dataclass(frozen=True)
class ActionCensus:
    examined: int
    compatible: int
    incompatible: int


@dataclass(frozen=True)
class IncompatibleSample:
    """One rejected assignment, kept so its witness can be re-verified."""

    act_h_on_g: np.ndarray
    act_g_on_h: np.ndarray
    witness: CompatibilityWitness


@dataclass(frozen=True)
class CompatibilitySearch:
    pairs: tuple[ActionPair, ...]
    census: ActionCensus
    incompatible_samples: tuple[IncompatibleSample, ...]


def enumerate_compatible_actions(
    g_table: GroupTable,
    h_table: GroupTable,
    budget: int = 200_000,
    max_incompatible_samples: int = 4,
) -> CompatibilitySearch:
    """Exhaustively enumerate mutual action assignments and filter by
    compatibility.

    Each candidate is a pair of homomorphisms (H into Aut(G), G into Aut(H)).
    Distinct candidates produce distinct action tables, so every compatible
    pair is yielded exactly once.  Raises :class:`SearchBudgetExceeded` when
    the number of candidates passes ``budget``.
    """
    auts_g = automorphisms(g_table)
    auts_h = automorphisms(h_table)
    homs_h = action_homomorphisms(h_table, auts_g)
    homs_g = action_homomorphisms(g_table, auts_h)
    total = len(homs_h) * len(homs_g)
    if total > budget:
        raise SearchBudgetExceeded(budget, total)
    pairs: list[ActionPair] = []
    samples: list[IncompatibleSample] = []
    examined = incompatible = 0
    for act_h_on_g in homs_h:
        for act_g_on_h in homs_g:
            examined += 1
            candidate = ActionPair(g_table, h_table, act_h_on_g, act_g_on_h, unchecked=True)
            witness = check_compatibility(candidate)
            if witness is None:
                pairs.append(
                    ActionPair(g_table, h_table, act_h_on_g, act_g_on_h, unchecked=False)
                )
            else:
                incompatible += 1
                if len(samples) < max_incompatible_samples:
                    samples.append(IncompatibleSample(act_h_on_g, act_g_on_h, witness))
    census = ActionCensus(examined, len(pairs), incompatible)
    return CompatibilitySearch(tuple(pairs), census, tuple(samples))


# -- pair files ---------------------------------------------------------------


def pair_to_json(pair: ActionPair) -> str:
    return json.dumps(pair.to_json_dict())


def pair_from_json_dict(data: dict, resolve_group) -> ActionPair:
    """Build a pair from its JSON form.

    ``resolve_group`` maps builtin name strings to tables; inline tables are
    accepted directly.  ``unchecked: true`` skips validation, for shipping
    incompatible pairs to the compatibility checker.
    """
    def load(field):
        raw = data[field]
        if isinstance(raw, str):
            return resolve_group(raw)
        return GroupTable.from_json_dict(raw)

    return ActionPair(
        load("G"),
        load("H"),
        data["act_h_on_g"],
        data["act_g_on_h"],
        unchecked=bool(data.get("unchecked", False)),
    )
