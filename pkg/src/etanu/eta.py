"""Finite realization of the group built from a compatible action pair.

Given a compatible pair (G, H), the presented group has one generator per
element of G plus one per element of a second, disjoint copy of H, the full
Cayley relators of both, and the two conjugation-transport families

    [g, h']^(g1) = [g^(g1), (h^(g1))']      for all g, g1 in G, h in H
    [g, h']^(h1') = [g^(h1), (h^(h1))']     for all g in G, h, h1 in H

where primes mark symbols from the H copy, same-group superscripts are
conjugation and cross-group ones are the pair's actions.  Enumerating the
trivial subgroup realizes the group as permutations of its own elements; the
commutators [g, h'] are the tensors, and the subgroup they generate is the
tensor subgroup.  Every structural invariant (embeddings are injective
homomorphisms, the order factors as |G| * |H| * |tensor subgroup|, the tensor
subgroup is normal) is verified during realization and a failure aborts: it
can only mean a bug, never bad input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .abelian import AbelianGroup
from .actions import ActionPair, nu_setup
from .coset import CosetTable, coset_enumerate, perms_from_table
from .errors import InvariantViolation, PairTooLarge
from .perms import Permutation, PermutationGroup, subgroup_generated, table_from_perm_group
from .tables import Fingerprint, GroupTable, Homomorphism, fingerprint
from .words import Presentation, Word

ORDER_CAP = 10
TENSOR_TABLE_LIMIT = 100_000


def _commutator_word(a: int, b: int) -> Word:
    return Word(((a, -1), (b, -1), (a, 1), (b, 1)))


def _conjugated(word: Word, by: int) -> Word:
    return Word(((by, -1),) + word.letters + ((by, 1),))


def eta_presentation(pair: ActionPair) -> Presentation:
    """The defining presentation on all elements of G and the H copy.

    Relators: both full Cayley families, then the two conjugation-transport
    families over all triples, in lexicographic order.
    """
    g_t, h_t = pair.g_table, pair.h_table
    ng, nh = g_t.size, h_t.size

    def hsym(b: int) -> int:
        return ng + b

    relators: list[Word] = []
    for a in range(ng):
        for b in range(ng):
            relators.append(Word(((a, 1), (b, 1), (g_t.mul(a, b), -1))))
    for a in range(nh):
        for b in range(nh):
            relators.append(Word(((hsym(a), 1), (hsym(b), 1), (hsym(h_t.mul(a, b)), -1))))
    for g in range(ng):
        for h in range(nh):
            base = _commutator_word(g, hsym(h))
            for g1 in range(ng):
                image = _commutator_word(
                    g_t.conj(g, g1), hsym(pair.h_under(h, g1))
                )
                relators.append(_conjugated(base, g1) * image.inverse())
    for g in range(ng):
        for h in range(nh):
            base = _commutator_word(g, hsym(h))
            for h1 in range(nh):
                image = _commutator_word(
                    pair.g_under(g, h1), hsym(h_t.conj(h, h1))
                )
                relators.append(_conjugated(base, hsym(h1)) * image.inverse())

    labels = tuple(f"g{i}" for i in range(ng)) + tuple(f"h{j}" for j in range(nh))
    return Presentation(ng + nh, tuple(relators), labels)


def nu_presentation(table: GroupTable) -> Presentation:
    """Presentation for the same-group, all-conjugation setup."""
    return eta_presentation(nu_setup(table))


class EtaRealization:
    """The realized group with its embeddings and tensor subgroup.

    Immutable after construction; derived data (the enumerated tensor table,
    the transport maps and their kernels) is computed once on demand.
    """

    def __init__(
        self,
        pair: ActionPair,
        presentation: Presentation,
        coset_table: CosetTable,
        perm_group: PermutationGroup,
        embed_g: list[Permutation],
        embed_h: list[Permutation],
        tensor_elements: list[Permutation],
        tensor_of_pair: dict[tuple[int, int], int],
        tensor_subgroup: PermutationGroup,
    ):
        self.pair = pair
        self.presentation = presentation
        self.coset_table = coset_table
        self.perm_group = perm_group
        self.embed_g = embed_g
        self.embed_h = embed_h
        self.tensor_elements = tensor_elements
        self.tensor_of_pair = tensor_of_pair
        self.tensor_subgroup = tensor_subgroup
        self._analysis: TensorAnalysis | None = None
        self._element_matrix: np.ndarray | None = None

    @property
    def degree(self) -> int:
        return self.perm_group.degree

    def eta_order(self) -> int:
        return self.perm_group.order()

    def tensor_order(self) -> int:
        return self.tensor_subgroup.order()

    def analysis(self) -> "TensorAnalysis":
        if self._analysis is None:
            self._analysis = _analyze(self)
        return self._analysis

    def element_perm_matrix(self) -> np.ndarray:
        """Image array of every realized element, indexed by coset.

        Row ``b`` is the permutation of the element mapping coset 0 to ``b``;
        for this trivial-subgroup realization the map ``perm -> perm(0)`` is a
        bijection onto cosets, so ``matrix[b][a]`` is the product ``a * b``.
        """
        if self._element_matrix is None:
            entries = self.coset_table.require_complete()
            n = self.degree
            matrix = np.empty((n, n), dtype=np.int32)
            matrix[0] = np.arange(n, dtype=np.int32)
            done = np.zeros(n, dtype=bool)
            done[0] = True
            queue = [0]
            head = 0
            while head < len(queue):
                b = queue[head]
                head += 1
                for c in range(entries.shape[1]):
                    target = int(entries[b, c])
                    if not done[target]:
                        gen = self._column_perm(c)
                        matrix[target] = gen.images[matrix[b]]
                        done[target] = True
                        queue.append(target)
            if not done.all():
                raise InvariantViolation("realized group is not transitive on cosets")
            self._element_matrix = matrix
        return self._element_matrix

    def _column_perm(self, column: int) -> Permutation:
        gen = self.embed_g + self.embed_h
        perm = gen[column // 2]
        return perm if column % 2 == 0 else perm.inverse()

    def regular_table(self) -> GroupTable:
        """Multiplication table of the whole realized group, coset-indexed."""
        matrix = self.element_perm_matrix()
        return GroupTable(np.ascontiguousarray(matrix.T), name="eta-regular")

    def element_index(self, perm: Permutation) -> int:
        """Coset index of a realized element (its image of coset 0)."""
        return int(perm.images[0])


def realize(
    pair: ActionPair,
    max_cosets: int | None = None,
    allow_large: bool = False,
) -> EtaRealization:
    """Enumerate, convert to permutations, extract tensors, verify invariants.

    Groups of order above 10 require ``allow_large=True``: the realized order
    is |G| * |H| * |tensor subgroup| and grows quickly.
    """
    g_t, h_t = pair.g_table, pair.h_table
    if max(g_t.size, h_t.size) > ORDER_CAP and not allow_large:
        raise PairTooLarge(
            f"pair orders ({g_t.size}, {h_t.size}) exceed the cap {ORDER_CAP}; "
            "pass allow_large=True to override"
        )
    presentation = eta_presentation(pair)
    ct = coset_enumerate(presentation, (), max_cosets)
    ct.require_complete()
    perm_group, gen_perms = perms_from_table(ct)
    ng = g_t.size
    embed_g = gen_perms[:ng]
    embed_h = gen_perms[ng:]

    tensor_elements: list[Permutation] = []
    tensor_of_pair: dict[tuple[int, int], int] = {}
    seen: dict[bytes, int] = {}
    for g in range(g_t.size):
        pg_inv = embed_g[g].inverse()
        for h in range(h_t.size):
            ph = embed_h[h]
            tensor = pg_inv * ph.inverse() * embed_g[g] * ph
            idx = seen.get(tensor.key())
            if idx is None:
                idx = len(tensor_elements)
                seen[tensor.key()] = idx
                tensor_elements.append(tensor)
            tensor_of_pair[(g, h)] = idx

    tensor_subgroup = subgroup_generated(perm_group.degree, tensor_elements)
    realization = EtaRealization(
        pair,
        presentation,
        ct,
        perm_group,
        embed_g,
        embed_h,
        tensor_elements,
        tensor_of_pair,
        tensor_subgroup,
    )
    _verify_realization(realization)
    return realization


def _verify_realization(e: EtaRealization) -> None:
    result = decomposition_check(e)
    if not result.ok:
        raise InvariantViolation(f"realization invariants failed: {result.failure}")


def _check_embedding(table: GroupTable, images: Sequence[Permutation]) -> str | None:
    keys = {p.key() for p in images}
    if len(keys) != table.size:
        return "embedding is not injective"
    for a in range(table.size):
        for b in range(table.size):
            if images[a] * images[b] != images[table.mul(a, b)]:
                return f"embedding breaks multiplication at ({a}, {b})"
    return None


@dataclass(frozen=True)
class DecompositionCheck:
    """Outcome of the order-factorization check |eta| = |G| |H| |tensor|."""

    ok: bool
    eta_order: int
    g_order: int
    h_order: int
    tensor_order: int
    failure: str | None = None


def decomposition_check(e: EtaRealization) -> DecompositionCheck:
    """Verify the semidirect factorization through the order equation plus
    injectivity of both embeddings and normality of the tensor subgroup."""
    eta_order = e.eta_order()
    tensor_order = e.tensor_order()
    g_order = e.pair.g_table.size
    h_order = e.pair.h_table.size

    def fail(reason: str) -> DecompositionCheck:
        return DecompositionCheck(False, eta_order, g_order, h_order, tensor_order, reason)

    problem = _check_embedding(e.pair.g_table, e.embed_g)
    if problem:
        return fail(f"G {problem}")
    problem = _check_embedding(e.pair.h_table, e.embed_h)
    if problem:
        return fail(f"H copy {problem}")
    if eta_order != g_order * h_order * tensor_order:
        return fail(
            f"order {eta_order} != {g_order} * {h_order} * {tensor_order}"
        )
    inside = e.tensor_subgroup.membership()
    for t in e.tensor_subgroup.generators:
        for x in e.embed_g + e.embed_h:
            if not inside(t.conjugate_by(x)):
                return fail("tensor subgroup is not normal")
    return DecompositionCheck(True, eta_order, g_order, h_order, tensor_order)


def tensors(e: EtaRealization) -> tuple[list[Permutation], int]:
    """The deduplicated tensor set and its size m; the identity always belongs."""
    elements = list(e.tensor_elements)
    identity = Permutation.identity(e.degree)
    if identity not in elements:
        raise InvariantViolation("tensor set does not contain the identity")
    return elements, len(elements)


@dataclass(frozen=True)
class TensorAnalysis:
    """Enumerated tensor subgroup with the transport maps and their kernels.

    ``table`` indexes the tensor subgroup's elements (identity first, then
    lexicographic by permutation images); ``tensor_indices[k]`` locates the
    k-th tensor in that table.  ``lam`` sends a tensor [g, h'] to g^-1 * g^h
    in G, ``mu`` sends it to (h^g)^-1 * h in H, both extended
    multiplicatively and verified exhaustively.
    """

    table: GroupTable
    element_perms: tuple[Permutation, ...]
    tensor_indices: tuple[int, ...]
    lam: Homomorphism
    mu: Homomorphism
    ker_lambda: frozenset[int]
    ker_mu: frozenset[int]
    ker_both: frozenset[int]
    n: int

    @property
    def order(self) -> int:
        return self.table.size

    def exponent(self) -> int:
        from .tables import exponent as table_exponent

        return table_exponent(self.table)

    def fingerprint(self) -> Fingerprint:
        return fingerprint(self.table)

    def structure(self) -> AbelianGroup | None:
        from .abelian import abelian_structure

        if not self.table.is_abelian():
            return None
        return abelian_structure(self.table)


def _analyze(e: EtaRealization) -> TensorAnalysis:
    g_t, h_t = e.pair.g_table, e.pair.h_table
    table, element_perms = table_from_perm_group(e.tensor_subgroup, TENSOR_TABLE_LIMIT)
    index_of = {p.key(): i for i, p in enumerate(element_perms)}
    tensor_indices = tuple(index_of[t.key()] for t in e.tensor_elements)

    lam_of_tensor: dict[int, int] = {}
    mu_of_tensor: dict[int, int] = {}
    for (g, h), k in e.tensor_of_pair.items():
        lam_value = g_t.mul(g_t.inverse(g), e.pair.g_under(g, h))
        mu_value = h_t.mul(h_t.inverse(e.pair.h_under(h, g)), h)
        t_idx = tensor_indices[k]
        if lam_of_tensor.setdefault(t_idx, lam_value) != lam_value:
            raise InvariantViolation(
                f"transport map lambda is ill-defined on tensor {t_idx}"
            )
        if mu_of_tensor.setdefault(t_idx, mu_value) != mu_value:
            raise InvariantViolation(f"transport map mu is ill-defined on tensor {t_idx}")

    lam_images = np.full(table.size, -1, dtype=np.int32)
    mu_images = np.full(table.size, -1, dtype=np.int32)
    lam_images[0] = 0
    mu_images[0] = 0
    queue = [0]
    while queue:
        u = queue.pop(0)
        for t_idx in tensor_indices:
            v = table.mul(u, t_idx)
            if lam_images[v] == -1:
                lam_images[v] = g_t.mul(int(lam_images[u]), lam_of_tensor[t_idx])
                mu_images[v] = h_t.mul(int(mu_images[u]), mu_of_tensor[t_idx])
                queue.append(v)
    if (lam_images == -1).any():
        raise InvariantViolation("tensors do not generate the enumerated subgroup")

    lam = Homomorphism(table, g_t, tuple(int(x) for x in lam_images))
    mu = Homomorphism(table, h_t, tuple(int(x) for x in mu_images))
    for hom, label in ((lam, "lambda"), (mu, "mu")):
        if not hom.respects_multiplication():
            raise InvariantViolation(f"multiplicative extension of {label} is inconsistent")
    for t_idx in tensor_indices:
        if lam.images[t_idx] != lam_of_tensor[t_idx] or mu.images[t_idx] != mu_of_tensor[t_idx]:
            raise InvariantViolation("extension disagrees with generator values")

    ker_lambda = lam.kernel()
    ker_mu = mu.kernel()
    ker_both = ker_lambda & ker_mu
    n = table.size // len(ker_both)
    return TensorAnalysis(
        table=table,
        element_perms=tuple(element_perms),
        tensor_indices=tensor_indices,
        lam=lam,
        mu=mu,
        ker_lambda=ker_lambda,
        ker_mu=ker_mu,
        ker_both=ker_both,
        n=n,
    )


def lambda_mu(e: EtaRealization):
    """The two transport epimorphisms with their kernels and the central index.

    Returns ``(lam, mu, ker_lambda, ker_mu, n)`` where kernels are element
    index sets of the enumerated tensor subgroup and
    ``n = |tensor subgroup| / |ker_lambda & ker_mu|``.
    """
    a = e.analysis()
    return a.lam, a.mu, a.ker_lambda, a.ker_mu, a.n


def diagonal_subgroup(e: EtaRealization) -> PermutationGroup:
    """Subgroup generated by the diagonal tensors [g, g'] of a nu-setup."""
    if not e.pair.is_nu_setup():
        raise ValueError("diagonal subgroup is defined only for nu-setup realizations")
    gens = [
        e.tensor_elements[e.tensor_of_pair[(g, g)]] for g in range(e.pair.g_table.size)
    ]
    return subgroup_generated(e.degree, gens)


@dataclass(frozen=True)
class TensorReport:
    """Everything the structural bounds talk about, for one realized pair."""

    m: int
    d_gh: int
    d_hg: int
    tensor_order: int
    n: int
    exponent: int
    fingerprint: Fingerprint
    verdicts: dict

    def __post_init__(self):
        if (self.d_gh * self.d_hg) % self.n:
            raise InvariantViolation("central index must divide the derivative product")
        if self.tensor_order % self.n:
            raise InvariantViolation("central index must divide the tensor order")

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "d_gh": self.d_gh,
            "d_hg": self.d_hg,
            "tensor_order": self.tensor_order,
            "n": self.n,
            "exponent": self.exponent,
            "fingerprint": self.fingerprint.to_json_dict(),
            "verdicts": dict(self.verdicts),
        }
