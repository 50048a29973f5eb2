"""Executable structural checks over realized action pairs.

Each check re-verifies one structural fact about the realized group — an
identity, a bound, a divisibility, or an exact index equation — and returns a
:class:`CheckResult` whose quantities contain every number the fact talks
about.  A ``fail`` verdict always carries a concrete witness.  The full
battery over the default catalog is expected to produce zero fails: any fail
indicates a bug in this package, not a false fact.

Huge bounds of the shape ``m ** (m * n)`` are compared exactly while the
exponent stays under 63 bits of result and in log space beyond that; the
content of the check is the inequality, never the astronomically large
number itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .abelian import abelianization, tensor_Z
from .actions import ActionPair, derivative
from .eta import EtaRealization, TensorReport, decomposition_check, diagonal_subgroup, tensors
from .tables import (
    closure,
    conjugacy_class_sizes,
    conjugacy_classes,
    derived_subgroup,
)

CHECK_IDS = (
    "derivative_finiteness",
    "semidirect_decomposition",
    "epimorphism_indices",
    "kernel_centrality",
    "power_rewrite",
    "tensor_order_bound",
    "kernel_index_bound",
    "tensor_square_bound",
    "exponent_divides",
    "tensor_length",
    "trivial_action_tensor",
    "nu_profile",
)

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    verdict: str
    quantities: dict
    witness: Any = None

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL, NOT_APPLICABLE):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FAIL and self.witness is None:
            raise ValueError("a failing check must carry a witness")

    def passed(self) -> bool:
        return self.verdict == PASS

    def to_json_dict(self) -> dict:
        return {
            "check": self.check_id,
            "verdict": self.verdict,
            "quantities": dict(self.quantities),
            "witness": self.witness,
        }


def _result(check_id: str, ok: bool, quantities: dict, witness=None) -> CheckResult:
    return CheckResult(check_id, PASS if ok else FAIL, quantities, witness if not ok else None)


# -- individual checks --------------------------------------------------------


def check_theorem_A(pair: ActionPair) -> CheckResult:
    """Derivative set and subgroup on the G side, plus (when the derivative
    subgroup is abelian) the squared-bracket rewriting identity that drives
    the finiteness argument."""
    data = derivative(pair, "g-under-h")
    g_t, h_t = pair.g_table, pair.h_table
    quantities = {"m": data.m, "derivative_order": len(data.subgroup)}
    abelian = all(
        g_t.mul(a, b) == g_t.mul(b, a) for a in data.subgroup for b in data.subgroup
    )
    if not abelian:
        quantities["abelian_power_identity"] = None
        return CheckResult("derivative_finiteness", PASS, quantities)
    witness = None
    for g in range(g_t.size):
        for h in range(h_t.size):
            u = g_t.mul(g_t.inverse(g), pair.g_under(g, h))
            u2 = g_t.mul(u, u)
            for k in range(h_t.size):
                lhs_base = g_t.mul(g_t.inverse(u), pair.g_under(u, k))
                lhs = g_t.mul(lhs_base, lhs_base)
                rhs = g_t.mul(g_t.inverse(u2), pair.g_under(u2, k))
                if lhs != rhs:
                    witness = {"g": g, "h": h, "k": k, "lhs": lhs, "rhs": rhs}
                    break
            if witness:
                break
        if witness:
            break
    quantities["abelian_power_identity"] = witness is None
    return _result("derivative_finiteness", witness is None, quantities, witness)


def check_decomposition(e: EtaRealization) -> CheckResult:
    outcome = decomposition_check(e)
    quantities = {
        "eta_order": outcome.eta_order,
        "g_order": outcome.g_order,
        "h_order": outcome.h_order,
        "tensor_order": outcome.tensor_order,
    }
    return _result(
        "semidirect_decomposition", outcome.ok, quantities, outcome.failure
    )


def check_epimorphism_indices(e: EtaRealization) -> CheckResult:
    """The transport maps hit exactly the independently computed derivative
    subgroups: matching image sets and exact index equations."""
    a = e.analysis()
    d_gh = derivative(e.pair, "g-under-h")
    d_hg = derivative(e.pair, "h-under-g")
    index_lam = a.order // len(a.ker_lambda)
    index_mu = a.order // len(a.ker_mu)
    quantities = {
        "tensor_order": a.order,
        "index_ker_lambda": index_lam,
        "index_ker_mu": index_mu,
        "derivative_gh_order": len(d_gh.subgroup),
        "derivative_hg_order": len(d_hg.subgroup),
    }
    problems = []
    if a.lam.image() != d_gh.subgroup:
        problems.append("lambda image differs from the G-side derivative subgroup")
    if a.mu.image() != d_hg.subgroup:
        problems.append("mu image differs from the H-side derivative subgroup")
    if index_lam != len(d_gh.subgroup):
        problems.append("index of ker(lambda) is not the G-side derivative order")
    if index_mu != len(d_hg.subgroup):
        problems.append("index of ker(mu) is not the H-side derivative order")
    return _result("epimorphism_indices", not problems, quantities, problems or None)


def check_centrality(e: EtaRealization) -> CheckResult:
    """ker(lambda) & ker(mu) is central in the whole realization, conjugation
    from the H copy fixes ker(lambda) pointwise, and conjugation from G fixes
    ker(mu) pointwise."""
    a = e.analysis()
    generators = e.embed_g + e.embed_h
    witness = None
    for i in sorted(a.ker_both):
        u = a.element_perms[i]
        for k, x in enumerate(generators):
            if u * x != x * u:
                witness = {"kernel_element": i, "generator": k}
                break
        if witness:
            break
    if witness is None:
        for i in sorted(a.ker_lambda):
            u = a.element_perms[i]
            for h1, x in enumerate(e.embed_h):
                if u.conjugate_by(x) != u:
                    witness = {"ker_lambda_element": i, "h": h1}
                    break
            if witness:
                break
    if witness is None:
        for i in sorted(a.ker_mu):
            u = a.element_perms[i]
            for g1, x in enumerate(e.embed_g):
                if u.conjugate_by(x) != u:
                    witness = {"ker_mu_element": i, "g": g1}
                    break
            if witness:
                break
    quantities = {
        "ker_lambda_order": len(a.ker_lambda),
        "ker_mu_order": len(a.ker_mu),
        "ker_both_order": len(a.ker_both),
    }
    return _result("kernel_centrality", witness is None, quantities, witness)


def check_lemma_identity(e: EtaRealization) -> CheckResult:
    """The power rewriting identity
    ``[x, y']^(n+1) == [x, (y^2)'] * [x^y, y']^(n-1)`` for every x in G and
    y in H, with n the index of ker(lambda) & ker(mu)."""
    a = e.analysis()
    table = a.table
    g_t, h_t = e.pair.g_table, e.pair.h_table
    n = a.n
    witness = None
    pairs_checked = 0
    for x in range(g_t.size):
        for y in range(h_t.size):
            pairs_checked += 1
            t = a.tensor_indices[e.tensor_of_pair[(x, y)]]
            y_sq = h_t.mul(y, y)
            first = a.tensor_indices[e.tensor_of_pair[(x, y_sq)]]
            x_y = e.pair.g_under(x, y)
            second = a.tensor_indices[e.tensor_of_pair[(x_y, y)]]
            lhs = table.power(t, n + 1)
            rhs = table.mul(first, table.power(second, n - 1))
            if lhs != rhs:
                witness = {"x": x, "y": y, "lhs": lhs, "rhs": rhs}
                break
        if witness:
            break
    quantities = {"n": n, "pairs_checked": pairs_checked}
    return _result("power_rewrite", witness is None, quantities, witness)


def _power_bound_holds(value: int, base: int, exponent: int) -> bool:
    """Whether ``value <= base ** exponent`` without forming huge powers."""
    if base == 1:
        return value <= 1
    if exponent * math.log2(base) < 63:
        return value <= base**exponent
    return math.log(value) <= exponent * math.log(base)


def check_bounds(e: EtaRealization) -> list[CheckResult]:
    """Order bound by tensor count, kernel index bound by derivative orders,
    and for nu-setups the variant with the derived subgroup order in the
    exponent, reported separately."""
    a = e.analysis()
    _, m = tensors(e)
    d_gh = derivative(e.pair, "g-under-h")
    d_hg = derivative(e.pair, "h-under-g")
    tensor_order = a.order
    n = a.n
    results = []

    if m == 1:
        order_ok = tensor_order == 1
    else:
        order_ok = _power_bound_holds(tensor_order, m, m * n)
    results.append(
        _result(
            "tensor_order_bound",
            order_ok,
            {"tensor_order": tensor_order, "m": m, "n": n},
            {"tensor_order": tensor_order, "bound": f"{m}^{m * n}"} if not order_ok else None,
        )
    )

    index_ok = n <= len(d_gh.subgroup) * len(d_hg.subgroup)
    results.append(
        _result(
            "kernel_index_bound",
            index_ok,
            {
                "n": n,
                "derivative_gh_order": len(d_gh.subgroup),
                "derivative_hg_order": len(d_hg.subgroup),
            },
            {"n": n} if not index_ok else None,
        )
    )

    if e.pair.is_nu_setup():
        derived_order = len(derived_subgroup(e.pair.g_table))
        if m == 1:
            square_ok = tensor_order == 1
        else:
            square_ok = _power_bound_holds(tensor_order, m, m * derived_order)
        results.append(
            _result(
                "tensor_square_bound",
                square_ok,
                {"tensor_order": tensor_order, "m": m, "derived_order": derived_order},
                {"bound": f"{m}^{m * derived_order}"} if not square_ok else None,
            )
        )
    else:
        results.append(
            CheckResult("tensor_square_bound", NOT_APPLICABLE, {"reason": "not a nu-setup"})
        )
    return results


def check_exponent_bound(e: EtaRealization) -> CheckResult:
    """exp(tensor subgroup) divides |G| * |H| * n, and n divides |G| * |H|."""
    a = e.analysis()
    exp = a.exponent()
    g_order = e.pair.g_table.size
    h_order = e.pair.h_table.size
    n = a.n
    bound = g_order * h_order * n
    quantities = {
        "exponent": exp,
        "g_order": g_order,
        "h_order": h_order,
        "n": n,
        "bound": bound,
        "n_divides_gh": (g_order * h_order) % n == 0,
    }
    ok = bound % exp == 0 and (g_order * h_order) % n == 0
    return _result("exponent_divides", ok, quantities, quantities if not ok else None)


def check_tensor_length(e: EtaRealization) -> CheckResult:
    """Every tensor-subgroup element is a product of at most m * n tensors:
    breadth-first eccentricity from the identity under tensor multiplication."""
    a = e.analysis()
    _, m = tensors(e)
    n = a.n
    depth = np.full(a.order, -1, dtype=np.int64)
    depth[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for t in a.tensor_indices:
                v = a.table.mul(u, t)
                if depth[v] == -1:
                    depth[v] = depth[u] + 1
                    nxt.append(v)
        frontier = nxt
    if (depth == -1).any():
        return _result(
            "tensor_length",
            False,
            {"m": m, "n": n},
            {"unreached": int((depth == -1).sum())},
        )
    eccentricity = int(depth.max())
    ok = eccentricity <= m * n
    quantities = {"max_length": eccentricity, "m": m, "n": n, "bound": m * n}
    return _result("tensor_length", ok, quantities, quantities if not ok else None)


def check_trivial_action_iso(e: EtaRealization) -> CheckResult:
    """Under trivial actions the tensor subgroup is abelian with the same
    invariant factors as the integral tensor product of the abelianizations."""
    if not e.pair.is_trivial_pair():
        return CheckResult(
            "trivial_action_tensor", NOT_APPLICABLE, {"reason": "actions are not trivial"}
        )
    a = e.analysis()
    expected = tensor_Z(abelianization(e.pair.g_table), abelianization(e.pair.h_table))
    if not a.table.is_abelian():
        return _result(
            "trivial_action_tensor",
            False,
            {"expected": str(expected)},
            "tensor subgroup is not abelian",
        )
    actual = a.structure()
    quantities = {"realized": str(actual), "z_tensor": str(expected)}
    ok = actual is not None and actual.invariant_factors == expected.invariant_factors
    return _result("trivial_action_tensor", ok, quantities, quantities if not ok else None)


def check_finiteness_profile(e: EtaRealization) -> CheckResult:
    """Consistency relations among the finiteness measures of a nu-setup:
    the tensor set sits inside the commutator set of the realized group, the
    tensor subgroup inside its derived subgroup, the diagonal subgroup inside
    the tensor subgroup with |G^ab| dividing its order."""
    if not e.pair.is_nu_setup():
        return CheckResult("nu_profile", NOT_APPLICABLE, {"reason": "not a nu-setup"})
    a = e.analysis()
    g_t = e.pair.g_table
    regular = e.regular_table()

    comm_set: set[int] = set()
    for cls in conjugacy_classes(regular):
        members = np.fromiter(cls, dtype=np.int32)
        products = regular.mult[np.ix_(regular.inv[members], members)]
        comm_set.update(int(x) for x in np.unique(products))
    nu_derived = closure(regular, comm_set)

    tensor_set_idx = {e.element_index(t) for t in e.tensor_elements}
    tensor_subgroup_idx = {e.element_index(p) for p in a.element_perms}
    diag = diagonal_subgroup(e)
    diag_idx = {e.element_index(p) for p in diag.elements()}

    g_ab = abelianization(g_t)
    quantities = {
        "commutator_set_size": len(comm_set),
        "nu_derived_order": len(nu_derived),
        "tensor_order": a.order,
        "m": len(e.tensor_elements),
        "max_class_size_g": max(conjugacy_class_sizes(g_t)),
        "g_ab_order": g_ab.order,
        "z_tensor_square_order": tensor_Z(g_ab, g_ab).order,
        "diagonal_order": diag.order(),
    }
    problems = []
    if not tensor_set_idx <= comm_set:
        problems.append("a tensor is not a commutator of the realized group")
    if not tensor_subgroup_idx <= nu_derived:
        problems.append("tensor subgroup is not inside the derived subgroup")
    if len(e.tensor_elements) > len(comm_set):
        problems.append("more tensors than commutators")
    if not diag_idx <= tensor_subgroup_idx:
        problems.append("diagonal subgroup leaves the tensor subgroup")
    if diag.order() % g_ab.order:
        problems.append("|G^ab| does not divide the diagonal subgroup order")
    return _result("nu_profile", not problems, quantities, problems or None)


# -- orchestration ------------------------------------------------------------


def run_all_checks(e: EtaRealization) -> list[CheckResult]:
    """Every check in a fixed order; deterministic for a fixed realization."""
    results = [
        check_theorem_A(e.pair),
        check_decomposition(e),
        check_epimorphism_indices(e),
        check_centrality(e),
        check_lemma_identity(e),
    ]
    results.extend(check_bounds(e))
    results.append(check_exponent_bound(e))
    results.append(check_tensor_length(e))
    results.append(check_trivial_action_iso(e))
    results.append(check_finiteness_profile(e))
    ordered = {r.check_id: r for r in results}
    return [ordered[cid] for cid in CHECK_IDS]


def build_tensor_report(e: EtaRealization, results: list[CheckResult] | None = None) -> TensorReport:
    """Assemble the quantities every bound talks about for one realization."""
    if results is None:
        results = run_all_checks(e)
    a = e.analysis()
    _, m = tensors(e)
    d_gh = derivative(e.pair, "g-under-h")
    d_hg = derivative(e.pair, "h-under-g")
    verdicts = {
        r.check_id: r.passed() for r in results if r.verdict != NOT_APPLICABLE
    }
    return TensorReport(
        m=m,
        d_gh=len(d_gh.subgroup),
        d_hg=len(d_hg.subgroup),
        tensor_order=a.order,
        n=a.n,
        exponent=a.exponent(),
        fingerprint=a.fingerprint(),
        verdicts=verdicts,
    )
