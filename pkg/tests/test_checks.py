import json

import pytest

from etanu.actions import nu_setup, trivial_actions
from etanu.catalog import cyclic, klein4, quaternion8, sym
from etanu.checks import (
    CHECK_IDS,
    CheckResult,
    build_tensor_report,
    check_bounds,
    check_centrality,
    check_exponent_bound,
    check_finiteness_profile,
    check_lemma_identity,
    check_tensor_length,
    check_theorem_A,
    check_trivial_action_iso,
    run_all_checks,
    _power_bound_holds,
)
from etanu.eta import realize

from conftest import commutator_closure_oracle


@pytest.fixture(scope="module")
def nu_s3():
    return realize(nu_setup(sym(3)))


@pytest.fixture(scope="module")
def nu_q8():
    return realize(nu_setup(quaternion8()))


@pytest.fixture(scope="module")
def trivial_c4_c6():
    return realize(trivial_actions(cyclic(4), cyclic(6)))


class TestCheckResult:
    def test_fail_requires_witness(self):
        with pytest.raises(ValueError, match="witness"):
            CheckResult("x", "fail", {})

    def test_unknown_verdict_rejected(self):
        with pytest.raises(ValueError):
            CheckResult("x", "maybe", {})

    def test_json_shape(self):
        r = CheckResult("x", "pass", {"a": 1})
        assert json.loads(json.dumps(r.to_json_dict())) == {
            "check": "x",
            "verdict": "pass",
            "quantities": {"a": 1},
            "witness": None,
        }


class TestTheoremA:
    def test_trivial_pair(self):
        result = check_theorem_A(trivial_actions(cyclic(3), cyclic(5)))
        assert result.passed()
        assert result.quantities["m"] == 1
        assert result.quantities["derivative_order"] == 1

    def test_nu_s3(self):
        result = check_theorem_A(nu_setup(sym(3)))
        assert result.passed()
        assert result.quantities["m"] == 3
        assert result.quantities["derivative_order"] == 3
        assert result.quantities["abelian_power_identity"] is True

    def test_nu_q8_derivative_matches_derived_subgroup(self):
        result = check_theorem_A(nu_setup(quaternion8()))
        assert result.quantities["derivative_order"] == 2
        assert len(commutator_closure_oracle(quaternion8())) == 2

    def test_nonabelian_derivative_skips_power_identity(self):
        # [S4', <conj>] setups have nonabelian derivative subgroups; use the
        # nu-setup on S4 restricted... the dihedral rotations pair suffices:
        from etanu.catalog import builtin_pair

        result = check_theorem_A(builtin_pair("normal_pair(quaternion8; cyclic:1, all)"))
        assert result.passed()


class TestLemmaIdentity:
    def test_trivial_pair_n_is_one(self, trivial_c4_c6):
        result = check_lemma_identity(trivial_c4_c6)
        assert result.passed()
        assert result.quantities["n"] == 1
        assert result.quantities["pairs_checked"] == 24

    def test_nu_s3(self, nu_s3):
        result = check_lemma_identity(nu_s3)
        assert result.passed()
        assert result.quantities["pairs_checked"] == 36

    def test_nu_q8(self, nu_q8):
        assert check_lemma_identity(nu_q8).passed()


class TestCentrality:
    def test_trivial_pair_kernel_is_whole_tensor_subgroup(self, trivial_c4_c6):
        result = check_centrality(trivial_c4_c6)
        assert result.passed()
        assert result.quantities["ker_both_order"] == 2

    def test_nu_realizations(self, nu_s3, nu_q8):
        assert check_centrality(nu_s3).passed()
        assert check_centrality(nu_q8).passed()


class TestBounds:
    def test_power_bound_helper_consistent_at_boundary(self):
        for value, base, exp in [(100, 2, 7), (128, 2, 7), (129, 2, 7), (3**40, 3, 40)]:
            exact = value <= base**exp
            assert _power_bound_holds(value, base, exp) == exact

    def test_trivial_c2_c2(self):
        e = realize(trivial_actions(cyclic(2), cyclic(2)))
        results = {r.check_id: r for r in check_bounds(e)}
        order = results["tensor_order_bound"]
        assert order.passed()
        assert order.quantities == {"tensor_order": 2, "m": 2, "n": 1}

    def test_single_tensor_forces_trivial_subgroup(self):
        e = realize(trivial_actions(cyclic(2), cyclic(3)))
        results = {r.check_id: r for r in check_bounds(e)}
        assert results["tensor_order_bound"].passed()
        assert results["tensor_order_bound"].quantities["m"] == 1
        assert e.tensor_order() == 1

    def test_nu_s3_all_bounds(self, nu_s3):
        results = {r.check_id: r for r in check_bounds(nu_s3)}
        assert all(r.passed() for r in results.values())
        assert results["kernel_index_bound"].quantities["n"] == 3
        assert results["tensor_square_bound"].quantities["derived_order"] == 3

    def test_square_bound_not_applicable_off_nu(self, trivial_c4_c6):
        results = {r.check_id: r for r in check_bounds(trivial_c4_c6)}
        assert results["tensor_square_bound"].verdict == "not-applicable"


class TestExponent:
    def test_trivial_c4_c6(self, trivial_c4_c6):
        result = check_exponent_bound(trivial_c4_c6)
        assert result.passed()
        assert result.quantities["exponent"] == 2
        assert result.quantities["bound"] == 24

    def test_nu_q8(self, nu_q8):
        result = check_exponent_bound(nu_q8)
        assert result.passed()
        assert result.quantities["exponent"] == 4
        assert result.quantities["n_divides_gh"] is True


class TestTensorLength:
    def test_coprime_trivial_subgroup_has_length_zero(self):
        e = realize(trivial_actions(cyclic(2), cyclic(3)))
        result = check_tensor_length(e)
        assert result.passed()
        assert result.quantities["max_length"] == 0

    def test_nu_c2(self):
        result = check_tensor_length(realize(nu_setup(cyclic(2))))
        assert result.quantities["max_length"] == 1

    def test_nu_s3_within_bound(self, nu_s3):
        result = check_tensor_length(nu_s3)
        assert result.passed()
        assert result.quantities["max_length"] <= result.quantities["bound"]


class TestTrivialActionIso:
    def test_coprime(self):
        e = realize(trivial_actions(cyclic(2), cyclic(3)))
        result = check_trivial_action_iso(e)
        assert result.passed()
        assert result.quantities == {"realized": "1", "z_tensor": "1"}

    def test_c4_c6(self, trivial_c4_c6):
        result = check_trivial_action_iso(trivial_c4_c6)
        assert result.passed()
        assert result.quantities == {"realized": "C2", "z_tensor": "C2"}

    def test_klein_c2(self):
        e = realize(trivial_actions(klein4(), cyclic(2)))
        result = check_trivial_action_iso(e)
        assert result.passed()
        assert result.quantities == {"realized": "C2 x C2", "z_tensor": "C2 x C2"}

    def test_not_applicable_for_nontrivial_actions(self, nu_s3):
        assert check_trivial_action_iso(nu_s3).verdict == "not-applicable"


class TestFinitenessProfile:
    def test_not_applicable_off_nu(self, trivial_c4_c6):
        assert check_finiteness_profile(trivial_c4_c6).verdict == "not-applicable"

    def test_nu_c2(self):
        result = check_finiteness_profile(realize(nu_setup(cyclic(2))))
        assert result.passed()
        assert result.quantities["commutator_set_size"] == 2
        assert result.quantities["diagonal_order"] == 2

    def test_nu_klein_profile_fixture(self):
        result = check_finiteness_profile(realize(nu_setup(klein4())))
        assert result.passed()
        assert result.quantities["tensor_order"] == 16
        assert result.quantities["m"] == 10
        assert result.quantities["diagonal_order"] == 8
        assert result.quantities["g_ab_order"] == 4
        assert result.quantities["z_tensor_square_order"] == 16

    def test_nu_s3_profile(self, nu_s3):
        result = check_finiteness_profile(nu_s3)
        assert result.passed()
        assert result.quantities["m"] <= result.quantities["commutator_set_size"]
        assert result.quantities["max_class_size_g"] == 3


class TestOrchestration:
    def test_fixed_check_order(self, nu_s3):
        results = run_all_checks(nu_s3)
        assert tuple(r.check_id for r in results) == CHECK_IDS

    def test_report_assembly(self, nu_s3):
        report = build_tensor_report(nu_s3)
        assert report.m == 6
        assert report.d_gh == report.d_hg == 3
        assert report.tensor_order == 6
        assert report.n == 3
        assert report.exponent == 6
        assert report.verdicts["power_rewrite"] is True
        assert "trivial_action_tensor" not in report.verdicts

    def test_report_json_deterministic(self, nu_s3):
        a = json.dumps(build_tensor_report(nu_s3).to_json_dict())
        b = json.dumps(build_tensor_report(nu_s3).to_json_dict())
        assert a == b
