import json

import numpy as np
import pytest

from etanu.actions import (
    ActionPair,
    automorphisms,
    check_compatibility,
    derivative,
    enumerate_compatible_actions,
    minimal_generating_sequence,
    normality_check,
    nu_setup,
    pair_from_json_dict,
    trivial_actions,
    validate_actions,
)
from etanu.catalog import builtin_group, cyclic, dihedral, klein4, quaternion8, sym
from etanu.errors import SearchBudgetExceeded
from etanu.tables import derived_subgroup

# One incompatible mutual-action assignment on klein4 x klein4, found by the
# exhaustive search and frozen: the first reported witness must stay stable.
INCOMPATIBLE_V4 = {
    "act_h_on_g": [[0, 1, 2, 3], [0, 1, 2, 3], [0, 1, 3, 2], [0, 1, 3, 2]],
    "act_g_on_h": [[0, 1, 2, 3], [0, 1, 2, 3], [0, 2, 1, 3], [0, 2, 1, 3]],
    "family": "g-under-h",
    "triple": (2, 1, 2),
}


class TestValidation:
    def test_trivial_actions_valid(self):
        pair = trivial_actions(sym(3), cyclic(4))
        assert validate_actions(pair) == []

    def test_conjugation_setup_valid(self):
        assert validate_actions(nu_setup(quaternion8())) == []

    def test_identity_must_be_fixed(self):
        act_h_on_g = [[1, 0], [1, 0]]  # sends identity to a non-identity element
        pair = ActionPair(cyclic(2), cyclic(2), act_h_on_g, [[0, 1], [0, 1]], unchecked=True)
        violations = validate_actions(pair)
        assert any("fix the identity" in v.axiom for v in violations)

    def test_identity_actor_must_act_trivially(self):
        act_h_on_g = [[0, 2, 1], [0, 1, 2]]  # non-identity action by the identity
        pair = ActionPair(cyclic(3), cyclic(2), act_h_on_g, [[0, 1]] * 3, unchecked=True)
        violations = validate_actions(pair)
        assert any("identity actor" in v.axiom for v in violations)

    def test_non_automorphism_detected(self):
        # x -> x+1 fixes nothing and is not an automorphism of C3
        act_h_on_g = [[0, 1, 2], [1, 2, 0]]
        pair = ActionPair(cyclic(3), cyclic(2), act_h_on_g, [[0, 1]] * 3, unchecked=True)
        violations = validate_actions(pair)
        assert violations
        # checked constructor refuses the same data
        with pytest.raises(ValueError, match="invalid actions"):
            ActionPair(cyclic(3), cyclic(2), act_h_on_g, [[0, 1]] * 3)

    def test_action_shape_checked(self):
        with pytest.raises(ValueError, match="action table"):
            ActionPair(cyclic(3), cyclic(2), [[0, 1, 2]], [[0, 1]] * 3, unchecked=True)


class TestCompatibility:
    def test_trivial_pair_compatible(self):
        assert check_compatibility(trivial_actions(sym(3), quaternion8())) is None

    def test_conjugation_setup_compatible(self):
        assert check_compatibility(nu_setup(sym(3))) is None

    def test_frozen_incompatible_witness(self):
        pair = ActionPair(
            klein4(),
            klein4(),
            INCOMPATIBLE_V4["act_h_on_g"],
            INCOMPATIBLE_V4["act_g_on_h"],
            unchecked=True,
        )
        witness = check_compatibility(pair)
        assert witness is not None
        assert witness.family == INCOMPATIBLE_V4["family"]
        assert witness.triple == INCOMPATIBLE_V4["triple"]

    def test_witness_triple_really_violates(self):
        pair = ActionPair(
            klein4(),
            klein4(),
            INCOMPATIBLE_V4["act_h_on_g"],
            INCOMPATIBLE_V4["act_g_on_h"],
            unchecked=True,
        )
        g, h, g1 = INCOMPATIBLE_V4["triple"]
        table = pair.g_table
        lhs = pair.g_under(g, pair.h_under(h, g1))
        rhs = table.conj(pair.g_under(table.conj(g, table.inverse(g1)), h), g1)
        assert lhs != rhs

    def test_checked_constructor_rejects_incompatible(self):
        with pytest.raises(ValueError, match="not compatible"):
            ActionPair(
                klein4(),
                klein4(),
                INCOMPATIBLE_V4["act_h_on_g"],
                INCOMPATIBLE_V4["act_g_on_h"],
            )


class TestDerivative:
    def test_trivial_actions_trivial_derivative(self):
        data = derivative(trivial_actions(sym(3), cyclic(4)), "g-under-h")
        assert data.m == 1
        assert data.element_set == {0}
        assert data.subgroup == {0}

    def test_abelian_conjugation_trivial(self):
        data = derivative(nu_setup(cyclic(6)), "g-under-h")
        assert data.m == 1

    def test_nu_s3_matches_derived_subgroup(self):
        pair = nu_setup(sym(3))
        for side in ("g-under-h", "h-under-g"):
            data = derivative(pair, side)
            assert data.subgroup == derived_subgroup(sym(3))
            assert len(data.subgroup) == 3

    def test_identity_always_in_derivative_set(self):
        for pair in (nu_setup(dihedral(8)), trivial_actions(cyclic(3), cyclic(3))):
            assert 0 in derivative(pair, "g-under-h").element_set

    @pytest.mark.parametrize("table", [cyclic(4), klein4(), sym(3), dihedral(8), quaternion8()],
                             ids=lambda t: t.name)
    def test_nu_setups_give_derived_subgroup(self, table):
        data = derivative(nu_setup(table), "g-under-h")
        assert data.subgroup == derived_subgroup(table)
        assert data.m <= table.size


class TestNormality:
    def test_trivial_vacuous(self):
        assert normality_check(trivial_actions(cyclic(2), cyclic(2)), "g-under-h")

    @pytest.mark.parametrize("table", [sym(3), quaternion8(), dihedral(8)], ids=lambda t: t.name)
    def test_nu_setups(self, table):
        pair = nu_setup(table)
        assert normality_check(pair, "g-under-h")
        assert normality_check(pair, "h-under-g")

    def test_conjugation_pair(self):
        from etanu.catalog import builtin_pair

        pair = builtin_pair("normal_pair(sym(3); derived, all)")
        assert normality_check(pair, "g-under-h")
        assert normality_check(pair, "h-under-g")


class TestAutomorphisms:
    def test_counts(self):
        assert len(automorphisms(cyclic(4))) == 2
        assert len(automorphisms(klein4())) == 6
        assert len(automorphisms(sym(3))) == 6
        assert len(automorphisms(quaternion8())) == 24

    def test_generating_sequence_generates(self):
        for table in (cyclic(6), quaternion8(), sym(3)):
            gens = minimal_generating_sequence(table)
            from etanu.tables import closure

            assert len(closure(table, gens)) == table.size


class TestSearch:
    def test_c2_census(self):
        search = enumerate_compatible_actions(cyclic(2), cyclic(2))
        assert search.census.examined == 1
        assert search.census.compatible == 1
        assert search.census.incompatible == 0

    def test_c3_contains_trivial_pair(self):
        search = enumerate_compatible_actions(cyclic(3), cyclic(3))
        assert search.census.compatible >= 1
        assert any(p.is_trivial_pair() for p in search.pairs)

    def test_klein_census_fixture(self):
        search = enumerate_compatible_actions(klein4(), klein4())
        assert search.census.examined == 100
        assert search.census.compatible == 28
        assert search.census.incompatible == 72
        assert search.incompatible_samples

    def test_every_compatible_pair_unique(self):
        search = enumerate_compatible_actions(klein4(), cyclic(4))
        keys = {
            (p.act_h_on_g.tobytes(), p.act_g_on_h.tobytes()) for p in search.pairs
        }
        assert len(keys) == len(search.pairs)

    def test_m_bounded_by_group_order(self):
        search = enumerate_compatible_actions(klein4(), klein4())
        for pair in search.pairs:
            assert derivative(pair, "g-under-h").m <= 4

    def test_budget_exceeded(self):
        with pytest.raises(SearchBudgetExceeded):
            enumerate_compatible_actions(klein4(), klein4(), budget=10)


class TestPairFiles:
    def test_roundtrip(self):
        pair = nu_setup(sym(3))
        data = json.loads(json.dumps(pair.to_json_dict()))
        back = pair_from_json_dict(data, builtin_group)
        assert np.array_equal(back.act_h_on_g, pair.act_h_on_g)
        assert back.g_table == pair.g_table

    def test_builtin_names_resolved(self):
        data = {
            "G": "cyclic(2)",
            "H": "cyclic(3)",
            "act_h_on_g": [[0, 1]] * 3,
            "act_g_on_h": [[0, 1, 2]] * 2,
            "unchecked": False,
        }
        pair = pair_from_json_dict(data, builtin_group)
        assert pair.g_table.size == 2 and pair.h_table.size == 3

    def test_unchecked_flag_allows_incompatible_data(self):
        data = {
            "G": "klein4",
            "H": "klein4",
            "act_h_on_g": INCOMPATIBLE_V4["act_h_on_g"],
            "act_g_on_h": INCOMPATIBLE_V4["act_g_on_h"],
            "unchecked": True,
        }
        pair = pair_from_json_dict(data, builtin_group)
        assert check_compatibility(pair) is not None


class TestSetups:
    def test_is_nu_setup(self):
        assert nu_setup(sym(3)).is_nu_setup()
        assert not trivial_actions(sym(3), sym(3)).is_nu_setup()
        # for abelian groups conjugation is trivial, so the setups coincide
        assert trivial_actions(cyclic(4), cyclic(4)).is_nu_setup()

    def test_is_trivial_pair(self):
        assert trivial_actions(sym(3), cyclic(2)).is_trivial_pair()
        assert not nu_setup(sym(3)).is_trivial_pair()
