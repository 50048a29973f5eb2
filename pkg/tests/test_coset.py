import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etanu import _felsch_py
from etanu.catalog import cyclic, dihedral, elem_abelian, klein4, quaternion8, sym
from etanu.coset import (
    _conjugate_buckets,
    coset_enumerate,
    default_max_cosets,
    perms_from_table,
)
from etanu.errors import EnumerationLimitExceeded
from etanu.perms import table_from_perm_group
from etanu.tables import fingerprint
from etanu.words import Presentation, Word, cayley_presentation, parse_presentation

try:
    from etanu import _felsch_c
except ImportError:  # compiled kernel genuinely absent
    _felsch_c = None


S3_PRESENTATION = "gens: a b; rels: a^2, b^2, (a*b)^3"
Q8_PRESENTATION = "gens: a b; rels: a^4, a^2*b^-2, b^-1*a*b*a"


class TestEnumeration:
    def test_cyclic_four(self):
        ct = coset_enumerate(parse_presentation("gens: a; rels: a^4"))
        assert ct.is_complete() and ct.rows == 4

    def test_s3_fingerprint_matches_builtin(self):
        ct = coset_enumerate(parse_presentation(S3_PRESENTATION))
        assert ct.rows == 6
        group, _ = perms_from_table(ct)
        table, _ = table_from_perm_group(group, limit=10)
        assert fingerprint(table) == fingerprint(sym(3))

    def test_quaternion_fingerprint_matches_builtin(self):
        ct = coset_enumerate(parse_presentation(Q8_PRESENTATION))
        assert ct.rows == 8
        group, _ = perms_from_table(ct)
        table, _ = table_from_perm_group(group, limit=10)
        assert fingerprint(table) == fingerprint(quaternion8())

    def test_subgroup_index(self):
        p = parse_presentation(S3_PRESENTATION)
        ct = coset_enumerate(p, [Word(((0, 1),))])
        assert ct.rows == 3

    def test_subgroup_words_validated(self):
        p = parse_presentation("gens: a; rels: a^4")
        with pytest.raises(ValueError):
            coset_enumerate(p, [Word(((3, 1),))])

    def test_no_generators(self):
        ct = coset_enumerate(Presentation(0, ()))
        assert ct.rows == 1 and ct.is_complete()

    def test_exceeded_limit_discards_table(self):
        infinite = parse_presentation("gens: a b; rels: a^2")
        ct = coset_enumerate(infinite, max_cosets=64)
        assert ct.status == "exceeded-limit"
        assert ct.entries is None
        assert ct.max_cosets == 64
        assert ct.high_water > 0
        with pytest.raises(EnumerationLimitExceeded):
            ct.require_complete()

    def test_deterministic_across_runs(self):
        p = parse_presentation(Q8_PRESENTATION)
        first = coset_enumerate(p)
        second = coset_enumerate(p)
        assert np.array_equal(first.entries, second.entries)

    def test_standardized_first_appearance_order(self):
        ct = coset_enumerate(parse_presentation(S3_PRESENTATION))
        entries = ct.entries
        seen = {0}
        expected_next = 1
        for row in range(ct.rows):
            for col in range(entries.shape[1]):
                target = int(entries[row, col])
                if target not in seen:
                    assert target == expected_next
                    seen.add(target)
                    expected_next += 1

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("ETA_MAX_COSETS", "123")
        assert default_max_cosets() == 123
        monkeypatch.setenv("ETA_MAX_COSETS", "0")
        with pytest.raises(ValueError):
            default_max_cosets()


class TestCayleySoundness:
    @pytest.mark.parametrize(
        "table",
        [cyclic(1), cyclic(7), klein4(), sym(3), sym(4), dihedral(8), dihedral(12),
         quaternion8(), elem_abelian(2, 3), elem_abelian(3, 2)],
        ids=lambda t: t.name,
    )
    def test_cayley_presentation_enumerates_to_order(self, table):
        ct = coset_enumerate(cayley_presentation(table))
        assert ct.rows == table.size
        group, _ = perms_from_table(ct)
        assert group.order() == table.size


class TestPermsFromTable:
    def test_cyclic_four_gives_four_cycle(self):
        ct = coset_enumerate(parse_presentation("gens: a; rels: a^4"))
        _, perms = perms_from_table(ct)
        assert perms[0].order() == 4

    def test_collapsed_table_gives_identity_perms(self):
        ct = coset_enumerate(parse_presentation("gens: a b; rels: a, b"))
        assert ct.rows == 1
        _, perms = perms_from_table(ct)
        assert all(p.is_identity() for p in perms)

    def test_incomplete_table_rejected(self):
        ct = coset_enumerate(parse_presentation("gens: a b; rels: a^2"), max_cosets=16)
        with pytest.raises(EnumerationLimitExceeded):
            perms_from_table(ct)

    def test_relators_hold_at_every_coset(self):
        p = parse_presentation(Q8_PRESENTATION)
        ct = coset_enumerate(p)
        _, perms = perms_from_table(ct)
        for relator in p.relators:
            acc = np.arange(ct.rows)
            for gen, exp in relator.letters:
                image = perms[gen].images if exp == 1 else perms[gen].inverse().images
                acc = image[acc]
            assert np.array_equal(acc, np.arange(ct.rows))


@pytest.mark.skipif(_felsch_c is None, reason="compiled kernel unavailable")
class TestKernelTwins:
    """The compiled and pure kernels run the same algorithm and must agree
    byte for byte on the raw table, parent array, and high-water mark."""

    @staticmethod
    def run_both(presentation, subgroup=(), max_rows=600):
        ncols = 2 * presentation.generator_count
        words, buckets = _conjugate_buckets(presentation.relators, ncols)
        sub = [tuple(2 * g if e == 1 else 2 * g + 1 for g, e in w.letters) for w in subgroup]
        out_c = _felsch_c.run(ncols, words, buckets, sub, max_rows)
        out_py = _felsch_py.run(ncols, words, buckets, sub, max_rows)
        return out_c, out_py

    def compare(self, out_c, out_py):
        assert out_c[0] == out_py[0]
        assert out_c[3] == out_py[3]
        if out_c[0] == "complete":
            assert np.array_equal(
                np.asarray(out_c[1]), np.asarray(out_py[1], dtype=np.int32)
            )
            assert np.array_equal(
                np.asarray(out_c[2]), np.asarray(out_py[2], dtype=np.int32)
            )

    def test_fixed_presentations(self):
        for text in (
            "gens: a; rels: a^6, a^4",
            S3_PRESENTATION,
            Q8_PRESENTATION,
            "gens: a b; rels: a^5, b^4, b^-1*a*b*a^-2",
            "gens: a b; rels: a^2, b^3, (a*b)^5",
        ):
            out_c, out_py = self.run_both(parse_presentation(text))
            self.compare(out_c, out_py)

    relator_words = st.lists(
        st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), min_size=1, max_size=6
    )

    @given(st.lists(relator_words, min_size=1, max_size=4))
    @settings(max_examples=40, deadline=None)
    def test_random_presentations(self, raw_relators):
        relators = [Word(tuple(r)) for r in raw_relators]
        # torsion relators keep most quotients small; the row cap bounds the rest
        relators += [Word(((0, 1),) * 4), Word(((1, 1),) * 4)]
        presentation = Presentation(2, tuple(relators))
        out_c, out_py = self.run_both(presentation, max_rows=600)
        self.compare(out_c, out_py)

    def test_subgroup_enumeration_agrees(self):
        p = parse_presentation(S3_PRESENTATION)
        out_c, out_py = self.run_both(p, subgroup=[Word(((1, 1),))])
        self.compare(out_c, out_py)
