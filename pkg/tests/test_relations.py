"""Revealed-preference relation and consistency-test behavior."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revpref import (
    Bundle,
    CycleClass,
    CycleWitness,
    EfficiencyVector,
    breakpoints,
    check_e_garp,
    check_garp,
    check_sarp,
    classify_cycles,
    direct_relations,
    is_e_acyclic,
    reach_with_virtual,
    transitive_closure,
)
from conftest import approaching, dataset, random_dataset
from oracles import classify_by_cycle_enumeration, closure_fixpoint


class TestDirectRelations:
    def test_cusp_relations_at_full_efficiency(self, dbar):
        rel = direct_relations(dbar, 1)
        assert all(all(row) for row in rel.weak)
        assert rel.strict[0][1] and not rel.strict[1][0]
        assert not rel.strict[0][0] and not rel.strict[1][1]

    def test_zero_efficiency_kills_strict(self, dbar):
        rel = direct_relations(dbar, 0)
        assert not any(any(row) for row in rel.strict)

    def test_vector_efficiency_exact_tie(self, dbar):
        rel = direct_relations(dbar, EfficiencyVector((Fraction(3, 4), Fraction(1))))
        assert rel.weak[0][1] and not rel.strict[0][1]

    def test_strict_contained_in_weak_random(self):
        rng = random.Random(5)
        for _ in range(50):
            data = random_dataset(rng)
            e = Fraction(rng.randint(0, 4), 4)
            rel = direct_relations(data, e)
            for wrow, srow in zip(rel.weak, rel.strict):
                assert all(w or not s for w, s in zip(wrow, srow))

    def test_monotone_in_efficiency(self):
        rng = random.Random(6)
        for _ in range(50):
            data = random_dataset(rng)
            a = Fraction(rng.randint(0, 8), 8)
            b = Fraction(rng.randint(0, 8), 8)
            low_rel = direct_relations(data, min(a, b))
            high_rel = direct_relations(data, max(a, b))
            for t in range(data.T):
                for s in range(data.T):
                    assert not low_rel.weak[t][s] or high_rel.weak[t][s]
                    assert not low_rel.strict[t][s] or high_rel.strict[t][s]


class TestClosure:
    def test_identity_is_fixed(self):
        identity = [[i == j for j in range(4)] for i in range(4)]
        assert transitive_closure(identity) == tuple(tuple(r) for r in identity)

    def test_chain_adds_skip_link(self):
        chain = [[False, True, False], [False, False, True], [False] * 3]
        closed = transitive_closure(chain)
        assert closed[0][2]

    def test_matches_matrix_power_fixpoint(self):
        rng = random.Random(7)
        for _ in range(60):
            n = 8
            matrix = [[rng.random() < 0.25 for _ in range(n)] for _ in range(n)]
            assert transitive_closure(matrix) == tuple(
                tuple(row) for row in closure_fixpoint(matrix)
            )

    @given(st.integers(2, 6), st.data())
    @settings(max_examples=50, deadline=None)
    def test_idempotent_monotone_containing(self, n, data):
        matrix = [
            [data.draw(st.booleans()) for _ in range(n)] for _ in range(n)
        ]
        closed = transitive_closure(matrix)
        assert transitive_closure(closed) == closed
        for i in range(n):
            for j in range(n):
                assert not matrix[i][j] or closed[i][j]


class TestGarp:
    def test_sequence_members_satisfy(self):
        for n in (1, 2, 5, 40):
            assert check_garp(approaching(n)).satisfied

    def test_cusp_violates_with_verified_witness(self, dbar):
        result = check_garp(dbar)
        assert not result.satisfied
        witness = result.witness
        assert witness is not None
        assert set(witness.nodes) == {0, 1}
        assert sorted(witness.strict_flags) == [False, True]
        witness.verify(direct_relations(dbar, 1))

    def test_single_observation_satisfies(self):
        assert check_garp(dataset([(1, 1)], [(1, 2)])).satisfied

    def test_witnesses_verify_on_random_violators(self):
        rng = random.Random(8)
        found = 0
        while found < 40:
            data = random_dataset(rng)
            result = check_garp(data)
            if not result.satisfied:
                found += 1
                result.witness.verify(direct_relations(data, 1))

    def test_garp_equals_one_garp(self):
        rng = random.Random(9)
        for _ in range(80):
            data = random_dataset(rng)
            assert check_garp(data).satisfied == check_e_garp(data, 1)


class TestSarp:
    def test_sequence_members_satisfy(self, d1):
        assert check_sarp(d1)

    def test_garp_failure_implies_sarp_failure(self, dbar):
        assert not check_sarp(dbar)

    def test_duplicate_observation_allowed(self):
        data = dataset([(1, 2), (1, 2)], [(3, 1), (3, 1)])
        assert check_sarp(data)

    def test_sarp_implies_garp(self):
        rng = random.Random(10)
        for _ in range(80):
            data = random_dataset(rng)
            if check_sarp(data):
                assert check_garp(data).satisfied


class TestEGarp:
    def test_cusp_passes_below_one(self, dbar):
        assert check_e_garp(dbar, Fraction(99, 100))
        assert not check_e_garp(dbar, 1)

    def test_vector_level_drops_back_link(self, dbar):
        assert check_e_garp(dbar, EfficiencyVector((1, Fraction(99, 100))))

    def test_monotone_in_scalar_level(self):
        rng = random.Random(12)
        for _ in range(40):
            data = random_dataset(rng)
            levels = sorted(Fraction(rng.randint(0, 8), 8) for _ in range(3))
            results = [check_e_garp(data, e) for e in levels]
            # Once it fails at a lower level it must fail at higher ones.
            for lower, higher in zip(results[1:], results[:-1]):
                assert higher or not lower


class TestClassification:
    def test_worked_examples(self, dbar, dstar, d1):
        assert classify_cycles(dbar) is CycleClass.WEAK_ONLY
        assert classify_cycles(dstar) is CycleClass.HAS_STRONG
        assert classify_cycles(d1) is CycleClass.NONE

    def test_agrees_with_cycle_enumeration(self):
        rng = random.Random(13)
        for _ in range(500):
            data = random_dataset(rng, max_T=7)
            assert classify_cycles(data).value == classify_by_cycle_enumeration(data)

    def test_none_iff_garp(self):
        rng = random.Random(14)
        for _ in range(100):
            data = random_dataset(rng)
            assert (classify_cycles(data) is CycleClass.NONE) == check_garp(data).satisfied


class TestBreakpoints:
    def test_worked_grids(self, dbar, dstar):
        assert breakpoints(dbar).values == (Fraction(3, 4), Fraction(1))
        assert breakpoints(dstar).values == (
            Fraction(3, 4),
            Fraction(7, 8),
            Fraction(1),
        )

    def test_one_always_present_and_size_bounded(self):
        rng = random.Random(15)
        for _ in range(60):
            data = random_dataset(rng)
            grid = breakpoints(data).values
            assert Fraction(1) in grid
            assert len(grid) <= data.T**2


class TestAcyclicity:
    def test_worked_examples(self, dbar, dstar):
        assert is_e_acyclic(dbar, 1)
        assert not is_e_acyclic(dstar, 1)
        assert is_e_acyclic(dstar, Fraction(7, 8))

    def test_zero_always_acyclic(self):
        rng = random.Random(16)
        for _ in range(40):
            assert is_e_acyclic(random_dataset(rng), 0)


class TestReachability:
    def test_strict_edge_reaches(self, dbar):
        q, qp = Bundle((4, 4)), Bundle((2, 5))
        assert reach_with_virtual(dbar, 1, strict=True, source=q, target=qp)

    def test_tie_blocks_strict_mode(self, dbar):
        q = Bundle((4, 4))
        qt = Bundle((Fraction(5, 2), 7))
        assert not reach_with_virtual(dbar, 1, strict=True, source=q, target=qt)
        assert reach_with_virtual(dbar, 1, strict=False, source=q, target=qt)

    def test_dominance_always_reaches(self):
        rng = random.Random(17)
        for _ in range(40):
            data = random_dataset(rng)
            a = Bundle(tuple(Fraction(rng.randint(1, 9)) for _ in range(data.L)))
            b = Bundle(tuple(q - Fraction(rng.randint(0, q.numerator), 2 * q.denominator) for q in a.quantities))
            for strict in (False, True):
                assert reach_with_virtual(data, 1, strict=strict, source=a, target=b)

    def test_dimension_mismatch_rejected(self, dbar):
        with pytest.raises(ValueError):
            reach_with_virtual(dbar, 1, strict=False, source=Bundle((1, 2, 3)), target=Bundle((1, 1)))


class TestWitnessConstruction:
    def test_from_nodes_derives_flags(self, dbar):
        witness = CycleWitness.from_nodes(dbar, (0, 1))
        assert witness.strict_flags == (True, False)

    def test_from_nodes_rejects_non_cycle(self, d1):
        with pytest.raises(ValueError):
            CycleWitness.from_nodes(d1, (1, 0))
