"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. Every numeric assertion is exact unless the criterion itself
states a tolerance.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from revpref import (
    Bundle,
    CycleClass,
    EfficiencyVector,
    StrongCycleError,
    afriat_estar,
    afriat_index,
    check_e_garp,
    check_garp,
    check_homothetic,
    check_oceu,
    classify_cycles,
    compensation_levels,
    compensation_regions,
    houtman_maks_index,
    money_pump,
    money_pump_cost,
    perturb_to_garp,
    robust_pref_afriat,
    robust_pref_hm,
    robust_pref_varian,
    swaps_index,
    synthesize,
    upper_contour_measure,
    varian_index,
    GeneratorSpec,
    ProbabilityVector,
)
from conftest import (
    approaching,
    dataset,
    random_dataset,
    strong_cycle_dataset,
    weak_only_dataset,
)
from oracles import (
    estar_by_bisection,
    estar_by_grid_probe,
    houtman_maks_by_subsets,
    swaps_by_enumeration,
    varian_by_enumeration,
)
from test_classes import (
    HALF,
    _rescale_prices,
    homothetic_by_cycle_enumeration,
)

DBAR = dataset([(2, 1), (1, 2)], [(4, 4), (2, 5)])
DSTAR = dataset([(2, 1), (1, 2)], [(Fraction(9, 2), 3), (2, 5)])

Q = Bundle((4, 4))
QP = Bundle((2, 5))
QT = Bundle((Fraction(5, 2), 7))


def passed(n: int, message: str) -> None:
    print(f"criterion {n:02d}: PASS — {message}")


def test_criterion_01_worked_example_suite():
    start = time.perf_counter()
    for n in range(1, 101):
        assert check_garp(approaching(n)).satisfied
    result = check_garp(DBAR)
    assert not result.satisfied
    assert classify_cycles(DBAR) is CycleClass.WEAK_ONLY
    assert afriat_index(DBAR) == 0
    assert houtman_maks_index(DBAR) == 1
    assert varian_index(DBAR) == 0
    assert swaps_index(DBAR) == 0
    assert money_pump_cost(DBAR, (0, 1)) == 3
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    passed(1, f"cusp example suite exact in {elapsed:.3f}s")


def test_criterion_02_strong_cycle_dataset():
    assert afriat_index(DSTAR) == Fraction(1, 8)
    assert varian_index(DSTAR) == Fraction(1, 16)
    assert houtman_maks_index(DSTAR) == 1
    assert swaps_index(DSTAR) == Fraction(9, 16)
    assert money_pump_cost(DSTAR, (0, 1)) == Fraction(9, 2)
    # Cross-checks against the exhaustive oracles.
    assert varian_by_enumeration(DSTAR) == Fraction(1, 16)
    assert (
        swaps_by_enumeration(DSTAR, lambda t, m: upper_contour_measure(DSTAR, t, m))
        == Fraction(9, 16)
    )
    assert houtman_maks_by_subsets(DSTAR) == 1
    passed(2, "strong-cycle values 1/8, 1/16, 1, 9/16, 9/2 exact")


def test_criterion_03_exact_critical_level_oracle():
    start = time.perf_counter()
    rng = random.Random(103)
    for _ in range(200):
        data = random_dataset(rng, max_T=8, max_L=4)
        exact = afriat_estar(data)
        assert abs(exact - estar_by_bisection(data)) <= Fraction(1, 10**9)
        assert exact == estar_by_grid_probe(data)
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    passed(3, f"200 datasets: exact level vs bisection and grid probe in {elapsed:.1f}s")


def test_criterion_04_order_search_and_measure_oracles():
    rng = random.Random(104)
    for _ in range(100):
        data = random_dataset(rng, max_T=7)
        assert varian_index(data) == varian_by_enumeration(data)
    checked = 0
    while checked < 30:
        data = random_dataset(rng, max_L=2)
        t = rng.randrange(data.T)
        members = sorted(rng.sample(range(data.T), rng.randint(1, data.T)))
        exact = upper_contour_measure(data, t, members)
        obs = data.observations[t]
        price = [float(p) for p in obs.price.prices]
        budget = float(obs.expenditure)
        area = budget * budget / (2 * price[0] * price[1])
        cones = [tuple(map(float, data.bundles[s].quantities)) for s in members]
        samples = 100_000
        hits = 0
        for _ in range(samples):
            u = rng.random() ** 0.5
            v = rng.random()
            x = u * (1 - v) * budget / price[0]
            y = u * v * budget / price[1]
            if any(x >= cx and y >= cy for cx, cy in cones):
                hits += 1
        estimate = area * hits / samples
        sigma = area * (max(hits, 1) ** 0.5) / samples
        assert abs(estimate - float(exact)) <= 3 * sigma + 1e-9
        checked += 1
    passed(4, "100 order-search agreements, 30 Monte-Carlo measure agreements")


def test_criterion_05_minimum_removal_oracle():
    rng = random.Random(105)
    for _ in range(100):
        data = random_dataset(rng, min_T=3, max_T=12, max_L=2, denominator=1)
        assert houtman_maks_index(data) == houtman_maks_by_subsets(data)
    passed(5, "100 datasets up to T=12: search equals exhaustive subset minimum")


def test_criterion_06_constructive_perturbation():
    rng = random.Random(106)
    delta = Fraction(1, 1000)
    for _ in range(50):
        data = weak_only_dataset(rng)
        moved = perturb_to_garp(data, delta)
        assert check_garp(moved).satisfied
        for before, after in zip(data.observations, moved.observations):
            assert before.price.dot(after.quantity) == before.expenditure
            assert max(
                abs(a - b)
                for a, b in zip(after.quantity.quantities, before.quantity.quantities)
            ) <= delta
    for _ in range(50):
        data = strong_cycle_dataset(rng)
        with pytest.raises(StrongCycleError):
            perturb_to_garp(data, delta)
    passed(6, "50 weak-cycle perturbations exact, 50 strong-cycle rejections")


def test_criterion_07_robust_relation_examples():
    bundles = {"q": Q, "q'": QP, "q~": QT}
    afriat_edges = set()
    hm_edges = set()
    for name_a, a in bundles.items():
        for name_b, b in bundles.items():
            if name_a == name_b:
                continue
            if robust_pref_afriat(DBAR, a, b):
                afriat_edges.add((name_a, name_b))
            if robust_pref_hm(DBAR, a, b):
                hm_edges.add((name_a, name_b))
    assert afriat_edges == {("q", "q'"), ("q~", "q'")}
    assert hm_edges == {("q~", "q'")}
    passed(7, "robust relations over {q, q', q~} match the worked figure exactly")


def test_criterion_08_robust_relation_properties():
    rng = random.Random(108)
    relations = {
        "afriat": robust_pref_afriat,
        "hm": robust_pref_hm,
        "varian": robust_pref_varian,
    }
    instances = 0
    while instances < 1000:
        data = random_dataset(rng, max_T=6)
        triple = []
        for _ in range(3):
            while True:
                values = tuple(Fraction(rng.randint(0, 12), 2) for _ in range(data.L))
                if any(values):
                    triple.append(Bundle(values))
                    break
        shrunk = Bundle(
            tuple(q * Fraction(rng.randint(0, 4), 4) for q in triple[0].quantities)
        )
        for relation in relations.values():
            flags = {}
            for i, a in enumerate(triple):
                for j, b in enumerate(triple):
                    flags[i, j] = relation(data, a, b)
            for i in range(3):
                assert flags[i, i], "reflexivity"
                for j in range(3):
                    for k in range(3):
                        if flags[i, j] and flags[j, k]:
                            assert flags[i, k], "transitivity"
            assert relation(data, triple[0], shrunk), "dominance"
        instances += 1
    passed(8, "reflexivity, transitivity, dominance on 1000 instances x 3 relations")


def test_criterion_09_compensation_levels():
    result = compensation_levels(DBAR, "afriat", 0)
    assert result.k_weak == Fraction(1, 20)
    assert result.k_strong is None
    households = 0
    for seed in range(12):
        spec = GeneratorSpec(
            T=8,
            L=2,
            utility_family="cobb-douglas",
            utility_params=(1, 2),
            efficiency_noise=(Fraction(7, 10), Fraction(1)),
            price_range=(1, 4),
            seed=seed,
        )
        household = synthesize(spec)
        for loss in ("afriat", "hm", "varian"):
            levels = compensation_levels(household, loss, 0)
            if levels.k_weak is not None and levels.k_strong is not None:
                assert levels.k_weak <= levels.k_strong
            regions = compensation_regions(household, loss, 0)
            forwards = [r.result.forward for r in regions]
            backwards = [r.result.backward for r in regions]
            assert forwards == sorted(forwards, reverse=True), "preferred region shrinks"
            assert backwards == sorted(backwards), "dispreferred region grows"
        households += 1
    passed(9, f"cusp levels exact; monotone partitions on {households} households x 3 losses")


def _find_strict_cycle(data) -> list[int] | None:
    cross = data.cross_matrix
    T = data.T
    adjacency = [
        [s for s in range(T) if s != t and cross[t][t] > cross[t][s]] for t in range(T)
    ]
    color = [0] * T
    stack: list[int] = []

    def dfs(node: int) -> list[int] | None:
        color[node] = 1
        stack.append(node)
        for child in adjacency[node]:
            if color[child] == 1:
                return stack[stack.index(child) :]
            if color[child] == 0:
                found = dfs(child)
                if found is not None:
                    return found
        color[node] = 2
        stack.pop()
        return None

    for root in range(T):
        if color[root] == 0:
            found = dfs(root)
            if found is not None:
                return found
    return None


def test_criterion_10_accuracy_properties():
    rng = random.Random(110)
    consistent = strong = violating = 0
    for _ in range(500):
        data = random_dataset(rng, max_T=6)
        cls = classify_cycles(data)
        garp = cls is CycleClass.NONE
        afriat = afriat_index(data)
        varian = varian_index(data)
        swaps = swaps_index(data)
        removals = houtman_maks_index(data)
        pump = money_pump(data)
        if garp:
            consistent += 1
            assert afriat == 0 and varian == 0 and swaps == 0 and removals == 0
            assert pump is None
        else:
            violating += 1
            assert removals > 0
            assert pump is not None and pump.cost > 0
        assert (removals > 0) == (not garp)
        if cls is CycleClass.HAS_STRONG:
            strong += 1
            assert afriat > 0 and varian > 0 and swaps > 0
            cycle = _find_strict_cycle(data)
            assert cycle is not None
            cross = data.cross_matrix
            bound = 1 - max(
                cross[t][cycle[(i + 1) % len(cycle)]] / cross[t][t]
                for i, t in enumerate(cycle)
            )
            assert afriat >= bound > 0
    assert consistent and strong and violating  # the draw covered all classes
    passed(
        10,
        f"500 datasets ({consistent} consistent, {strong} strong): accuracy bounds hold",
    )


def test_criterion_11_restricted_class_tests():
    assert not check_homothetic(DBAR)
    d1 = approaching(1)
    assert not check_homothetic(d1)
    # The certifying products, computed directly from expenditures.
    assert DBAR.cross(0, 1) / DBAR.cross(0, 0) * DBAR.cross(1, 0) / DBAR.cross(1, 1) == Fraction(3, 4)
    assert d1.cross(0, 1) / d1.cross(0, 0) * d1.cross(1, 0) / d1.cross(1, 1) == Fraction(39, 48)
    rng = random.Random(111)
    for _ in range(200):
        data = random_dataset(rng, max_T=6)
        assert check_homothetic(data) == homothetic_by_cycle_enumeration(data)
    for seed in range(10):
        spec = GeneratorSpec(
            T=8,
            L=2,
            utility_family="cobb-douglas",
            utility_params=(2, 3),
            efficiency_noise=(1, 1),
            price_range=(1, 4),
            seed=seed,
        )
        assert check_homothetic(synthesize(spec))
    assert not check_oceu(dataset([(3, 1)], [(2, 1)]), HALF)
    assert check_oceu(dataset([(3, 1)], [(1, 2)]), HALF)
    for _ in range(100):
        data = random_dataset(rng, max_T=5)
        t = rng.randrange(data.T)
        scale = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert check_homothetic(_rescale_prices(data, t, scale)) == check_homothetic(data)
    for _ in range(100):
        data = random_dataset(rng, max_T=4, max_L=2)
        t = rng.randrange(data.T)
        scale = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert check_oceu(_rescale_prices(data, t, scale), HALF) == check_oceu(data, HALF)
    passed(11, "products 3/4 and 39/48; 200 oracle agreements; 200 rescaling invariances")


def test_criterion_12_continuity_probe():
    for n in range(1, 101):
        member = approaching(n)
        assert afriat_index(member) == 0
        assert houtman_maks_index(member) == 0
    assert afriat_index(DBAR) == 0
    assert houtman_maks_index(DBAR) == 1
    passed(12, "efficiency index continuous at the cusp, removal index jumps to 1")
