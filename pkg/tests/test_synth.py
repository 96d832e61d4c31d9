"""Synthetic panel generator behavior."""

from __future__ import annotations

from fractions import Fraction

import pytest

from revpref import (
    GeneratorSpec,
    afriat_index,
    check_garp,
    parse_csv,
    serialize_csv,
    synthesize,
)


def spec(**overrides) -> GeneratorSpec:
    base = dict(
        T=10,
        L=2,
        utility_family="cobb-douglas",
        utility_params=(1, 2),
        efficiency_noise=(1, 1),
        price_range=(1, 4),
        seed=0,
    )
    base.update(overrides)
    return GeneratorSpec(**base)


class TestValidation:
    def test_zero_weights_rejected(self):
        with pytest.raises(ValueError):
            spec(utility_params=(0, 1))

    def test_ces_needs_integer_exponent(self):
        with pytest.raises(ValueError):
            spec(utility_family="ces", utility_params=(1, 2, Fraction(3, 2)))
        spec(utility_family="ces", utility_params=(1, 2, 2))

    def test_noise_bounds(self):
        with pytest.raises(ValueError):
            spec(efficiency_noise=(0, 1))
        with pytest.raises(ValueError):
            spec(efficiency_noise=(Fraction(1, 2), Fraction(11, 10)))

    def test_price_range(self):
        with pytest.raises(ValueError):
            spec(price_range=(0, 2))
        with pytest.raises(ValueError):
            spec(price_range=(3, 2))


class TestGeneration:
    def test_deterministic_in_seed(self):
        assert synthesize(spec(seed=9)) == synthesize(spec(seed=9))
        assert synthesize(spec(seed=9)) != synthesize(spec(seed=10))

    def test_noiseless_data_is_consistent(self):
        for family, params in (
            ("cobb-douglas", (1, 2)),
            ("ces", (1, 2, 2)),
            ("leontief", (2, 3)),
        ):
            for seed in range(25):
                data = synthesize(spec(utility_family=family, utility_params=params, seed=seed))
                assert check_garp(data).satisfied

    def test_shapes_and_exactness(self):
        data = synthesize(spec(T=7, L=3, utility_params=(1, 2, 3), seed=4))
        assert data.T == 7 and data.L == 3
        assert parse_csv(serialize_csv(data)) == data

    def test_noisy_panels_mostly_inconsistent(self):
        # Regression baseline for the noise model: the majority of noisy
        # panels at this size carry a positive efficiency index.
        noise = (Fraction(7, 10), Fraction(9, 10))
        positive = sum(
            1
            for seed in range(60)
            if afriat_index(synthesize(spec(T=20, efficiency_noise=noise, seed=seed))) > 0
        )
        print(f"noisy panels with positive index: {positive}/60")
        assert positive > 30
