import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rmt_fidelity import (EnsembleSpec, FidelityCurve, PerturbationSpec,
                          TimeGrid, semicircle_density,
                          variance_matrix_element, variance_scale)

PI2 = math.pi ** 2


class TestEnsembleSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            EnsembleSpec(beta=3, dim=10)
        with pytest.raises(ValueError):
            EnsembleSpec(beta=1, dim=1)
        EnsembleSpec(beta=4, dim=2)

    @pytest.mark.parametrize("beta,dim,expected", [
        (2, 100, 200.0 / (2.0 * PI2)),
        (1, 2, 4.0 / PI2),
        (4, 500, 250.0 / PI2),
    ])
    def test_variance_scale_values(self, beta, dim, expected):
        assert variance_scale(EnsembleSpec(beta, dim)) == pytest.approx(
            expected, rel=1e-15)

    @given(beta=st.sampled_from([1, 2, 4]), dim=st.integers(2, 10 ** 6))
    def test_variance_scale_doubles_with_dim(self, beta, dim):
        one = EnsembleSpec(beta, dim).variance_scale()
        two = EnsembleSpec(beta, 2 * dim).variance_scale()
        assert two == pytest.approx(2.0 * one, rel=1e-12)


class TestVarianceMatrixElement:
    @pytest.mark.parametrize("beta,dim,diagonal,expected", [
        (1, 100, True, 200.0 / PI2),
        (2, 100, False, 100.0 / PI2),
        (4, 100, True, 50.0 / PI2),
    ])
    def test_values(self, beta, dim, diagonal, expected):
        spec = EnsembleSpec(beta, dim)
        assert variance_matrix_element(spec, diagonal) == pytest.approx(
            expected, rel=1e-15)

    @given(beta=st.sampled_from([1, 2, 4]), dim=st.integers(2, 10 ** 6))
    def test_offdiag_beta_independent_and_ratio(self, beta, dim):
        spec = EnsembleSpec(beta, dim)
        off = variance_matrix_element(spec, diagonal=False)
        assert off == pytest.approx(dim / PI2, rel=1e-14)
        ratio = variance_matrix_element(spec, diagonal=True) / off
        assert ratio == pytest.approx(2.0 / beta, rel=1e-14)


class TestSemicircle:
    def test_centre_and_edge(self):
        assert semicircle_density(17, 0.0) == 1.0
        assert semicircle_density(100, 200.0 / math.pi) == pytest.approx(0.0, abs=1e-12)
        assert semicircle_density(100, 100.0 / math.pi) == pytest.approx(
            math.sqrt(3.0) / 2.0, rel=1e-14)

    def test_out_of_support(self):
        with pytest.raises(ValueError):
            semicircle_density(100, 201.0 / math.pi)

    @given(frac=st.floats(-1.0, 1.0, allow_nan=False))
    def test_even_and_bounded(self, frac):
        dim = 50
        e = frac * 2.0 * dim / math.pi
        left = semicircle_density(dim, -e)
        right = semicircle_density(dim, e)
        assert left == right
        assert 0.0 <= right <= 1.0


class TestPerturbationSpec:
    def test_negative_epsilon_rejected(self):
        with pytest.raises(ValueError):
            PerturbationSpec(-0.5)

    def test_mixing_angle(self):
        spec = PerturbationSpec(epsilon=2.0)
        phi = spec.mixing_angle(dim=100)
        assert math.tan(phi) == pytest.approx(math.sqrt(2.0 / 400.0), rel=1e-14)

    @given(eps=st.floats(0.0, 100.0, allow_nan=False))
    def test_large_dim_limit(self, eps):
        # 4 * dim * phi^2 -> epsilon as dim grows
        dim = 10 ** 7
        phi = PerturbationSpec(eps).mixing_angle(dim)
        assert 4.0 * dim * phi * phi == pytest.approx(eps, rel=1e-5, abs=1e-12)


class TestTimeGrid:
    def test_valid(self):
        grid = TimeGrid([0.0, 0.5, 1.0])
        assert len(grid) == 3
        assert not grid.taus.flags.writeable

    @pytest.mark.parametrize("taus", [[-0.1, 0.5], [0.0, 0.5, 0.5], [1.0, 0.5], []])
    def test_invalid(self, taus):
        with pytest.raises(ValueError):
            TimeGrid(taus)


class TestFidelityCurve:
    def test_basic(self):
        curve = FidelityCurve(taus=[0.0, 1.0], values=[1.0, 0.5])
        assert len(curve) == 2
        assert curve.stderr is None

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            FidelityCurve(taus=[0.0, 1.0], values=[1.0])
        with pytest.raises(ValueError):
            FidelityCurve(taus=[0.0, 1.0], values=[1.0, 0.5], stderr=[0.1])

    def test_range_enforced(self):
        with pytest.raises(ValueError):
            FidelityCurve(taus=[0.5, 1.0], values=[1.1, 0.5])
        # but noise heads above 1 within 3 sigma
        FidelityCurve(taus=[0.5, 1.0], values=[1.02, 0.5], stderr=[0.01, 0.01])

    def test_normalisation_at_zero(self):
        with pytest.raises(ValueError):
            FidelityCurve(taus=[0.0, 1.0], values=[0.9, 0.5])
        FidelityCurve(taus=[0.0, 1.0], values=[1.0 + 1e-12, 0.5])
