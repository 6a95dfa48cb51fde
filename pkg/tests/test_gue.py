import numpy as np
import pytest

from rmt_fidelity import (fidelity_gue, fidelity_gue_oracle,
                          fidelity_gue_small_eps, gauss_legendre)

# High-precision reference values: the defining single integral evaluated
# with mpmath at 40 digits agrees with the closed form on all of these.
F_2_1 = 0.29699707514508096    # exp(-1) * (sinhc(1) - sinhc'(1))
F_2_2 = 0.024290911529573348   # exp(-4) * (sinhc(2) - sinhc'(2)/2)


class TestClosedForm:
    def test_normalisation_at_zero_time(self):
        assert fidelity_gue(7.3, 0.0) == 1.0

    def test_zero_perturbation(self):
        assert fidelity_gue(0.0, 2.4) == 1.0

    def test_reference_point_at_heisenberg_time(self):
        assert fidelity_gue(2.0, 1.0) == pytest.approx(F_2_1, rel=1e-13)

    def test_reference_point_beyond_heisenberg_time(self):
        assert fidelity_gue(2.0, 2.0) == pytest.approx(F_2_2, rel=1e-13)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            fidelity_gue(-1.0, 0.5)
        with pytest.raises(ValueError):
            fidelity_gue(1.0, -0.5)

    def test_range(self):
        for eps in (0.2, 1.0, 4.0, 10.0, 40.0):
            for tau in np.linspace(0.0, 3.0, 61):
                value = fidelity_gue(eps, tau)
                assert 0.0 < value <= 1.0


class TestOracleEquivalence:
    def test_zero_perturbation_integrates_to_one(self):
        assert fidelity_gue_oracle(0.0, 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_matches_closed_form_at_reference(self):
        assert fidelity_gue_oracle(2.0, 1.0) == pytest.approx(F_2_1, rel=1e-12)

    def test_agreement_grid(self):
        taus = np.arange(1, 301) / 100.0
        for eps in (0.2, 1.0, 2.0, 4.0, 10.0):
            for tau in taus:
                assert abs(fidelity_gue(eps, tau)
                           - fidelity_gue_oracle(eps, tau)) <= 1e-10

    def test_rejects_zero_time(self):
        with pytest.raises(ValueError):
            fidelity_gue_oracle(1.0, 0.0)

    def test_custom_rule(self):
        rule = gauss_legendre(48, panels=2)
        assert fidelity_gue_oracle(4.0, 0.7, rule) == pytest.approx(
            fidelity_gue(4.0, 0.7), abs=1e-12)


class TestHeisenbergTimeSmoothness:
    @pytest.mark.parametrize("eps", [0.2, 1.0, 4.0, 10.0])
    def test_value_continuity(self, eps):
        assert abs(fidelity_gue(eps, 1.0 - 1e-9)
                   - fidelity_gue(eps, 1.0 + 1e-9)) <= 1e-8

    @pytest.mark.parametrize("eps", [0.2, 1.0, 4.0, 10.0])
    def test_first_derivative_continuity(self, eps):
        h = 1e-5
        left = (fidelity_gue(eps, 1.0) - fidelity_gue(eps, 1.0 - h)) / h
        right = (fidelity_gue(eps, 1.0 + h) - fidelity_gue(eps, 1.0)) / h
        assert abs(left - right) <= 1e-4 * (1.0 + abs(left))

    def test_one_sided_second_differences_differ(self):
        # the curvature is smooth but the third derivative jumps, so
        # one-sided second differences at finite h disagree measurably
        eps, h = 4.0, 1e-3
        f = fidelity_gue
        left = (f(eps, 1.0) - 2.0 * f(eps, 1.0 - h) + f(eps, 1.0 - 2.0 * h)) / h ** 2
        right = (f(eps, 1.0 + 2.0 * h) - 2.0 * f(eps, 1.0 + h) + f(eps, 1.0)) / h ** 2
        assert abs(left - right) > 1e-4


class TestSmallEpsilonLimit:
    @pytest.mark.parametrize("eps,tau,expected", [
        (0.01, 1.0, 1.0 - 0.005 * (4.0 / 3.0)),
        (0.01, 2.0, 1.0 - 0.005 * (1.0 / 3.0 + 4.0)),
        (0.0, 1.7, 1.0),
    ])
    def test_values(self, eps, tau, expected):
        assert fidelity_gue_small_eps(eps, tau) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("eps", [1e-2, 1e-3])
    def test_first_order_error_envelope(self, eps):
        # the quadratic-in-eps remainder peaks at tau = 3 where its
        # coefficient is 11.25; 12 eps^2 bounds it on the whole window
        for tau in np.linspace(0.0, 3.0, 121):
            assert abs(fidelity_gue(eps, tau)
                       - fidelity_gue_small_eps(eps, tau)) <= 12.0 * eps ** 2


class TestShape:
    @pytest.mark.parametrize("eps", [0.2, 0.5, 1.0])
    def test_monotone_decay_before_heisenberg_time(self, eps):
        taus = np.linspace(0.0, 1.0, 201)
        values = np.array([fidelity_gue(eps, t) for t in taus])
        assert np.all(np.diff(values) <= 1e-15)

    def test_no_interior_maximum_at_eps_ten(self):
        # at eps = 10 the exact curve is still strictly decreasing through
        # the Heisenberg time; the revival forms only for eps >~ 18.3
        taus = np.linspace(0.6, 1.2, 121)
        values = np.array([fidelity_gue(10.0, t) for t in taus])
        assert np.all(np.diff(values) < 0.0)

    def test_partial_revival_at_strong_perturbation(self):
        # eps = 40: f rises from tau = 0.8 to a genuine local maximum near
        # the Heisenberg time (mpmath: f(0.8) = 4.180e-4, max = 1.266e-3
        # at tau ~ 0.99)
        taus = np.linspace(0.8, 1.2, 161)
        values = np.array([fidelity_gue(40.0, t) for t in taus])
        k = int(np.argmax(values))
        assert 0.8 < taus[k] < 1.1
        assert values[k] > fidelity_gue(40.0, 0.8)
        assert values[k] == pytest.approx(1.2661e-3, rel=1e-3)
        # interior maximum: strictly higher than both window edges
        assert values[k] > values[0] and values[k] > values[-1]
