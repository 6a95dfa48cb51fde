import math

import numpy as np
import pytest

from rmt_fidelity import (b2, c_of_tau, fidelity_gue, fidelity_gue_small_eps,
                          fidelity_lr, gauss_legendre)

# mpmath oracle values for the numerically integrated cases (the tau = 1
# entries come out rational: 11/9 and 53/144).
C_BETA1 = {0.25: 0.16088773763607753, 0.5: 0.40845670949110655,
           0.75: 0.75887309452305697, 1.0: 1.2222222222222222,
           1.5: 2.5072687604155692, 2.0: 4.2816632215216577,
           3.0: 9.3157470820551111}
C_BETA4 = {0.25: 0.11076535234500494, 0.5: 0.19947431893819302,
           0.75: 0.27848257680489505, 1.0: 0.36805555555555556,
           1.5: 0.67370849095791467, 2.0: 1.1111111111111111,
           3.0: 2.3611111111111111}


class TestB2:
    def test_at_zero(self):
        for beta in (1, 2, 4):
            assert b2(beta, 0.0) == pytest.approx(1.0, abs=1e-14)

    def test_unitary_values(self):
        assert b2(2, 0.5) == 0.5
        assert b2(2, 2.0) == 0.0

    def test_orthogonal_values(self):
        assert b2(1, 0.5) == pytest.approx(0.5 * math.log(2.0), rel=1e-14)
        assert b2(1, 2.0) == pytest.approx(-1.0 + 2.0 * math.log(5.0 / 3.0),
                                           rel=1e-13)
        # continuous across t = 1
        assert b2(1, 1.0 - 1e-12) == pytest.approx(b2(1, 1.0 + 1e-12), abs=1e-10)

    def test_symplectic_values(self):
        assert b2(4, 0.5) == pytest.approx(0.75 + 0.125 * math.log(0.5), rel=1e-14)
        assert b2(4, 3.0) == 0.0
        # integrable log divergence approaching t = 1
        assert b2(4, 1.0 - 1e-9) < -3.0

    def test_symplectic_singular_point_rejected(self):
        with pytest.raises(ValueError):
            b2(4, 1.0)
        with pytest.raises(ValueError):
            b2(4, np.array([0.5, 1.0]))

    def test_decay_at_infinity(self):
        for beta in (1, 2, 4):
            assert abs(b2(beta, 50.0)) < 1e-4

    def test_bounded_for_beta_one_two(self):
        t = np.linspace(0.0, 5.0, 501)
        assert np.all(np.abs(b2(1, t)) <= 1.0 + 1e-12)
        assert np.all(np.abs(b2(2, t)) <= 1.0)

    def test_rejects_negative_time_and_bad_beta(self):
        with pytest.raises(ValueError):
            b2(2, -0.1)
        with pytest.raises(ValueError):
            b2(3, 0.5)


class TestCOfTau:
    def test_zero(self):
        for beta in (1, 2, 4):
            assert c_of_tau(beta, 0.0) == 0.0

    def test_unitary_closed_form(self):
        assert c_of_tau(2, 1.0) == pytest.approx(2.0 / 3.0, rel=1e-15)
        assert c_of_tau(2, 0.5) == pytest.approx(0.25 + 0.125 / 6.0, rel=1e-15)
        assert c_of_tau(2, 2.0) == pytest.approx(2.0 + 1.0 / 6.0, rel=1e-15)

    @pytest.mark.parametrize("tau,expected", sorted(C_BETA1.items()))
    def test_orthogonal_against_oracle(self, tau, expected):
        assert abs(c_of_tau(1, tau) - expected) <= 1e-8

    @pytest.mark.parametrize("tau,expected", sorted(C_BETA4.items()))
    def test_symplectic_against_oracle(self, tau, expected):
        assert abs(c_of_tau(4, tau) - expected) <= 1e-8

    def test_symplectic_panel_refinement_stable(self):
        # the log singularity at t = 1 is fully resolved: refining the
        # per-segment rule moves the result by less than 1e-8
        for tau in (1.5, 2.5):
            coarse = c_of_tau(4, tau, gauss_legendre(16, panels=2))
            fine = c_of_tau(4, tau, gauss_legendre(32, panels=8))
            assert abs(coarse - fine) <= 1e-8

    @pytest.mark.parametrize("beta", [1, 2, 4])
    def test_nonnegative_and_nondecreasing(self, beta):
        taus = np.linspace(0.0, 3.0, 61)
        values = np.array([c_of_tau(beta, t) for t in taus])
        assert np.all(values >= 0.0)
        assert np.all(np.diff(values) >= 0.0)

    @pytest.mark.parametrize("beta", [1, 2, 4])
    def test_quadratic_growth_with_constant_offset(self, beta):
        # beyond the form-factor support, C - tau^2/beta - tau/2 settles to
        # a constant minus tau * (integral of b2); the differences of the
        # residual shrink as the tail of b2 dies out
        res = [c_of_tau(beta, t) - t * t / beta for t in (2.4, 2.7, 3.0)]
        first, second = res[1] - res[0], res[2] - res[1]
        if beta in (2, 4):
            assert abs(first) <= 1e-10 and abs(second) <= 1e-10
        else:
            assert abs(second) < abs(first) < 0.02


class TestFidelityLr:
    def test_linear_value(self):
        assert fidelity_lr(2, 0.01, 1.0) == pytest.approx(
            1.0 - 0.01 * 2.0 / 3.0, rel=1e-13)

    def test_zero_perturbation(self):
        assert fidelity_lr(1, 0.0, 2.0) == 1.0
        assert fidelity_lr(1, 0.0, 2.0, exponentiated=True) == 1.0

    def test_exponentiated_value(self):
        assert fidelity_lr(2, 1.0, 1.0, exponentiated=True) == pytest.approx(
            math.exp(-2.0 / 3.0), rel=1e-14)

    def test_negative_epsilon_rejected(self):
        with pytest.raises(ValueError):
            fidelity_lr(2, -1.0, 1.0)

    @pytest.mark.parametrize("beta", [1, 2, 4])
    @pytest.mark.parametrize("eps", [0.1, 1.0, 4.0])
    def test_exponentiated_matches_linear_to_second_order(self, beta, eps):
        for tau in (0.2, 0.7, 1.3):
            ec = eps * c_of_tau(beta, tau)
            gap = abs(fidelity_lr(beta, eps, tau, True)
                      - fidelity_lr(beta, eps, tau, False))
            assert gap <= ec * ec / 2.0 + 1e-15

    def test_linear_form_identical_to_small_eps_expansion(self):
        # for the unitary ensemble 1 - eps*C(tau) and the expanded closed
        # form are the same piecewise polynomial
        for eps in (0.01, 0.5):
            for tau in (0.3, 1.0, 1.7, 2.9):
                assert fidelity_lr(2, eps, tau) == pytest.approx(
                    fidelity_gue_small_eps(eps, tau), abs=1e-12)

    @pytest.mark.parametrize("tau", [0.3, 0.8, 1.5, 3.0])
    def test_matches_exact_curve_at_weak_perturbation(self, tau):
        eps = 1e-3
        assert abs(fidelity_lr(2, eps, tau) - fidelity_gue(eps, tau)) \
            <= 12.0 * eps ** 2
