import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncbateman import (
    DomainError,
    Regime,
    SingularityError,
    SystemParams,
    bateman_roots,
    derive,
    dirac_bracket,
    duality_report,
    gamma_renormalized,
    theta_star,
    validate,
)

from conftest import P0, P0_GAMMA1, P0_GAMMA2


def positive_params():
    return st.builds(
        lambda g, w, e, eta, th, hb: SystemParams(g, w, w * w * e, eta, th, hb),
        st.floats(0, 3),
        st.floats(0.1, 3),
        st.floats(1.01, 6),
        st.floats(1.01, 8),
        st.floats(0, 1),
        st.floats(0.2, 3),
    )


class TestValidate:
    def test_positive_regime(self):
        assert validate(P0).positive_regime

    def test_epsilon_below_omega_squared(self):
        assert not validate(P0.with_(epsilon=0.5)).positive_regime

    @pytest.mark.parametrize(
        "changes",
        [{"theta": -0.1}, {"hbar": 0.0}, {"hbar": -1.0}, {"gamma": math.nan}, {"omega": math.inf}],
    )
    def test_rejects(self, changes):
        with pytest.raises(DomainError):
            validate(P0.with_(**changes))

    def test_boundary_is_not_positive(self):
        assert not SystemParams(0.4, 1.0, 1.0, 3.0).positive_regime
        assert not SystemParams(0.4, 1.0, 2.0, 1.0).positive_regime


class TestDerive:
    def test_decoupled_example(self):
        d = derive(SystemParams(0.0, 1.0, 2.0, 3.0, 0.0, 1.0))
        assert d.mu == pytest.approx(2 * math.sqrt(2), rel=1e-15)
        assert d.omega1_sq == pytest.approx(0.75, rel=1e-15)
        assert d.omega2_sq == pytest.approx(0.5, rel=1e-15)
        assert d.gamma1 == 0 and d.gamma2 == 0
        assert d.nu1_sq == pytest.approx(0.75) and d.nu2_sq == pytest.approx(0.5)

    def test_p0_couplings_match_high_precision(self):
        d = derive(P0)
        assert d.gamma1.real == pytest.approx(P0_GAMMA1, rel=1e-14)
        assert d.gamma2.real == pytest.approx(P0_GAMMA2, rel=1e-14)
        assert round(d.gamma1.real, 6) == 0.070004
        assert round(d.gamma2.real, 6) == 0.034648

    def test_mpmath_reference_all_fields(self):
        mpmath.mp.dps = 30
        g, w, e, eta, th, hb = map(mpmath.mpf, ("0.7", "1.3", "2.9", "2.2", "0.31", "0.8"))
        mu = mpmath.sqrt((eta + 1) * (eta - 1))
        w1 = g**2 / (4 * (eta**2 - 1)) + (e + w**2) / (eta + 1)
        w2 = g**2 / (4 * (eta**2 - 1)) + (e - w**2) / (eta - 1)
        ref = {
            "mu": mu,
            "omega1_sq": w1,
            "omega2_sq": w2,
            "gamma1": g / mu - mu * th * w2 / hb,
            "gamma2": g / mu - mu * th * w1 / hb,
            "mu1": mu / (1 - g * th / (2 * hb) + mu**2 * th**2 * w2 / (4 * hb**2)),
            "mu2": mu / (1 - g * th / (2 * hb) + mu**2 * th**2 * w1 / (4 * hb**2)),
            "nu1_sq": w1 - g**2 / (4 * mu**2),
            "nu2_sq": w2 - g**2 / (4 * mu**2),
        }
        d = derive(SystemParams(0.7, 1.3, 2.9, 2.2, 0.31, 0.8)).as_dict()
        for k, v in ref.items():
            assert d[k].real == pytest.approx(float(v), rel=1e-13), k
            assert d[k].imag == 0

    def test_theta_zero_masses_equal_mu(self):
        d = derive(P0.with_(theta=0.0))
        assert d.mu1 == d.mu and d.mu2 == d.mu

    @pytest.mark.parametrize("eta", [1.0, -1.0])
    def test_eta_singular(self, eta):
        with pytest.raises(SingularityError):
            derive(P0.with_(eta=eta))

    def test_imaginary_mass_below_one(self):
        d = derive(SystemParams(0.2, 1.0, 0.0, 0.0, 0.1))
        assert d.mu == pytest.approx(1j)

    @given(positive_params())
    @settings(max_examples=200, deadline=None)
    def test_invariants(self, p):
        d = derive(p)
        assert d.max_imag() <= 1e-12
        assert abs(d.mu**2 - (p.eta + 1) * (p.eta - 1)) <= 1e-12 * p.eta**2
        lhs = d.gamma2 - d.gamma1
        rhs = d.mu * p.theta * (d.omega2_sq - d.omega1_sq) / p.hbar
        assert abs(lhs - rhs) <= 1e-12 * (1 + abs(d.gamma1) + abs(d.gamma2) + abs(rhs))

    @given(positive_params())
    @settings(max_examples=50, deadline=None)
    def test_commutative_couplings(self, p):
        d = derive(p.with_(theta=0.0))
        assert d.gamma1 == d.gamma2 == pytest.approx(p.gamma / d.mu, rel=1e-15)


class TestDuality:
    def test_gamma_renormalized_values(self):
        assert gamma_renormalized(SystemParams(0.2, 1.0, theta=0.1)) == pytest.approx(0.299, rel=1e-14)
        assert gamma_renormalized(SystemParams(0.0, 1.0, theta=0.1)) == pytest.approx(0.1, rel=1e-15)
        assert gamma_renormalized(SystemParams(0.37, 2.1)) == 0.37

    @given(st.floats(0, 5), st.floats(0, 5), st.floats(0.1, 3), st.floats(0, 2), st.floats(0, 2))
    def test_affine_in_theta(self, g, w, hb, t1, t2):
        f = lambda t: gamma_renormalized(SystemParams(g, w, theta=t, hbar=hb))
        slope = w * w / hb - g * g / (4 * hb)
        assert f(t2) - f(t1) == pytest.approx(slope * (t2 - t1), abs=1e-12 * (1 + g * g + w * w) * (1 + 1 / hb))

    def test_theta_star_example(self):
        p = SystemParams(4.0, 1.0)
        ts = theta_star(p)
        assert ts == pytest.approx(4.0 / 3.0, rel=1e-15)
        assert abs(gamma_renormalized(p.with_(theta=ts))) < 1e-12

    def test_theta_star_absent(self):
        assert theta_star(SystemParams(1.0, 1.0)) is None
        assert "absent" in duality_report(SystemParams(1.0, 1.0)).note

    def test_theta_star_zero_omega(self):
        assert theta_star(SystemParams(2.0, 0.0)) == pytest.approx(2.0)

    @given(st.floats(0.1, 10), st.floats(0, 1), st.floats(0.1, 3))
    def test_theta_star_cancels(self, w, frac, hb):
        g = 2 * w / (1 - 0.9 * frac) + 1e-3
        p = SystemParams(g, w, hbar=hb)
        ts = theta_star(p)
        assert ts is not None and ts > 0
        # cancellation between terms of size theta * (gamma^2/4 + omega^2) / hbar
        scale = g + ts * (g * g / 4 + w * w) / hb
        assert abs(gamma_renormalized(p.with_(theta=ts))) <= 1e-14 * scale

    def test_regimes(self):
        assert duality_report(SystemParams(0.2, 1.0, theta=0.1)).regime is Regime.OSCILLATORY
        assert duality_report(SystemParams(4.0, 1.0)).regime is Regime.OVERDAMPED
        assert duality_report(SystemParams(2.0, 1.0)).regime is Regime.CRITICAL
        assert duality_report(SystemParams(2.0, 1.0)).critical_ratio == 1.0

    def test_nc_induced_damping_note(self):
        rep = duality_report(SystemParams(0.0, 1.0, theta=0.1))
        assert rep.gamma_R == pytest.approx(0.1)
        assert "NC-induced damping" in rep.note


class TestDiracBracket:
    def test_values(self):
        assert dirac_bracket(SystemParams(1.0, 0.0, epsilon=1.0)) == pytest.approx(4 / 15)
        assert dirac_bracket(SystemParams(0.0, 1.0, epsilon=2.0)) == 0.0
        assert dirac_bracket(SystemParams(1.0, 1.0, epsilon=1.0)) == pytest.approx(4 / 7)

    def test_singular(self):
        with pytest.raises(SingularityError):
            dirac_bracket(SystemParams(0.0, 1.0, epsilon=1.0))


class TestBatemanRoots:
    def test_undamped(self):
        assert bateman_roots(0.0, 2.0) == (2, -2)

    def test_critical(self):
        lp, lm = bateman_roots(2.0, 1.0)
        assert lp == pytest.approx(1j) and lm == pytest.approx(1j)

    def test_renormalized_example(self):
        gr = gamma_renormalized(SystemParams(0.2, 1.0, theta=0.1))
        lp, lm = bateman_roots(gr, 1.0)
        s = math.sqrt(1 - 0.299**2 / 4)
        assert lp == pytest.approx(0.299j / 2 + s, rel=1e-14)
        assert lm == pytest.approx(0.299j / 2 - s, rel=1e-14)

    def test_roots_solve_ansatz(self):
        # x = exp(i lam t) in x'' + g x' + w^2 x = 0 gives -lam^2 + i g lam + w^2 = 0
        for g, w in [(0.3, 1.0), (5.0, 1.0), (1.0, 0.0)]:
            for lam in bateman_roots(g, w):
                assert abs(-lam * lam + 1j * g * lam + w * w) < 1e-12

    @given(st.floats(0, 10), st.floats(0, 10))
    def test_product(self, g, w):
        lp, lm = bateman_roots(g, w)
        assert abs(lp * lm + w * w) < 1e-12 * (1 + w * w + g * g)
