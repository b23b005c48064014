import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncbateman import DomainError, SystemParams
from ncbateman.hamiltonians import build, is_positive_definite, split_h1_h2
from ncbateman.transforms import t2_map, xc_shift

from conftest import P0


def regime_params():
    return st.builds(
        lambda g, w, e, eta, th, hb: SystemParams(g, w, w * w * e, eta, th, hb),
        st.floats(0, 2),
        st.floats(0.2, 2),
        st.floats(1.05, 5),
        st.floats(1.05, 6),
        st.floats(0, 0.5),
        st.floats(0.5, 2),
    )


points = st.lists(st.floats(-5, 5), min_size=4, max_size=4).map(np.array)


def test_symmetric():
    for label in ("H_bateman", "H_augmented", "H_final", "H_commuting"):
        q = build(label, P0).matrix
        assert np.max(np.abs(q - q.T)) < 1e-14


def test_bateman_example():
    assert build("H_bateman", SystemParams(0.0, 1.0))([1, 0, 0, 0]) == pytest.approx(0.5)


def test_augmented_example():
    h = build("H_augmented", SystemParams(0.0, 1.0, 2.0, 3.0))
    assert h([0, 0, 1, 0]) == pytest.approx(1 / 8)


def test_final_is_commuting_at_theta_zero():
    p = P0.with_(theta=0.0)
    np.testing.assert_allclose(build("H_final", p).matrix, build("H_commuting", p).matrix, rtol=0, atol=1e-15)


def test_errors():
    with pytest.raises(ValueError):
        build("H_unknown", P0)
    with pytest.raises(DomainError):
        build("H_final", P0.with_(epsilon=0.5))
    with pytest.raises(DomainError):
        build("H_commuting", P0.with_(eta=0.5))


@given(regime_params(), points)
@settings(max_examples=200, deadline=None)
def test_completing_the_square(p, z):
    x1, x2, p1, p2 = z
    g, w2, e, eta = p.gamma, p.omega**2, p.epsilon, p.eta
    ref = (
        (p1 - g * x2 / 2) ** 2 / (2 * (eta + 1))
        + (p2 + g * x1 / 2) ** 2 / (2 * (eta - 1))
        + (e + w2) * x1 * x1 / 2
        + (e - w2) * x2 * x2 / 2
    )
    assert build("H_augmented", p)(z) == pytest.approx(ref, rel=1e-12, abs=1e-12)


@given(regime_params(), points)
@settings(max_examples=200, deadline=None)
def test_final_transports_augmented(p, z):
    t2inv = np.linalg.inv(t2_map(p.eta).matrix)
    ha = build("H_augmented", p)(t2inv @ z)
    assert build("H_final", p)(z) == pytest.approx(ha, rel=1e-12, abs=1e-12)


@given(regime_params(), points)
@settings(max_examples=200, deadline=None)
def test_commuting_is_final_after_shift(p, z):
    hf = build("H_final", p)(xc_shift(p.theta, p.hbar)(z))
    assert build("H_commuting", p)(z) == pytest.approx(hf, rel=1e-12, abs=1e-12)


def test_split_examples():
    assert split_h1_h2(P0, np.zeros(4)) == (0.0, 0.0)
    assert split_h1_h2(SystemParams(0.0, 1.0), [1, 1, 0, 0]) == (0.5, 0.5)


@given(st.floats(0, 3), st.floats(0, 3), points)
def test_split_identity(g, w, z):
    p = SystemParams(g, w)
    h1, h2 = split_h1_h2(p, z)
    assert h1 >= 0 and h2 >= 0
    assert h1 - h2 == pytest.approx(build("H_bateman", p)(z), abs=1e-12 * (1 + h1 + h2))


class TestDefiniteness:
    def test_augmented_inside(self):
        assert is_positive_definite(build("H_augmented", SystemParams(1.0, 1.0, 2.0, 3.0))).positive

    def test_augmented_small_eta(self):
        res = is_positive_definite(build("H_augmented", SystemParams(0.0, 1.0, 2.0, 0.5)))
        assert not res.positive
        assert res.witness @ build("H_augmented", SystemParams(0.0, 1.0, 2.0, 0.5)).matrix @ res.witness <= 0

    @pytest.mark.parametrize("g, w", [(0.0, 1.0), (0.5, 2.0), (3.0, 0.7)])
    def test_bateman_indefinite(self, g, w):
        q = build("H_bateman", SystemParams(g, w))
        res = is_positive_definite(q)
        assert not res.positive
        assert res.witness @ q.matrix @ res.witness <= 0
        # an indefinite direction has weight on the y-type coordinates
        assert np.linalg.norm(res.witness[[1, 3]]) > 0.1

    def test_relative_threshold(self):
        q = build("H_augmented", SystemParams(1.0, 1.0, 2.0, 3.0))
        scaled = type(q)(q.matrix * 1e-20, q.label)
        assert is_positive_definite(scaled).positive
