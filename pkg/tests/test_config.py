import numpy as np
import pytest

from ncbateman import DomainError
from ncbateman.config import ConfigError, load_config, parse_config

P0_TEXT = """
# P0 parameter set
gamma = 0.4
omega = 1
epsilon = 2     # inline comment
eta = 3
theta = 0.05
variant = NC_EFFECTIVE
initial_state = 1, 0, 0, 0
seed = 7
tol_agreement = 1e-11
"""


def test_parse_p0():
    cfg = parse_config(P0_TEXT)
    assert cfg.params.gamma == 0.4 and cfg.params.eta == 3.0 and cfg.params.hbar == 1.0
    assert cfg.get("variant") == "NC_EFFECTIVE"
    assert cfg.get("initial_state") == [1, 0, 0, 0]
    assert cfg.seed == 7
    assert cfg.tolerances == {"agreement": 1e-11}


def test_empty_gives_defaults():
    cfg = parse_config("")
    assert cfg.params.omega == 1.0 and cfg.params.gamma == 0.0 and cfg.seed == 0


def test_theta_star():
    cfg = parse_config("gamma = 4\nomega = 1\ntheta = theta_star\n")
    assert cfg.params.theta == pytest.approx(4 / 3)


def test_theta_star_absent():
    with pytest.raises(ConfigError, match="theta_star"):
        parse_config("gamma = 1\ntheta = theta_star\n")


def test_grids_and_ranges():
    cfg = parse_config("theta_grid = 0, 0.1\ngamma_range = 0, 1, 5\n")
    assert cfg.grids["theta"] == [0.0, 0.1]
    np.testing.assert_allclose(cfg.grids["gamma"], np.linspace(0, 1, 5))


@pytest.mark.parametrize(
    "text, match",
    [
        ("gamma = 1\nomga = 1\n", r":2: field 'omga': unknown key"),
        ("gamma = 1\n omega\n", r":2: expected 'key = value'"),
        ("gamma = 1\ngamma = 2\n", r":2: field 'gamma' already set on line 1"),
        ("[run]\n", r":1: expected"),
        ("gamma = abc\n", r":1: field 'gamma': expected a number"),
        ("theta_grid =\n", r"has no value"),
        ("gamma_range = 0, 1\n", r"start, stop, num"),
        ("gamma_range = 0, 1, 2.5\n", r"start, stop, num"),
        ("tol_agreement = -1\n", r"must be positive"),
        ("tol = 0\n", r"must be positive"),
        ("n_samples = many\n", r"invalid value"),
        ("initial_state = 1, x\n", r"comma-separated"),
    ],
)
def test_errors(text, match):
    with pytest.raises(ConfigError, match=match):
        parse_config(text, source="run.cfg")


def test_domain_errors_pass_through():
    with pytest.raises(DomainError):
        parse_config("theta = -1\n")


def test_load(tmp_path):
    path = tmp_path / "a.cfg"
    path.write_text(P0_TEXT)
    assert load_config(path).params.theta == 0.05
