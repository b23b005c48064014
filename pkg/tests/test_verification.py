import numpy as np
import pytest

from ncbateman import derive
from ncbateman.verification import (
    DEFAULT_TOLERANCES,
    MODULES,
    dual_route_error,
    random_positive_params,
    run_all,
)

from conftest import P0


@pytest.fixture(scope="module")
def checks():
    return run_all(seed=3, n_random=40)


def test_all_pass(checks):
    failed = [c for c in checks if not c.passed]
    assert not failed, failed


def test_every_module_covered(checks):
    assert {c.module for c in checks} == set(MODULES)


def test_deterministic(checks):
    again = run_all(seed=3, n_random=40)
    assert [c.as_dict() for c in again] == [c.as_dict() for c in checks]


def test_fault_is_loud():
    assert dual_route_error(P0, fault="flip_gamma2") > 1e-3
    res = {c.name: c for c in run_all(seed=0, n_random=10, fault="flip_gamma2")}
    assert not res["dual_route_agreement"].passed


def test_tolerance_override():
    res = {c.name: c for c in run_all(seed=0, n_random=10, tolerances={"agreement": 1e-30})}
    assert not res["dual_route_agreement"].passed
    assert res["dual_route_agreement"].tolerance == 1e-30


def test_sampler():
    rng = np.random.default_rng(0)
    for p in random_positive_params(rng, 50):
        d = derive(p)
        assert p.positive_regime and (d.gamma1 * d.gamma2).real > 0


def test_default_tolerances_positive():
    assert all(v > 0 for v in DEFAULT_TOLERANCES.values())
