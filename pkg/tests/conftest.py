import numpy as np
import pytest

from ncbateman import SystemParams

P0 = SystemParams(gamma=0.4, omega=1.0, epsilon=2.0, eta=3.0, theta=0.05, hbar=1.0)
DECOUPLED = SystemParams(gamma=0.0, omega=1.0, epsilon=2.0, eta=3.0, theta=0.0, hbar=1.0)

# 40-digit mpmath evaluation of the P0 couplings and of the roots of the
# effective quartic (mpmath.polyroots), independent of the package code.
P0_GAMMA1 = 0.0700035713374682049156835918483800548892
P0_GAMMA2 = 0.03464823227814082869564137374313760292496
P0_OMEGA_PLUS = 0.870138937147645264263152316969773772473229
P0_OMEGA_MINUS = 0.703763973260614019319964761936048215480484


@pytest.fixture
def p0():
    return P0


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# (criterion number, title, passed, detail), filled by test_acceptance.py
ACCEPTANCE = []


def record_acceptance(number: int, title: str, passed: bool, detail: str) -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {title} ({detail})"
    print(line)
    ACCEPTANCE.append((number, line))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line)
