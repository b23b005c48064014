"""
Physical parameters of the noncommutative Bateman oscillator.

Holds the six inputs (gamma, omega, epsilon, eta, theta, hbar), every derived
scalar used by the spectra and dynamics modules, and the renormalized-damping
duality formulas.  Units are natural with unit mass.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from enum import Enum


class DomainError(ValueError):
    """Input outside the domain where a formula is defined."""


class SingularityError(DomainError):
    """A formula hits a division by zero (e.g. eta = 1)."""


@dataclass(frozen=True)
class SystemParams:
    """Inputs of the model.

    Parameters
    ----------
    gamma : float
        Damping rate.
    omega : float
        Bare angular frequency.
    epsilon : float
        Linear coupling strength between the x and y oscillators.
    eta : float
        Second-derivative (mass) coupling.
    theta : float
        Noncommutativity parameter, ``theta >= 0``.
    hbar : float
        Reduced Planck constant.
    """

    gamma: float
    omega: float
    epsilon: float = 0.0
    eta: float = 0.0
    theta: float = 0.0
    hbar: float = 1.0

    @property
    def positive_regime(self) -> bool:
        """True iff ``eta > 1`` and ``epsilon > omega**2`` (strict)."""
        return self.eta > 1.0 and self.epsilon > self.omega**2

    def with_(self, **changes) -> "SystemParams":
        return replace(self, **changes)


def validate(p: SystemParams) -> SystemParams:
    """Check the invariants of `p` and return it unchanged.

    Raises
    ------
    DomainError
        Non-finite values, ``theta < 0``, ``hbar <= 0`` or negative
        gamma, omega, epsilon.
    """
    for name in ("gamma", "omega", "epsilon", "eta", "theta", "hbar"):
        value = getattr(p, name)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            raise DomainError(f"{name} must be a finite real number, got {value!r}")
    if p.theta < 0:
        raise DomainError(f"theta must be >= 0, got {p.theta}")
    if p.hbar <= 0:
        raise DomainError(f"hbar must be > 0, got {p.hbar}")
    for name in ("gamma", "omega", "epsilon"):
        if getattr(p, name) < 0:
            raise DomainError(f"{name} must be >= 0, got {getattr(p, name)}")
    return p


@dataclass(frozen=True)
class DerivedParams:
    """Derived scalars, stored as complex numbers.

    Outside the positive regime ``mu`` may be imaginary (``eta < 1``), and
    every dependent quantity follows it along the principal branch.
    """

    mu: complex
    omega1_sq: complex
    omega2_sq: complex
    gamma1: complex
    gamma2: complex
    mu1: complex
    mu2: complex
    nu1_sq: complex
    nu2_sq: complex

    def max_imag(self) -> float:
        """Largest ``|imag| / (1 + |real|)`` over all fields."""
        return max(abs(v.imag) / (1.0 + abs(v.real)) for v in self.as_dict().values())

    def as_dict(self) -> dict[str, complex]:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}

    def real(self) -> dict[str, float]:
        return {k: v.real for k, v in self.as_dict().items()}


def derive(p: SystemParams) -> DerivedParams:
    """Compute every derived scalar from `p`.

    Raises
    ------
    SingularityError
        For ``eta = +-1`` (the mass matrix of the augmented system is
        singular), or when an effective-mass denominator vanishes.
    """
    validate(p)
    g, w, eps, eta, th, hb = p.gamma, p.omega, p.epsilon, p.eta, p.theta, p.hbar
    if eta == 1.0 or eta == -1.0:
        raise SingularityError(
            f"eta = {eta} makes the system constrained; derived parameters are undefined"
        )
    mu = cmath.sqrt(complex((eta + 1.0) * (eta - 1.0)))
    shift = g * g / (4.0 * (eta * eta - 1.0))
    w1 = complex(shift + (eps + w * w) / (eta + 1.0))
    w2 = complex(shift + (eps - w * w) / (eta - 1.0))
    g1 = g / mu - mu * th * w2 / hb
    g2 = g / mu - mu * th * w1 / hb
    base = 1.0 - g * th / (2.0 * hb)
    den1 = base + mu * mu * th * th * w2 / (4.0 * hb * hb)
    den2 = base + mu * mu * th * th * w1 / (4.0 * hb * hb)
    if den1 == 0 or den2 == 0:
        raise SingularityError("effective-mass denominator vanishes")
    damp = g * g / (4.0 * mu * mu)
    return DerivedParams(
        mu=mu,
        omega1_sq=w1,
        omega2_sq=w2,
        gamma1=g1,
        gamma2=g2,
        mu1=mu / den1,
        mu2=mu / den2,
        nu1_sq=w1 - damp,
        nu2_sq=w2 - damp,
    )


def gamma_renormalized(p: SystemParams) -> float:
    """Renormalized damping ``gamma + theta*omega**2/hbar - theta*gamma**2/(4*hbar)``."""
    return p.gamma + p.theta * p.omega**2 / p.hbar - p.theta * p.gamma**2 / (4.0 * p.hbar)


def theta_star(p: SystemParams) -> float | None:
    """Value of theta at which the renormalized damping vanishes.

    Exists only for overdamped bare parameters, ``gamma**2/4 > omega**2``;
    returns None otherwise.
    """
    excess = p.gamma**2 / 4.0 - p.omega**2
    if excess <= 0:
        return None
    return p.gamma * p.hbar / excess


def dirac_bracket(p: SystemParams) -> float:
    """``[x, y]`` Dirac bracket of the constrained ``eta = 1`` system."""
    den = 7.0 * p.gamma**2 + 8.0 * (p.epsilon - p.omega**2)
    if den == 0:
        raise SingularityError("7 gamma^2 + 8 (epsilon - omega^2) = 0")
    return 4.0 * p.gamma / den


def bateman_roots(gamma: float, omega: float) -> tuple[complex, complex]:
    """Roots of the ``x(t) = exp(i*lam*t)`` ansatz for the damped oscillator.

    ``lam = i*gamma/2 +- sqrt(omega**2 - gamma**2/4)`` on the principal
    branch, so overdamped motion gives purely imaginary roots.
    """
    if gamma == 0:
        return complex(omega), complex(-omega)
    s = cmath.sqrt(omega * omega - gamma * gamma / 4.0)
    return 0.5j * gamma + s, 0.5j * gamma - s


class Regime(str, Enum):
    OSCILLATORY = "oscillatory"
    OVERDAMPED = "overdamped"
    CRITICAL = "critical"


CRITICAL_TOL = 1e-12


def classify(critical_ratio: float) -> Regime:
    if abs(critical_ratio - 1.0) <= CRITICAL_TOL:
        return Regime.CRITICAL
    if critical_ratio > 1.0:
        return Regime.OSCILLATORY
    return Regime.OVERDAMPED


@dataclass(frozen=True)
class DualityReport:
    gamma_R: float
    theta_star: float | None
    critical_ratio: float
    regime: Regime
    note: str = field(default="")


def duality_report(p: SystemParams) -> DualityReport:
    """Renormalized damping, fine-tuned theta and the resulting regime."""
    validate(p)
    gr = gamma_renormalized(p)
    ratio = math.inf if gr == 0 else 4.0 * p.omega**2 / gr**2
    ts = theta_star(p)
    if ts is None:
        note = "theta_star absent: gamma^2/4 <= omega^2, no theta cancels the damping"
    else:
        note = f"theta = {ts!r} cancels the renormalized damping"
    if p.gamma == 0 and p.theta > 0:
        note += "; NC-induced damping: gamma_R = theta*omega^2/hbar"
    return DualityReport(gr, ts, ratio, classify(ratio), note)
