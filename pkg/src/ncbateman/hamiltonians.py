"""
Quadratic Hamiltonians of the model as symmetric 4x4 matrices.

A form ``Q`` represents ``H(z) = 0.5 * z @ Q @ z`` with ``z = (x1, x2, p1, p2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .params import DerivedParams, DomainError, SystemParams, derive

LABELS = ("H_bateman", "H_augmented", "H_final", "H_commuting")

X1, X2, P1, P2 = range(4)


@dataclass(frozen=True)
class QuadraticForm:
    matrix: np.ndarray
    label: str

    def __call__(self, z) -> float:
        z = np.asarray(z)
        return 0.5 * z @ self.matrix @ z

    def transported(self, m: np.ndarray) -> "QuadraticForm":
        """Pull back through ``z = m @ w``, i.e. ``m^T Q m``."""
        return QuadraticForm(m.T @ self.matrix @ m, self.label)


def _set(q, i, j, value):
    q[i, j] = value
    q[j, i] = value


def _bateman(p: SystemParams) -> np.ndarray:
    g, w2 = p.gamma, p.omega**2
    q = np.diag([w2 - g * g / 4.0, g * g / 4.0 - w2, 1.0, -1.0])
    _set(q, X2, P1, -g / 2.0)
    _set(q, X1, P2, -g / 2.0)
    return q


def _augmented(p: SystemParams) -> np.ndarray:
    g, w2, eps, eta = p.gamma, p.omega**2, p.epsilon, p.eta
    if eta in (1.0, -1.0):
        raise DomainError("H_augmented is singular at eta = +-1")
    q = np.diag(
        [
            g * g / (4.0 * (eta - 1.0)) + eps + w2,
            g * g / (4.0 * (eta + 1.0)) + eps - w2,
            1.0 / (eta + 1.0),
            1.0 / (eta - 1.0),
        ]
    )
    _set(q, X1, P2, g / (2.0 * (eta - 1.0)))
    _set(q, X2, P1, -g / (2.0 * (eta + 1.0)))
    return q


def _final(p: SystemParams, d: DerivedParams) -> np.ndarray:
    r = d.real()
    mu = r["mu"]
    q = np.diag([mu * r["omega1_sq"], mu * r["omega2_sq"], 1.0 / mu, 1.0 / mu])
    _set(q, X1, P2, p.gamma / (2.0 * mu))
    _set(q, X2, P1, -p.gamma / (2.0 * mu))
    return q


def _commuting(p: SystemParams, d: DerivedParams) -> np.ndarray:
    r = d.real()
    mu = r["mu"]
    q = np.diag([mu * r["omega1_sq"], mu * r["omega2_sq"], 1.0 / r["mu1"], 1.0 / r["mu2"]])
    _set(q, X1, P2, r["gamma2"] / 2.0)
    _set(q, X2, P1, -r["gamma1"] / 2.0)
    return q


def build(label: str, p: SystemParams, d: DerivedParams | None = None) -> QuadraticForm:
    """Quadratic form of one of the model Hamiltonians.

    ``H_final`` and ``H_commuting`` live in the mass-equalized frame and need
    the positive regime.
    """
    if label == "H_bateman":
        return QuadraticForm(_bateman(p), label)
    if label == "H_augmented":
        return QuadraticForm(_augmented(p), label)
    if label in ("H_final", "H_commuting"):
        if not p.positive_regime:
            raise DomainError(f"{label} requires eta > 1 and epsilon > omega^2")
        d = derive(p) if d is None else d
        q = _final(p, d) if label == "H_final" else _commuting(p, d)
        return QuadraticForm(q, label)
    raise ValueError(f"unknown Hamiltonian label {label!r}; expected one of {LABELS}")


def split_h1_h2(p: SystemParams, pt) -> tuple[float, float]:
    """Non-negative parts with ``H_bateman = H1 - H2``."""
    x1, x2, p1, p2 = np.asarray(pt, dtype=float)
    g, w2 = p.gamma, p.omega**2
    h1 = 0.5 * (p1 - g * x2 / 2.0) ** 2 + 0.5 * w2 * x1 * x1
    h2 = 0.5 * (p2 + g * x1 / 2.0) ** 2 + 0.5 * w2 * x2 * x2
    return h1, h2


class Definiteness(NamedTuple):
    positive: bool
    min_eigenvalue: float
    witness: np.ndarray | None


def is_positive_definite(q: QuadraticForm, rtol: float = 1e-12) -> Definiteness:
    """Positive-definiteness test with a non-positive direction as witness.

    The threshold is relative: every eigenvalue must exceed ``rtol * ||Q||_2``.
    """
    evals, evecs = np.linalg.eigh(q.matrix)
    scale = max(np.max(np.abs(evals)), np.finfo(float).tiny)
    lo = evals[0]
    if lo > rtol * scale:
        return Definiteness(True, float(lo), None)
    return Definiteness(False, float(lo), evecs[:, 0])
