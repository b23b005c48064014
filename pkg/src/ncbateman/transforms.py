"""
Coordinate and phase-space maps.

Phase-space ordering is ``(x1, x2, p1, p2)`` throughout, with the symplectic
form ``J = [[0, I], [-I, 0]]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import DomainError

SQRT_HALF = np.sqrt(0.5)

J = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])

T1 = SQRT_HALF * np.array([[1.0, 1.0], [1.0, -1.0]])


def symplectic_defect(m: np.ndarray) -> float:
    """Max-abs entry of ``M^T J M - J``."""
    m = np.asarray(m)
    return float(np.max(np.abs(m.T @ J @ m - J)))


@dataclass(frozen=True)
class CanonicalMap:
    """A linear phase-space map ``z_new = matrix @ z``."""

    matrix: np.ndarray
    label: str
    canonical: bool = True

    def __call__(self, z):
        return self.matrix @ np.asarray(z)

    def symplectic_defect(self) -> float:
        return symplectic_defect(self.matrix)

    def inverse(self) -> "CanonicalMap":
        return CanonicalMap(np.linalg.inv(self.matrix), self.label + "^-1", self.canonical)


def t1_config(v):
    """Map configuration ``(x, y)`` to ``(x1, x2) = ((x+y)/sqrt2, (x-y)/sqrt2)``.

    The map is its own inverse.  Works on a trailing axis of length 2.
    """
    v = np.asarray(v)
    return v @ T1.T


def t1_lift() -> np.ndarray:
    """T1 acting on positions and (identically) on velocities or momenta."""
    out = np.zeros((4, 4))
    out[:2, :2] = T1
    out[2:, 2:] = T1
    return out


def t2_scale(eta: float) -> float:
    """``((eta + 1)/(eta - 1))**(1/4)``."""
    if not eta > 1.0:
        raise DomainError(f"T2 needs eta > 1, got {eta}")
    return ((eta + 1.0) / (eta - 1.0)) ** 0.25


def t2_map(eta: float) -> CanonicalMap:
    c = t2_scale(eta)
    return CanonicalMap(np.diag([c, 1.0 / c, 1.0 / c, c]), "T2_phase")


def t2_phase(pt, eta: float) -> np.ndarray:
    """Apply the mass-equalizing scaling ``diag(c, 1/c, 1/c, c)``."""
    return t2_map(eta)(pt)


def diag_transform(a: float, b: float, u: float) -> CanonicalMap:
    """Block rotation taking ``(q1, q2, pi1, pi2)`` to ``(X1c, X2c, P1, P2)``.

    Mixes ``(q1, pi2)`` into ``(X1c, P2)`` and ``(q2, pi1)`` into
    ``(X2c, P1)``; symplectic for every nonzero `a`, `b` and real `u`.
    Complex `a` is accepted for the mixed-sign coupling region.
    """
    if a == 0 or b == 0:
        raise DomainError("diag_transform needs a != 0 and b != 0")
    c, s = np.cos(u), np.sin(u)
    m = np.array(
        [
            [a * c, 0, 0, s / b],
            [0, a * c, s / b, 0],
            [0, -b * s, c / a, 0],
            [-b * s, 0, 0, c / a],
        ]
    )
    return CanonicalMap(m, f"S_diag(a={a}, b={b}, u={u})")


def xc_shift(theta: float, hbar: float = 1.0) -> CanonicalMap:
    """Map commuting coordinates to physical ones.

    ``X1 = X1c - (theta/2hbar) P2``, ``X2 = X2c + (theta/2hbar) P1``,
    momenta unchanged.  Not canonical for ``theta != 0``: the symplectic
    defect equals ``theta/hbar``.
    """
    if hbar <= 0:
        raise DomainError(f"hbar must be > 0, got {hbar}")
    s = theta / (2.0 * hbar)
    m = np.eye(4)
    m[0, 3] = -s
    m[1, 2] = s
    return CanonicalMap(m, "XC_shift", canonical=theta == 0)
