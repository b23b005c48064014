"""
Linear dynamics of the six model variants.

Every variant is a pair of coupled second-order equations, written here as
``d/dt (u1, u2, v1, v2) = A @ (u1, u2, v1, v2)`` with positions ``u`` and
velocities ``v``.  Under the ``exp(i*lam*t)`` ansatz used for the root
formulas, an eigenvalue ``s`` of ``A`` corresponds to ``lam = -i s``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.linalg as la
from scipy.signal import find_peaks

from .params import DerivedParams, DomainError, SingularityError, SystemParams, derive, gamma_renormalized
from .transforms import t1_lift, t2_scale

log = logging.getLogger(__name__)

# cap on |state(t)| / |state(0)| for anti-damped modes
MAX_GROWTH = 1e6

MASS_COND_TOL = 1e-8


class Variant(str, Enum):
    BATEMAN = "BATEMAN"
    AUGMENTED_XY = "AUGMENTED_XY"
    NC_EFFECTIVE = "NC_EFFECTIVE"
    COMMUTATIVE_LIMIT = "COMMUTATIVE_LIMIT"
    NC_XY_PRELIMIT = "NC_XY_PRELIMIT"
    BATEMAN_RENORMALIZED = "BATEMAN_RENORMALIZED"


FRAMES = {
    Variant.BATEMAN: "xy",
    Variant.AUGMENTED_XY: "xy",
    Variant.NC_EFFECTIVE: "x1x2",
    Variant.COMMUTATIVE_LIMIT: "x1x2",
    Variant.NC_XY_PRELIMIT: "xy",
    Variant.BATEMAN_RENORMALIZED: "xy",
}


@dataclass(frozen=True)
class LinearModel:
    variant: Variant
    A: np.ndarray
    coordinate_frame: str


def second_order_matrix(mass, damping, stiffness) -> np.ndarray:
    """First-order form of ``mass @ u'' + damping @ u' + stiffness @ u = 0``."""
    mass = np.asarray(mass)
    minv = np.linalg.inv(mass)
    dtype = np.result_type(mass, damping, stiffness, float)
    a = np.zeros((4, 4), dtype=dtype)
    a[:2, 2:] = np.eye(2)
    a[2:, :2] = -minv @ np.asarray(stiffness)
    a[2:, 2:] = -minv @ np.asarray(damping)
    return a


def bateman_matrix(gamma: float, omega: float) -> np.ndarray:
    """Damped x and anti-damped y, any real gamma."""
    w2 = omega * omega
    return second_order_matrix(np.eye(2), np.diag([gamma, -gamma]), np.diag([w2, w2]))


def effective_matrix(gamma1, gamma2, nu1_sq, nu2_sq) -> np.ndarray:
    """``u1'' + g1 u2' + nu1^2 u1 = 0``, ``u2'' - g2 u1' + nu2^2 u2 = 0``."""
    damping = np.array([[0, gamma1], [-gamma2, 0]])
    return second_order_matrix(np.eye(2), damping, np.diag([nu1_sq, nu2_sq]))


def _coupled_mass(eta: float) -> np.ndarray:
    if abs(1.0 - eta * eta) <= MASS_COND_TOL:
        raise SingularityError(f"mass matrix [[1, eta], [eta, 1]] singular at eta = {eta}")
    return np.array([[1.0, eta], [eta, 1.0]])


def _maybe_real(*values):
    out = []
    for v in values:
        v = complex(v)
        out.append(v.real if abs(v.imag) <= 1e-12 * (1.0 + abs(v.real)) else v)
    return out


def build_model(variant, p: SystemParams, d: DerivedParams | None = None) -> LinearModel:
    """First-order matrix of `variant` at parameters `p`."""
    variant = Variant(variant)
    g, w, eps, eta, th, hb = p.gamma, p.omega, p.epsilon, p.eta, p.theta, p.hbar
    w2 = w * w
    if variant is Variant.BATEMAN:
        a = bateman_matrix(g, w)
    elif variant is Variant.BATEMAN_RENORMALIZED:
        a = bateman_matrix(gamma_renormalized(p), w)
    elif variant is Variant.AUGMENTED_XY:
        a = second_order_matrix(
            _coupled_mass(eta),
            np.diag([g, -g]),
            np.array([[w2, eps], [eps, w2]]),
        )
    elif variant is Variant.NC_XY_PRELIMIT:
        damp = gamma_renormalized(p) - eps * eta * th / hb
        cross = eps * th / hb - eta * th * w2 / hb
        a = second_order_matrix(
            _coupled_mass(eta),
            np.array([[damp, cross], [-cross, -damp]]),
            np.array([[w2, eps], [eps, w2]]),
        )
    else:
        d = derive(p) if d is None else d
        if variant is Variant.NC_EFFECTIVE:
            g1, g2 = d.gamma1, d.gamma2
        else:
            g1 = g2 = g / d.mu
        a = effective_matrix(*_maybe_real(g1, g2, d.nu1_sq, d.nu2_sq))
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{variant.value} matrix is not finite")
    return LinearModel(variant, a, FRAMES[variant])


def eigen_oracle(m: LinearModel) -> np.ndarray:
    """Eigenvalues of ``A`` from a dense general solver, sorted by (real, imag)."""
    ev = la.eigvals(m.A)
    return ev[np.lexsort((ev.imag, ev.real))]


def xy_to_primed(states, eta: float) -> np.ndarray:
    """Map ``(x, y, x', y')`` states into the mass-equalized ``x1', x2'`` frame.

    Applies T1 to positions and velocities, then scales by
    ``(c, 1/c)`` with ``c = ((eta+1)/(eta-1))**(1/4)``.
    """
    c = t2_scale(eta)
    scale = np.array([c, 1 / c, c, 1 / c])
    return (np.asarray(states) @ t1_lift().T) * scale


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    model: LinearModel
    method: str = "eig"
    truncated: bool = False
    info: dict = field(default_factory=dict)


def _check_grid(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("time grid must be a non-empty 1-d array")
    if t.size > 1 and not np.all(np.diff(t) > 0):
        raise ValueError("time grid must be strictly increasing")
    return t


def propagate(m: LinearModel, x0, t_grid, cond_limit: float = 1e8) -> Trajectory:
    """Exact solution ``x(t) = expm(A (t - t0)) x0`` on `t_grid`.

    Uses the eigendecomposition of ``A``; falls back to scipy's
    scaling-and-squaring ``expm`` when the eigenvector matrix is
    ill-conditioned (defective or nearly defective ``A``).  The run stops
    early once the state grows by more than ``MAX_GROWTH``.
    """
    t = _check_grid(t_grid)
    x0 = np.asarray(x0)
    dt = t - t[0]
    lam, vec = la.eig(m.A)
    cond = np.linalg.cond(vec)
    if np.isfinite(cond) and cond < cond_limit:
        coef = la.solve(vec, x0.astype(complex))
        states = (np.exp(np.outer(dt, lam)) * coef) @ vec.T
        method = "eig"
    else:
        states = np.array([la.expm(m.A * s) @ x0 for s in dt])
        method = "expm"
    if np.isrealobj(m.A) and np.isrealobj(x0):
        states = states.real
    # the first sample is the initial state, without basis round-off
    states[0] = x0
    norm0 = np.linalg.norm(x0)
    truncated = False
    if norm0 > 0:
        grown = np.nonzero(np.linalg.norm(states, axis=1) > MAX_GROWTH * norm0)[0]
        if grown.size:
            cut = max(int(grown[0]), 1)
            log.warning("trajectory exceeds growth cap %.0e at t=%g; truncating", MAX_GROWTH, t[cut])
            t, states, truncated = t[:cut], states[:cut], True
    return Trajectory(t, states, m, method, truncated, {"eigvec_cond": float(cond)})


def rk4_propagate(m: LinearModel, x0, t_grid, max_step: float | None = None) -> np.ndarray:
    """Classical fixed-step RK4 on the same grid, used as an independent check."""
    t = _check_grid(t_grid)
    a = m.A
    if max_step is None:
        rate = max(np.max(np.abs(la.eigvals(a))), 1e-12)
        max_step = 0.01 / rate
    x = np.asarray(x0, dtype=np.result_type(a, x0, float)).copy()
    out = [x.copy()]
    for t0, t1 in zip(t[:-1], t[1:]):
        n = int(np.ceil((t1 - t0) / max_step))
        h = (t1 - t0) / n
        for _ in range(n):
            k1 = a @ x
            k2 = a @ (x + 0.5 * h * k1)
            k3 = a @ (x + 0.5 * h * k2)
            k4 = a @ (x + h * k3)
            x = x + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        out.append(x.copy())
    return np.array(out)


def rk4_deviation(tr: Trajectory) -> float:
    """Max deviation between `tr` and RK4, relative to the largest state norm."""
    ref = rk4_propagate(tr.model, tr.states[0], tr.times)
    scale = max(np.max(np.linalg.norm(tr.states, axis=1)), 1e-300)
    return float(np.max(np.abs(ref - tr.states)) / scale)


def extract_frequencies(tr: Trajectory, rel_threshold: float = 0.05, pad: int = 8) -> list[float]:
    """Dominant angular frequencies present in the trajectory.

    Each component is de-meaned, Hann-windowed and zero-padded; peaks whose
    magnitude exceeds `rel_threshold` of the largest peak are refined by a
    parabola through the log-magnitudes.  Peaks closer than one native bin
    across components are merged.  Returned in descending order.
    """
    t = tr.times
    if t.size < 8:
        return []
    dt = np.diff(t)
    if not np.allclose(dt, dt[0], rtol=1e-9, atol=0):
        raise ValueError("frequency extraction needs a uniform time grid")
    step = dt[0]
    n = t.size
    nfft = int(2 ** np.ceil(np.log2(n * pad)))
    window = np.hanning(n)
    signals = np.real(np.asarray(tr.states)).T
    mags = []
    for sig in signals:
        sig = sig - sig.mean()
        mags.append(np.abs(np.fft.rfft(sig * window, nfft)))
    mags = np.array(mags)
    top = mags.max()
    if top <= 1e-12 * (1.0 + np.abs(signals).max()) * n:
        return []
    bin_width = 2 * np.pi / (nfft * step)
    native = 2 * np.pi / (n * step)
    found = []
    for mag in mags:
        idx, _ = find_peaks(mag, height=rel_threshold * top)
        for i in idx:
            if i == 0 or i >= mag.size - 1:
                continue
            y0, y1, y2 = np.log(mag[i - 1 : i + 2])
            denom = y0 - 2 * y1 + y2
            shift = 0.5 * (y0 - y2) / denom if denom != 0 else 0.0
            found.append(((i + shift) * bin_width, mag[i]))
    found.sort(key=lambda fm: -fm[1])
    kept: list[float] = []
    for f, _ in found:
        if all(abs(f - g) > native for g in kept):
            kept.append(f)
    return sorted(kept, reverse=True)


def envelope_rate(tr: Trajectory, component: int = 0) -> float:
    """Slope of ``log |peak amplitude|`` versus time for one component.

    Local maxima of ``|u|`` are refined with a parabola; for ``A e^{rt}
    cos(wt + phi)`` the returned slope is ``r``.
    """
    y = np.abs(np.real(tr.states[:, component]))
    t = tr.times
    idx, _ = find_peaks(y)
    idx = idx[(idx > 0) & (idx < y.size - 1)]
    if idx.size < 3:
        raise ValueError("need at least three oscillation peaks to fit an envelope")
    y0, y1, y2 = y[idx - 1], y[idx], y[idx + 1]
    denom = y0 - 2 * y1 + y2
    shift = np.where(denom != 0, 0.5 * (y0 - y2) / np.where(denom != 0, denom, 1), 0.0)
    peak_val = y1 - 0.25 * (y0 - y2) * shift
    peak_t = t[idx] + shift * (t[1] - t[0])
    slope, _ = np.polyfit(peak_t, np.log(peak_val), 1)
    return float(slope)


def amplitude_drift(tr: Trajectory, omega: float, component: int = 0) -> float:
    """Max relative change of ``sqrt(u^2 + (v/omega)^2)`` over the run."""
    u = np.real(tr.states[:, component])
    v = np.real(tr.states[:, component + 2])
    amp = np.sqrt(u * u + (v / omega) ** 2)
    return float(np.max(np.abs(amp - amp[0])) / amp[0])
