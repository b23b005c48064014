"""
Characteristic frequencies by two independent routes.

The path-integral route evaluates the closed-form roots of the quartic
``s**4 + (nu1^2 + nu2^2 + g1 g2) s**2 + nu1^2 nu2^2 = 0`` obtained from the
effective equations of motion.  The canonical route block-diagonalizes the
commuting-coordinate Hamiltonian with a two-plane rotation and reads the
frequencies off as ``2 k sigma``.

The rotation coefficients are obtained by congruence of ``H_commuting``
under :func:`~ncbateman.transforms.diag_transform`.  In the
``(q1, pi2)`` block the Hamiltonian is ``alpha X1^2 + beta P2^2 + kappa X1 P2``
with ``alpha = mu w1^2/2``, ``beta = 1/(2 mu2)``, ``kappa = g2/2``; in the
``(q2, pi1)`` block ``alpha = mu w2^2/2``, ``beta = 1/(2 mu1)``,
``kappa = -g1/2``.  Setting both mixed coefficients to zero gives

    (a/b)^2  = (mu1 g1 + mu2 g2) / (mu mu1 mu2 (g1 w1^2 + g2 w2^2))
    tan 2u   = -mu1 mu2 (g1 w1^2 + g2 w2^2) (a/b) / (mu2 w1^2 - mu1 w2^2)
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .hamiltonians import build
from .params import (
    DerivedParams,
    DomainError,
    SingularityError,
    SystemParams,
    bateman_roots,
    derive,
    gamma_renormalized,
)
from .transforms import diag_transform

AGREEMENT_TOL = 1e-10


def _order_key(z_sq: complex):
    return (z_sq.real, z_sq.imag)


def order_pair(a_sq: complex, b_sq: complex) -> tuple[complex, complex]:
    """Order two squared frequencies: larger real part first, then larger imag."""
    if _order_key(b_sq) > _order_key(a_sq):
        return b_sq, a_sq
    return a_sq, b_sq


def pathintegral_spectrum(d: DerivedParams) -> tuple[complex, complex]:
    """Closed-form ``(Omega_plus, Omega_minus)`` from the effective equations.

    Principal square roots; ``Omega_plus`` is the root whose square has the
    larger real part.
    """
    n1, n2, gg = d.nu1_sq, d.nu2_sq, d.gamma1 * d.gamma2
    half_sum = (n1 + n2 + gg) / 2.0
    disc = 0.5 * cmath.sqrt(gg * (2.0 * n1 + 2.0 * n2 + gg) + (n1 - n2) ** 2)
    plus_sq, minus_sq = order_pair(half_sum + disc, half_sum - disc)
    return cmath.sqrt(plus_sq), cmath.sqrt(minus_sq)


def _block(alpha, beta, kappa, a, b, u):
    """Coefficients of ``q^2``, ``pi^2`` and ``q pi`` after the block rotation."""
    c, s = cmath.cos(u), cmath.sin(u)
    q_sq = alpha * a * a * c * c + beta * b * b * s * s - kappa * a * b * c * s
    pi_sq = alpha * s * s / (b * b) + beta * c * c / (a * a) + kappa * c * s / (a * b)
    mixed = (alpha * a / b - beta * b / a) * cmath.sin(2 * u) + kappa * cmath.cos(2 * u)
    return q_sq, pi_sq, mixed


@dataclass(frozen=True)
class CanonicalRoute:
    """Diagonalizing rotation and the resulting frequencies."""

    a: complex
    b: complex
    u: float
    k1_sq: complex
    k2_sq: complex
    sigma1_sq: complex
    sigma2_sq: complex
    lambda1: complex
    lambda2: complex
    omega_tilde_1: complex
    omega_tilde_2: complex
    branch: str
    relabeled: bool

    @property
    def a_over_b(self) -> complex:
        return self.a / self.b

    @property
    def lambda_residual(self) -> float:
        """``max|lambda_i|`` relative to the largest diagonal coefficient."""
        scale = max(abs(self.k1_sq), abs(self.k2_sq), abs(self.sigma1_sq), abs(self.sigma2_sq))
        return max(abs(self.lambda1), abs(self.lambda2)) / scale


def closure(d: DerivedParams) -> tuple[complex, float, str]:
    """Closed-form ``(a/b, u, branch)`` that zeroes both mixed coefficients.

    ``2u`` is taken in ``[0, pi)``.  Returns branch ``"diagonal"`` when both
    couplings vanish (the form is already diagonal, ``u = 0``) and
    ``"quarter"`` when ``mu2 w1^2 = mu1 w2^2`` forces ``u = pi/4``.
    """
    mu, m1, m2 = d.mu, d.mu1, d.mu2
    w1, w2, g1, g2 = d.omega1_sq, d.omega2_sq, d.gamma1, d.gamma2
    if g1 == 0 and g2 == 0:
        return 1.0 + 0j, 0.0, "diagonal"
    num = m1 * g1 + m2 * g2
    den = g1 * w1 + g2 * w2
    if abs(den) <= 1e-15 * (abs(g1 * w1) + abs(g2 * w2)):
        raise SingularityError("g1 w1^2 + g2 w2^2 = 0: a/b is unbounded")
    r = cmath.sqrt(num / (mu * m1 * m2 * den))
    x = m2 * w1 - m1 * w2
    if abs(x) <= 1e-14 * (abs(m2 * w1) + abs(m1 * w2)):
        return r, math.pi / 4.0, "quarter"
    t = -m1 * m2 * den * r / x
    if abs(t.imag) > 1e-12 * (1.0 + abs(t)):
        raise DomainError("no real diagonalizing rotation (mixed-sign couplings)")
    two_u = math.atan(t.real) % math.pi
    return r, two_u / 2.0, "general"


def canonical_spectrum(p: SystemParams, d: DerivedParams | None = None) -> CanonicalRoute:
    """Diagonalize ``H_commuting`` and return ``2 k_i sigma_i``.

    The two frequencies are labeled with the same rule as
    :func:`pathintegral_spectrum`; ``relabeled`` records whether the
    rotation delivered them in the opposite order.
    """
    if not p.positive_regime:
        raise DomainError("canonical diagonalization requires eta > 1 and epsilon > omega^2")
    d = derive(p) if d is None else d
    r, u, branch = closure(d)
    a, b = r, 1.0 + 0j
    mu = d.mu
    k1_sq, s2_sq, lam1 = _block(mu * d.omega1_sq / 2, 1 / (2 * d.mu2), d.gamma2 / 2, a, b, u)
    k2_sq, s1_sq, lam2 = _block(mu * d.omega2_sq / 2, 1 / (2 * d.mu1), -d.gamma1 / 2, a, b, u)
    o1_sq = 4 * k1_sq * s1_sq
    o2_sq = 4 * k2_sq * s2_sq
    plus_sq, minus_sq = order_pair(o1_sq, o2_sq)
    return CanonicalRoute(
        a=a,
        b=b,
        u=u,
        k1_sq=k1_sq,
        k2_sq=k2_sq,
        sigma1_sq=s1_sq,
        sigma2_sq=s2_sq,
        lambda1=lam1,
        lambda2=lam2,
        omega_tilde_1=cmath.sqrt(plus_sq),
        omega_tilde_2=cmath.sqrt(minus_sq),
        branch=branch,
        relabeled=_order_key(o2_sq) > _order_key(o1_sq),
    )


def swapped_cross_closure(d: DerivedParams) -> dict[str, complex]:
    """Closure and frequencies with the cross terms paired the wrong way.

    Uses the coefficient table that results from reading the cross terms as
    ``-g1 X1 P2 + g2 X2 P1`` instead of ``g2/2 X1 P2 - g1/2 X2 P1``.  Kept as
    a negative control: its ``2 k sigma`` values miss the spectrum.
    Returns ``a/b``, ``u`` and the two ``2 k sigma`` values.
    """
    mu, m1, m2 = d.mu, d.mu1, d.mu2
    w1, w2, g1, g2 = d.omega1_sq, d.omega2_sq, d.gamma1, d.gamma2
    r = cmath.sqrt((m1 * g2 + m2 * g1) / (mu * m1 * m2 * (g2 * w1 + g1 * w2)))
    t = cmath.sqrt(4 * m1 * m2 * (m1 * g2 + m2 * g1) * (g2 * w1 + g1 * w2) / (mu * (m2 * w1 - m1 * w2) ** 2))
    u = cmath.atan(t).real / 2
    a, b = r, 1.0
    c, s, s2 = math.cos(u), math.sin(u), math.sin(2 * u)
    k1 = b * b / (2 * m2) * s * s + mu * w1 * a * a / 2 * c * c + g1 * a * b / 2 * s2
    k2 = b * b / (2 * m1) * s * s + mu * w2 * a * a / 2 * c * c - g2 * a * b / 2 * s2
    sg1 = c * c / (2 * m1 * a * a) + mu * w2 / (2 * b * b) * s * s + g2 / (2 * a * b) * s2
    sg2 = c * c / (2 * m2 * a * a) + mu * w1 / (2 * b * b) * s * s - g1 / (2 * a * b) * s2
    return {
        "a_over_b": r,
        "u": u,
        "omega_tilde_1": 2 * cmath.sqrt(k1 * sg1),
        "omega_tilde_2": 2 * cmath.sqrt(k2 * sg2),
    }


def quadform_diag_check(
    p: SystemParams,
    d: DerivedParams | None = None,
    a: complex | None = None,
    b: complex | None = None,
    u: float | None = None,
) -> dict[str, float]:
    """Transport ``H_commuting`` through the rotation and measure the mixed entries.

    Defaults to the closed-form rotation.  Returns the max ``|q1 pi2|`` /
    ``|q2 pi1|`` entry, absolute and relative to ``||Q||_2``.
    """
    d = derive(p) if d is None else d
    if a is None or b is None or u is None:
        r, u0, _ = closure(d)
        a = r if a is None else a
        b = 1.0 if b is None else b
        u = u0 if u is None else u
    q = build("H_commuting", p, d)
    m = diag_transform(a, b, u).matrix
    qt = m.T @ q.matrix @ m
    cross = max(abs(qt[0, 3]), abs(qt[1, 2]))
    return {
        "max_cross": float(cross),
        "relative": float(cross / np.linalg.norm(q.matrix, 2)),
        "norm": float(np.linalg.norm(q.matrix, 2)),
    }


@dataclass(frozen=True)
class SpectrumReport:
    omega_plus: complex
    omega_minus: complex
    omega_tilde_1: complex
    omega_tilde_2: complex
    agreement_error: float
    route_metadata: dict = field(default_factory=dict)


def spectrum_report(p: SystemParams, d: DerivedParams | None = None) -> SpectrumReport:
    """Both routes plus the maximum relative disagreement.

    In the mixed-sign region (``Re g1 g2 < 0``) no real rotation may exist;
    the path-integral values are still returned and the canonical fields
    are NaN with ``route_metadata["canonical_route"] = "unavailable"``.
    """
    d = derive(p) if d is None else d
    op, om = pathintegral_spectrum(d)
    gg = d.gamma1 * d.gamma2
    mixed = bool(gg.real < 0)
    try:
        route = canonical_spectrum(p, d)
    except DomainError as exc:
        if not mixed or isinstance(exc, SingularityError):
            raise
        nan = complex(math.nan, math.nan)
        meta = {"mixed_coupling": True, "canonical_route": "unavailable", "reason": str(exc)}
        return SpectrumReport(op, om, nan, nan, math.nan, meta)
    err = max(
        abs(route.omega_tilde_1 - op) / abs(op),
        abs(route.omega_tilde_2 - om) / abs(om),
    )
    meta = {
        "a_over_b": route.a_over_b,
        "u": route.u,
        "k1": cmath.sqrt(route.k1_sq),
        "k2": cmath.sqrt(route.k2_sq),
        "sigma1": cmath.sqrt(route.sigma1_sq),
        "sigma2": cmath.sqrt(route.sigma2_sq),
        "lambda1_residual": abs(route.lambda1),
        "lambda2_residual": abs(route.lambda2),
        "lambda_relative_residual": route.lambda_residual,
        "branch": route.branch,
        "relabeled": route.relabeled,
        "mixed_coupling": mixed,
        "canonical_route": "ok",
    }
    return SpectrumReport(op, om, route.omega_tilde_1, route.omega_tilde_2, float(err), meta)


def vieta_residuals(d: DerivedParams) -> tuple[float, float]:
    """Relative errors of the sum and product of ``Omega^2`` against the quartic."""
    op, om = pathintegral_spectrum(d)
    s_ref = d.nu1_sq + d.nu2_sq + d.gamma1 * d.gamma2
    p_ref = d.nu1_sq * d.nu2_sq
    s_err = abs(op**2 + om**2 - s_ref) / max(abs(s_ref), 1e-300)
    p_err = abs(op**2 * om**2 - p_ref) / max(abs(p_ref), 1e-300)
    return s_err, p_err


def _matched_error(pair_a, pair_b) -> float:
    """Smaller of the two pairings' max absolute deviation."""
    (a1, a2), (b1, b2) = pair_a, pair_b
    return min(max(abs(a1 - b1), abs(a2 - b2)), max(abs(a1 - b2), abs(a2 - b1)))


def limit_target(p: SystemParams) -> tuple[complex, complex]:
    """Squares of the renormalized Bateman roots, ordered like ``Omega^2``."""
    lp, lm = bateman_roots(gamma_renormalized(p), p.omega)
    return order_pair(lp * lp, lm * lm)


def bateman_limit_spectrum(p: SystemParams, deltas) -> list[dict]:
    """Approach the pure Bateman system by setting ``epsilon = eta = delta``.

    For each delta reports ``Omega_+-(delta)``, the renormalized roots and
    ``max |Omega^2 - lambda_R^2|`` over the better of the two pairings.
    ``delta = 0`` evaluates the endpoint itself (``mu = i``).
    """
    deltas = [float(x) for x in deltas]
    for x in deltas:
        if not 0.0 <= x < 1.0:
            raise DomainError(f"delta must lie in [0, 1), got {x}")
    target = limit_target(p)
    lp, lm = bateman_roots(gamma_renormalized(p), p.omega)
    rows = []
    for x in deltas:
        q = p.with_(epsilon=x, eta=x)
        op, om = pathintegral_spectrum(derive(q))
        err = _matched_error((op * op, om * om), target)
        rows.append(
            {
                "delta": x,
                "omega_plus": op,
                "omega_minus": om,
                "lambda_plus_R": lp,
                "lambda_minus_R": lm,
                "error": err,
            }
        )
    return rows
