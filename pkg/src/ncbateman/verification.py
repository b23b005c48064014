"""
Named invariant checks across all modules.

Each check returns a :class:`Check` with the measured residual and the
tolerance it was held to.  :func:`run_all` is the release gate used by the
``verify`` command.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import dynamics, hamiltonians, pathintegral, spectra, transforms
from .params import SystemParams, bateman_roots, derive, gamma_renormalized, theta_star

DEFAULT_TOLERANCES = {
    "agreement": 1e-10,
    "oracle": 1e-9,
    "lambda": 1e-10,
    "cross": 1e-10,
    "circulant": 1e-12,
    "limit": 1e-10,
    "symplectic": 1e-12,
    "identity": 1e-12,
    "rk4": 1e-8,
}

P0 = SystemParams(gamma=0.4, omega=1.0, epsilon=2.0, eta=3.0, theta=0.05, hbar=1.0)


@dataclass(frozen=True)
class Check:
    name: str
    module: str
    passed: bool
    residual: float
    tolerance: float

    def as_dict(self) -> dict:
        return asdict(self)


def _check(name, module, residual, tol) -> Check:
    residual = float(residual)
    return Check(name, module, bool(np.isfinite(residual) and residual < tol), residual, float(tol))


def random_positive_params(rng: np.random.Generator, n: int, same_sign: bool = True) -> list[SystemParams]:
    """Draw `n` parameter sets inside the positive regime.

    With `same_sign`, keeps only sets with ``gamma1 * gamma2 > 0``.
    """
    out = []
    while len(out) < n:
        w = rng.uniform(0.2, 2.0)
        p = SystemParams(
            gamma=rng.uniform(0.0, 2.0),
            omega=w,
            epsilon=w * w * rng.uniform(1.05, 5.0),
            eta=rng.uniform(1.05, 6.0),
            theta=rng.uniform(0.0, 0.5),
            hbar=rng.uniform(0.5, 2.0),
        )
        if same_sign:
            d = derive(p)
            if not (d.gamma1 * d.gamma2).real > 0:
                continue
        out.append(p)
    return out


def dual_route_error(p: SystemParams, fault: str | None = None) -> float:
    d = derive(p)
    d_path = replace(d, gamma2=-d.gamma2) if fault == "flip_gamma2" else d
    op, om = spectra.pathintegral_spectrum(d_path)
    route = spectra.canonical_spectrum(p, d)
    return max(abs(route.omega_tilde_1 - op) / abs(op), abs(route.omega_tilde_2 - om) / abs(om))


def oracle_error(p: SystemParams) -> float:
    """Relative gap between ``A`` eigenvalues and ``{+-i Omega_+, +-i Omega_-}``."""
    d = derive(p)
    op, om = spectra.pathintegral_spectrum(d)
    ev = dynamics.eigen_oracle(dynamics.build_model("NC_EFFECTIVE", p, d))
    target = np.array([1j * op, -1j * op, 1j * om, -1j * om])
    cost = np.abs(ev[:, None] - target[None, :])
    r, c = linear_sum_assignment(cost)
    return float(np.max(cost[r, c]) / abs(om))


def circulant_match(n: int, theta: float = 0.05, eps_step: float = 0.01, mu: float = 2 * np.sqrt(2)) -> tuple[float, float]:
    """Max eigenvalue mismatch after optimal matching, and max ``|M u - lam u|``."""
    sigma = -(1j * eps_step / (2 * mu) + theta / 2)
    c = pathintegral.CirculantModel(n, eps_step, sigma, theta / 2)
    m = pathintegral.build_matrix(c)
    lam, vec = pathintegral.closed_form_eigs(c)
    dense = np.linalg.eigvals(m)
    cost = np.abs(dense[:, None] - lam[None, :])
    r, col = linear_sum_assignment(cost)
    resid = np.max(np.linalg.norm(m @ vec - vec * lam, axis=0))
    return float(np.max(cost[r, col])), float(resid)


def run_all(seed: int = 0, n_random: int = 200, tolerances: dict | None = None, fault: str | None = None) -> list[Check]:
    """Run every named invariant; results depend only on `seed` and inputs."""
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    rng = np.random.default_rng(seed)
    sample = random_positive_params(rng, n_random)
    checks: list[Check] = []

    # params
    d0 = derive(P0)
    checks.append(_check("derived_real_in_positive_regime", "params", max(derive(p).max_imag() for p in sample), tol["identity"]))
    checks.append(_check("mu_squared_identity", "params", max(abs(derive(p).mu ** 2 - (p.eta + 1) * (p.eta - 1)) / p.eta**2 for p in sample), tol["identity"]))
    gap = []
    for p in sample:
        d = derive(p)
        lhs = d.gamma2 - d.gamma1
        rhs = d.mu * p.theta * (d.omega2_sq - d.omega1_sq) / p.hbar
        gap.append(abs(lhs - rhs) / (1 + abs(rhs)))
    checks.append(_check("gamma_difference_identity", "params", max(gap), tol["identity"]))
    ts_res = []
    for g in (2.5, 4.0, 7.0):
        p = SystemParams(gamma=g, omega=1.0)
        ts = theta_star(p)
        ts_res.append(abs(gamma_renormalized(p.with_(theta=ts))) / g)
    checks.append(_check("theta_star_cancels_damping", "params", max(ts_res), tol["identity"]))
    roots = []
    for p in sample:
        lp, lm = bateman_roots(p.gamma, p.omega)
        roots.append(abs(lp * lm + p.omega**2) / (1 + p.omega**2))
    checks.append(_check("bateman_root_product", "params", max(roots), tol["identity"]))

    # transforms
    checks.append(_check("t2_symplectic", "transforms", max(transforms.t2_map(p.eta).symplectic_defect() for p in sample), tol["symplectic"]))
    abu = rng.uniform([0.1, 0.1, 0.0], [10.0, 10.0, 2 * np.pi], size=(n_random, 3))
    checks.append(_check("diag_transform_symplectic", "transforms", max(transforms.diag_transform(*row).symplectic_defect() for row in abu), tol["symplectic"]))
    xc = transforms.xc_shift(0.3, 1.0).symplectic_defect()
    checks.append(_check("xc_shift_not_canonical", "transforms", abs(xc - 0.3), tol["symplectic"]))
    v = rng.normal(size=(n_random, 2))
    checks.append(_check("t1_involution", "transforms", np.max(np.abs(transforms.t1_config(transforms.t1_config(v)) - v)), 1e-14))

    # hamiltonians
    pd = [hamiltonians.is_positive_definite(hamiltonians.build("H_augmented", p)).min_eigenvalue for p in sample]
    checks.append(_check("augmented_positive_definite", "hamiltonians", 0.0 if min(pd) > 0 else 1.0, 0.5))
    transport, shift_res = [], []
    for p in sample:
        d = derive(p)
        hf = hamiltonians.build("H_final", p, d)
        ha = hamiltonians.build("H_augmented", p)
        hc = hamiltonians.build("H_commuting", p, d)
        t2inv = np.linalg.inv(transforms.t2_map(p.eta).matrix)
        transport.append(np.max(np.abs(hf.matrix - t2inv.T @ ha.matrix @ t2inv)) / np.max(np.abs(hf.matrix)))
        xcm = transforms.xc_shift(p.theta, p.hbar).matrix
        shift_res.append(np.max(np.abs(hc.matrix - xcm.T @ hf.matrix @ xcm)) / np.max(np.abs(hc.matrix)))
    checks.append(_check("final_equals_augmented_through_t2", "hamiltonians", max(transport), tol["identity"]))
    checks.append(_check("commuting_equals_final_through_shift", "hamiltonians", max(shift_res), tol["identity"]))

    # spectra
    checks.append(_check("dual_route_agreement", "spectra", max(dual_route_error(p, fault) for p in sample), tol["agreement"]))
    checks.append(_check("lambda_closure_residual", "spectra", max(spectra.canonical_spectrum(p).lambda_residual for p in sample), tol["lambda"]))
    checks.append(_check("transported_cross_entries", "spectra", max(spectra.quadform_diag_check(p)["relative"] for p in sample), tol["cross"]))
    checks.append(_check("vieta_sum_product", "spectra", max(max(spectra.vieta_residuals(derive(p))) for p in sample), tol["identity"]))
    lim = []
    for g, w, th in rng.uniform([0.0, 0.5, 0.0], [1.0, 2.0, 0.5], size=(50, 3)):
        p = SystemParams(gamma=g, omega=w, theta=th)
        lim.append(spectra.bateman_limit_spectrum(p, [0.0])[0]["error"] / w**2)
    checks.append(_check("bateman_limit_identity", "spectra", max(lim), tol["limit"]))

    # dynamics
    checks.append(_check("companion_oracle", "dynamics", max(oracle_error(p) for p in sample), tol["oracle"]))
    collapse = []
    for p in sample[:20]:
        q = p.with_(theta=0.0)
        a = dynamics.build_model("NC_EFFECTIVE", q).A
        b = dynamics.build_model("COMMUTATIVE_LIMIT", q).A
        collapse.append(np.max(np.abs(a - b)))
    checks.append(_check("commutative_collapse", "dynamics", max(collapse), 1e-14))
    limit_a = []
    for p in sample[:20]:
        q = p.with_(epsilon=0.0, eta=0.0)
        a = dynamics.build_model("NC_XY_PRELIMIT", q).A
        b = dynamics.build_model("BATEMAN_RENORMALIZED", q).A
        limit_a.append(np.max(np.abs(a - b)))
    checks.append(_check("prelimit_collapse", "dynamics", max(limit_a), 1e-14))
    m = dynamics.build_model("NC_EFFECTIVE", P0, d0)
    tr = dynamics.propagate(m, [1.0, 0.0, 0.0, 0.5], np.linspace(0, 20, 201))
    checks.append(_check("propagate_matches_rk4", "dynamics", dynamics.rk4_deviation(tr), tol["rk4"]))

    # pathintegral
    circ, resid = 0.0, 0.0
    for n in (1, 2, 3, 8, 64, 512):
        a, b = circulant_match(n)
        circ, resid = max(circ, a), max(resid, b)
    checks.append(_check("circulant_eigenvalues", "pathintegral", circ, tol["circulant"]))
    checks.append(_check("circulant_eigenvectors", "pathintegral", resid, tol["circulant"]))
    c = pathintegral.CirculantModel.from_params(P0, 64, 0.01, d0)
    rhs = rng.normal(size=64) + 1j * rng.normal(size=64)
    x = pathintegral.inverse_action(c, rhs)
    checks.append(_check("circulant_inverse_action", "pathintegral", np.linalg.norm(pathintegral.build_matrix(c) @ x - rhs), tol["agreement"]))
    return checks


MODULES = ("params", "transforms", "hamiltonians", "spectra", "dynamics", "pathintegral")
