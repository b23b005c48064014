"""
Time-sliced momentum kernel of the noncommutative path integral.

After slicing time into ``N`` steps of size ``eps_step`` the momentum
integrals are Gaussian with matrix

    M[l, r] = sigma * delta(l, r) + (theta / 2 hbar^2) * delta(l + 1, r)

completed cyclically (``M[N-1, 0]`` carries the band too), which makes ``M``
circulant and diagonal in the discrete Fourier basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import DerivedParams, DomainError, SingularityError, SystemParams, derive


@dataclass(frozen=True)
class CirculantModel:
    N: int
    eps_step: float
    sigma: complex
    offdiag: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise DomainError(f"N must be a positive integer, got {self.N}")

    @classmethod
    def from_params(cls, p: SystemParams, N: int, eps_step: float, d: DerivedParams | None = None):
        """``sigma = -(i eps / (2 mu hbar) + theta / (2 hbar^2))`` with real ``mu``."""
        if not p.positive_regime:
            raise DomainError("the sliced kernel uses the real mass of the positive regime")
        d = derive(p) if d is None else d
        mu = d.mu.real
        sigma = -(1j * eps_step / (2 * mu * p.hbar) + p.theta / (2 * p.hbar**2))
        return cls(int(N), float(eps_step), complex(sigma), p.theta / (2 * p.hbar**2))


def build_matrix(c: CirculantModel) -> np.ndarray:
    n = c.N
    m = np.zeros((n, n), dtype=complex)
    idx = np.arange(n)
    m[idx, idx] += c.sigma
    m[idx, (idx + 1) % n] += c.offdiag
    return m


def fourier_phases(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def closed_form_eigs(c: CirculantModel) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues ``sigma + offdiag * exp(2 pi i k / N)`` and Fourier eigenvectors.

    Column ``k`` of the returned matrix is
    ``u_k = N^{-1/2} (1, e^{2 pi i k/N}, e^{4 pi i k/N}, ...)``.
    """
    n = c.N
    lam = c.sigma + c.offdiag * fourier_phases(n)
    j = np.arange(n)
    vecs = np.exp(2j * np.pi * np.outer(j, j) / n) / np.sqrt(n)
    return lam, vecs


def inverse_action(c: CirculantModel, rhs) -> np.ndarray:
    """Solve ``M x = rhs`` by dividing by the eigenvalues in Fourier space."""
    lam, _ = closed_form_eigs(c)
    if np.min(np.abs(lam)) <= 1e-14 * abs(c.sigma):
        raise SingularityError("circulant kernel has a (near) zero eigenvalue")
    rhs = np.asarray(rhs, dtype=complex)
    # u_k has phase +2 pi i j k / N, so coefficients are the forward FFT
    return np.fft.ifft(np.fft.fft(rhs) / lam)
