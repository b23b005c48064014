"""Noncommutative Bateman oscillator: duality map, dual-route spectra and linear dynamics."""

from .params import (
    DerivedParams,
    DomainError,
    DualityReport,
    Regime,
    SingularityError,
    SystemParams,
    bateman_roots,
    derive,
    dirac_bracket,
    duality_report,
    gamma_renormalized,
    theta_star,
    validate,
)
from .spectra import canonical_spectrum, pathintegral_spectrum, spectrum_report

__version__ = "0.1.0"
