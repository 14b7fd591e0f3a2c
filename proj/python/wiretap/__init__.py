"""Secrecy and reliability exponents of the wire-tap channel."""

from ._wiretap import (  # noqa: F401
    CapExceeded,
    Channel,
    Distribution,
    ExponentResult,
    JointXZ,
    SimResult,
    SpecError,
    WiretapInstance,
    corollary_exponent_pair,
    empirical_exponent,
    ensemble_mean_divergence,
    exhaustive_ensemble_mean,
    f0,
    g0,
    gallager_e0,
    gallager_er,
    kl_divergence,
    mutual_information,
    output_marginal,
    secrecy_exponent,
    secrecy_exponent_min_form,
)
