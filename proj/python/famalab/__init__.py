"""Outage analysis of cell-free MRT networks with FAMA users."""

import json

from ._famalab import (
    AnalyticResult,
    BesselKernel,
    ConfigError,
    DerivedParams,
    DomainError,
    NetworkConfig,
    NumericalError,
    OutageEstimate,
    QuadratureSettings,
    Scheme,
    correlation_mu2,
    derive,
    kappa_f,
    kappa_s,
    marcum_q,
    mean_ratio,
    outage_curve_mc,
    outage_f_fama,
    outage_f_fama_k1,
    outage_s_fama,
    outage_s_fama_k1,
    outage_snr,
    outage_snr_k1,
    reg_lower_gamma,
    variance_ratio_approx,
)
from . import _famalab


def run_sweep(spec):
    """Runs a sweep given as a dict; returns (csv_text, manifest_dict)."""
    csv_text, manifest = _famalab.run_sweep(json.dumps(spec))
    return csv_text, json.loads(manifest)


def validate(cfg, trials=1_000_000, seed=20240601, jobs=1):
    """Invariant battery for `cfg`; returns the report as a dict."""
    return json.loads(_famalab.validate(cfg, trials, seed, jobs))


def config_from_dict(d):
    return NetworkConfig.from_json(json.dumps(d))


def config_to_dict(cfg):
    return json.loads(cfg.to_json())
