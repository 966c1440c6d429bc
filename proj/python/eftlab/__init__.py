"""Numerical toolkit for extinction-time analysis of semilinear parabolic
problems with degenerate absorption.

The heavy lifting lives in the compiled extension; this package re-exports
its surface.
"""

from ._core import (  # noqa: F401
    BoundResult,
    CriterionParams,
    Domain,
    GroundStateResult,
    IntegralVerdict,
    NFunction,
    PhiFn,
    PotentialSpec,
    SimResult,
    VerdictStatus,
    __version__,
    classify_improper_integral,
    default_tilde_alpha,
    eft_criterion,
    extinction_bound,
    holder_ratio,
    kv_agree,
    linear_lambda12,
    luxemburg_norm,
    measure_below,
    minimize_lambda1,
    nfn_inverse,
    ode_vanish_time,
    simulate,
    sphi_membership,
    tilde_transform,
)

__all__ = [
    "BoundResult",
    "CriterionParams",
    "Domain",
    "GroundStateResult",
    "IntegralVerdict",
    "NFunction",
    "PhiFn",
    "PotentialSpec",
    "SimResult",
    "VerdictStatus",
    "__version__",
    "classify_improper_integral",
    "default_tilde_alpha",
    "eft_criterion",
    "extinction_bound",
    "holder_ratio",
    "kv_agree",
    "linear_lambda12",
    "luxemburg_norm",
    "measure_below",
    "minimize_lambda1",
    "nfn_inverse",
    "ode_vanish_time",
    "simulate",
    "sphi_membership",
    "tilde_transform",
]
