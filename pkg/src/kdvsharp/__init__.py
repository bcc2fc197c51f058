"""Numerical verification of weighted dispersive estimates for the Airy (linear KdV) group."""

from ._kernels import BACKEND
from .airy import AiryEvaluation, AiryExtremum, airy_ai, find_airy_max, verify_decay_envelopes
from .grid import GridFunction, GridSpec
from .propagator import PropagatorParams, j_operator, kdv_group, schrodinger_group
from .reports import EstimateReport, SweepResult

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AiryEvaluation",
    "AiryExtremum",
    "EstimateReport",
    "GridFunction",
    "GridSpec",
    "PropagatorParams",
    "SweepResult",
    "airy_ai",
    "find_airy_max",
    "j_operator",
    "kdv_group",
    "schrodinger_group",
    "verify_decay_envelopes",
]
