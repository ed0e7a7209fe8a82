"""Translating solitons of curvature flows and the critical curves they match."""

import json

from ._core import (
    CurvatureEnergy,
    CurvatureProfile,
    DegenerateEnergy,
    DomainError,
    EnergyKind,
    Error,
    FlowMode,
    NoSolitonError,
    ParseError,
    PlaneCurve,
    SolitonProblem,
    StepTooLarge,
    StiffnessError,
    curvature_range,
    curve_from_csv,
    el_residual,
    energy_from_flow,
    first_integral,
    first_variation,
    flow_from_energy,
    integrate_profile,
    polyline,
    reconstruct_curve,
    reference,
    soliton_residual,
)
from . import _core


def soliton(p=1.0, b=0.0, d=1.0, half_span=8.0, tol=1e-10, log=False):
    """Metadata of the soliton pipeline as a dict (same keys as the CLI)."""
    return json.loads(_core._soliton_json(log, p, b, d, half_span, tol))


def verify(curve, p=1.0, b=0.0, log=False):
    """Verification report for a sampled curve as a dict."""
    return json.loads(_core._verify_json(curve, log, p, b))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
