"""Closed-form effective theory for both phases."""

from .asymptotics import excitation_energy, gap_asymptote, ground_energy, jz_thermo
from .critical import CriticalPoints, at_critical_point, critical_couplings
from .normal import NormalPhaseResult, normal_phase
from .superradiant import (
    SuperradiantConstants,
    SuperradiantResult,
    displacement_beta,
    superradiant_constants,
    superradiant_phase,
)

__all__ = [
    "CriticalPoints",
    "critical_couplings",
    "at_critical_point",
    "NormalPhaseResult",
    "normal_phase",
    "SuperradiantConstants",
    "SuperradiantResult",
    "displacement_beta",
    "superradiant_constants",
    "superradiant_phase",
    "jz_thermo",
    "gap_asymptote",
    "excitation_energy",
    "ground_energy",
]
