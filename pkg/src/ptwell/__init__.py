"""Coupled-channel PT-symmetric square well: exact spectrum and metric operators."""
from .model import CouplingParams, InvalidParameters, Spin, is_physical, z_eff
from .secular import (Z_CRIT, LevelRoot, NoMerge, RootNotFound, SpectrumResult,
                      find_critical_z, phase_scan, solve_level, solve_spectrum)

__version__ = "0.1.0"

__all__ = [
    "CouplingParams", "InvalidParameters", "Spin", "is_physical", "z_eff",
    "Z_CRIT", "LevelRoot", "NoMerge", "RootNotFound", "SpectrumResult",
    "find_critical_z", "phase_scan", "solve_level", "solve_spectrum",
]
