"""Coupling parameters and the elementary relations derived from them.

Units are hbar = 2m = 1 with the box on (-1, 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

# Rough single-channel merging threshold; the solver computes a sharper value.
Z_CRIT_DEFAULT = 4.48


class InvalidParameters(ValueError):
    """Raised for couplings outside the domain where the spin symmetry exists."""


class Spin(IntEnum):
    PLUS = 1
    MINUS = -1


SPINS = (Spin.PLUS, Spin.MINUS)


def as_spin(sigma) -> Spin:
    try:
        return Spin(int(sigma))
    except ValueError:
        raise ValueError(f"spin projection must be +1 or -1, got {sigma!r}") from None


@dataclass(frozen=True)
class CouplingParams:
    """Channel couplings X, Y (both > 0) and the internal strength Z."""

    X: float
    Y: float
    Z: float = 0.0

    def __post_init__(self):
        for name in ("X", "Y", "Z"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParameters(f"{name} must be finite, got {value!r}")
        if self.X <= 0 or self.Y <= 0:
            raise InvalidParameters(
                f"X and Y must be strictly positive (got X={self.X}, Y={self.Y}); "
                "X -> 0 or Y -> 0 is the decoupling limit where omega = sqrt(X/Y) "
                "and the spin symmetry cease to exist"
            )

    @property
    def sqrt_xy(self) -> float:
        # product of roots avoids underflow of X*Y for tiny couplings
        return math.sqrt(self.X) * math.sqrt(self.Y)

    @property
    def omega(self) -> float:
        return omega(self)

    def z_eff(self, sigma) -> float:
        return z_eff(self, sigma)


def z_eff(params: CouplingParams, sigma) -> float:
    """Effective single-channel strength Z + sigma*sqrt(XY) of spin sector sigma."""
    return params.Z + int(as_spin(sigma)) * params.sqrt_xy


def omega(params: CouplingParams) -> float:
    if params.X <= 0 or params.Y <= 0:
        raise InvalidParameters("omega requires X > 0 and Y > 0")
    return math.sqrt(params.X / params.Y)


def is_physical(params: CouplingParams, z_crit: float = Z_CRIT_DEFAULT) -> bool:
    """True when sqrt(XY) + |Z| < z_crit, i.e. both |Z_eff(sigma)| stay below the merging value."""
    if z_crit <= 0:
        raise ValueError("z_crit must be positive")
    return params.sqrt_xy + abs(params.Z) < z_crit
