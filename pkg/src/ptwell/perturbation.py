"""Weak-coupling / high-excitation series for the root offset Q_n.

With L = (n+1)pi, rho = 1/L, alpha = 2 Z_eff / L, beta = alpha rho and tau = (-1)^n,
the offset behaves as Q = alpha beta Sigma(alpha, beta) where Sigma is a double
power series in alpha^2 and beta^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import CouplingParams, SPINS, as_spin, z_eff
from .secular import solve_root


@dataclass(frozen=True)
class SeriesParams:
    rho: float
    alpha: float
    beta: float
    tau: int

    @classmethod
    def from_level(cls, n: int, z_eff_value: float) -> "SeriesParams":
        L = (n + 1) * math.pi
        alpha = 2.0 * z_eff_value / L
        return cls(rho=1.0 / L, alpha=alpha, beta=alpha / L, tau=1 if n % 2 == 0 else -1)

    @property
    def L(self) -> float:
        return 1.0 / self.rho


@dataclass(frozen=True)
class SigmaCoefficients:
    """Coefficients c[(k, l)] of alpha^(2k) beta^(2l), k + l <= 2, exact rationals."""

    tau: int

    @property
    def table(self) -> dict:
        tau = self.tau
        return {
            (0, 0): Fraction(1),
            (1, 0): Fraction(1, 6),
            (0, 1): Fraction(-3 * tau),
            (2, 0): Fraction(1, 120),
            (1, 1): Fraction(1 - 8 * tau, 6),
            (0, 2): Fraction(15),
        }


def q_series(n: int, z_eff_value: float, order: int = 2) -> float:
    """Q_n to first (Z_eff^2) or second (Z_eff^4) order."""
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    L = (n + 1) * math.pi
    z2 = z_eff_value * z_eff_value
    q = 4.0 * z2 / L**3
    if order == 2:
        sign = -1.0 if n % 2 == 0 else 1.0  # (-1)^(n+1)
        q += 8.0 * z2 * z2 / (3.0 * L**5) * (1.0 + 18.0 * sign / L**2)
    return q


def q_series_general(series: SeriesParams, coeffs: SigmaCoefficients | None = None,
                     max_order: int = 2) -> float:
    """alpha*beta*Sigma with Sigma truncated to k + l <= max_order."""
    if coeffs is None:
        coeffs = SigmaCoefficients(series.tau)
    if coeffs.tau != series.tau:
        raise ValueError("coefficient table built for the other parity of n")
    a2, b2 = series.alpha**2, series.beta**2
    sigma_sum = 0.0
    for (k, l), c in coeffs.table.items():
        if k + l <= max_order:
            sigma_sum += float(c) * a2**k * b2**l
    return series.alpha * series.beta * sigma_sum


@dataclass(frozen=True)
class PerturbationRow:
    n: int
    sigma: int
    q_exact: float
    q_order1: float
    q_order2: float

    @property
    def err1(self) -> float:
        return abs(self.q_exact - self.q_order1)

    @property
    def err2(self) -> float:
        return abs(self.q_exact - self.q_order2)


def compare_perturbation_exact(params: CouplingParams, n_range, sigmas=SPINS,
                               tol: float = 1e-18) -> list:
    """Exact Q_n against the two truncations for every (n, sigma) requested.

    The default tol is far below double spacing of s; the root is then limited only by
    the relative precision of the offset coordinate, which the high-n tail needs.
    """
    rows = []
    for sigma in sigmas:
        ze = z_eff(params, as_spin(sigma))
        rows.extend(compare_zeff(ze, n_range, tol=tol, sigma=int(sigma)))
    return rows


def compare_zeff(z_eff_value: float, n_range, tol: float = 1e-18, sigma: int = 1) -> list:
    rows = []
    for n in n_range:
        root = solve_root(n, z_eff_value, tol=tol, sigma=sigma)
        rows.append(PerturbationRow(n=n, sigma=sigma, q_exact=root.q,
                                    q_order1=q_series(n, z_eff_value, 1),
                                    q_order2=q_series(n, z_eff_value, 2)))
    return rows
