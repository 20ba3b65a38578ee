"""Real roots of the secular equation s sin 2s + t sinh 2t = 0 on the branch 2st = Z_eff.

Every root lives in a lobe (m + 1/2)pi <= s <= (m + 1)pi where sin 2s <= 0; elsewhere
both terms are non-negative.  Lobe m holds levels n = 2m (near the left edge) and
n = 2m + 1 (near the right edge).  As |Z_eff| grows the two roots approach each other,
become tangent and leave the real axis together, so the pair is either fully present
or fully lost.

Roots are located in the offset coordinate q = Q_n, s = ((n + 1)pi + (-1)^n q) / 2,
where the equation reads

    sin q = t sinh(2t) / s.

This form has no cancellation for small q, so Q_n is resolved to full relative
precision even at high n, where the absolute shift of s is far below the rounding
of s itself.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .model import CouplingParams, Spin, SPINS, as_spin, z_eff

DEFAULT_TOL = 1e-12
SCAN_POINTS = 64
Z_SEARCH_BOUND = 50.0

# Single-channel merging value of |Z_eff| for the (0, 1) pair, from a 40-digit
# solve of f = f' = 0; see tests/test_secular.py for the oracle.
Z_CRIT = 4.4753086021932552


class RootNotFound(RuntimeError):
    """No real root in the level's lobe: the pair has complexified."""

    def __init__(self, n, sigma, z_eff_value):
        self.n = n
        self.sigma = sigma
        self.z_eff = z_eff_value
        pair = (n - n % 2, n - n % 2 + 1)
        super().__init__(
            f"level n={n} (sigma={int(sigma):+d}) has no real root at Z_eff={z_eff_value:g}; "
            f"pair {pair} has merged"
        )


class NoMerge(RuntimeError):
    pass


@dataclass(frozen=True)
class LevelRoot:
    n: int
    sigma: Spin
    s: float
    t: float
    q: float
    z_eff: float

    @property
    def E(self) -> float:
        return self.s * self.s - self.t * self.t

    @property
    def kappa(self) -> complex:
        return complex(self.s, -self.t)


@dataclass
class SpectrumResult:
    params: CouplingParams
    levels: list
    physical: bool
    n_max: int
    first_complex_pair: tuple | None = None  # (n, n+1, sigma)
    failures: list = field(default_factory=list)

    def energies(self, sigma) -> list:
        sigma = as_spin(sigma)
        return [lv.E for lv in sorted(self.levels, key=lambda r: r.n) if lv.sigma == sigma]


@dataclass(frozen=True)
class MergeEvent:
    pair: tuple
    sigma: Spin
    z_critical: float
    s_merge: float
    xy_product: float = 0.0

    @property
    def critical_z(self) -> float:
        """Value of Z at which the spectrum stops being real for this XY."""
        return self.z_critical - math.sqrt(self.xy_product)


def secular_residual(s: float, z_eff_value: float) -> float:
    if not s > 0:
        raise ValueError(f"s must be positive, got {s!r}")
    t = z_eff_value / (2.0 * s)
    return s * math.sin(2.0 * s) + t * math.sinh(2.0 * t)


def _offset_function(n: int, z_abs: float) -> Callable[[float], float]:
    centre2 = (n + 1) * math.pi
    tau = 1.0 if n % 2 == 0 else -1.0

    def g(q):
        s = 0.5 * (centre2 + tau * q)
        t = z_abs / (2.0 * s)
        return math.sin(q) - t * math.sinh(2.0 * t) / s

    return g


def _lobe_peak(g: Callable[[float], float]) -> tuple[float, float]:
    """Maximum of g over q in [0, pi]: coarse scan then bounded Brent refinement."""
    qs = np.linspace(0.0, math.pi, SCAN_POINTS + 1)
    values = [g(q) for q in qs]
    i = int(np.argmax(values))
    lo, hi = qs[max(i - 1, 0)], qs[min(i + 1, SCAN_POINTS)]
    res = minimize_scalar(lambda q: -g(q), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-13})
    if -res.fun >= values[i]:
        return float(res.x), float(-res.fun)
    return float(qs[i]), float(values[i])


def pair_exists(n: int, z_eff_value: float) -> bool:
    """Whether the lobe containing level n still holds its two real roots."""
    z_abs = abs(z_eff_value)
    if z_abs == 0.0:
        return True
    return _lobe_peak(_offset_function(n, z_abs))[1] > 0.0


def solve_root(n: int, z_eff_value: float, tol: float = DEFAULT_TOL,
               sigma=Spin.PLUS) -> LevelRoot:
    """Solve level n on the branch t = z_eff/(2s); tol is the absolute tolerance in s."""
    if n < 0:
        raise ValueError("level index must be non-negative")
    if tol <= 0:
        raise ValueError("tol must be positive")
    sigma = as_spin(sigma)
    centre2 = (n + 1) * math.pi
    tau = 1 if n % 2 == 0 else -1
    z_abs = abs(z_eff_value)
    if z_abs == 0.0:
        q = 0.0
    else:
        g = _offset_function(n, z_abs)
        q_peak, peak = _lobe_peak(g)
        if not peak > 0.0:
            raise RootNotFound(n, sigma, z_eff_value)
        # g(0) = -t sinh(2t)/s <= 0 and g(q_peak) > 0
        q = brentq(g, 0.0, q_peak, xtol=2.0 * tol, rtol=4 * np.finfo(float).eps, maxiter=200)
    s = 0.5 * (centre2 + tau * q)
    t = z_eff_value / (2.0 * s)
    return LevelRoot(n=n, sigma=sigma, s=s, t=t, q=q, z_eff=z_eff_value)


def solve_level(n: int, sigma, params: CouplingParams, tol: float = DEFAULT_TOL) -> LevelRoot:
    sigma = as_spin(sigma)
    return solve_root(n, z_eff(params, sigma), tol=tol, sigma=sigma)


def solve_spectrum(params: CouplingParams, n_max: int, tol: float = DEFAULT_TOL) -> SpectrumResult:
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    levels, failures = [], []
    first = None
    for sigma in SPINS:
        for n in range(n_max + 1):
            try:
                levels.append(solve_level(n, sigma, params, tol))
            except RootNotFound as exc:
                failures.append(exc)
                lo = n - n % 2
                cand = (lo, lo + 1, int(sigma))
                if first is None or cand[0] < first[0] or (cand[0] == first[0] and cand[2] > first[2]):
                    first = cand
    levels.sort(key=lambda r: (r.E, -int(r.sigma)))
    return SpectrumResult(params=params, levels=levels, physical=not failures, n_max=n_max,
                          first_complex_pair=first, failures=failures)


def find_critical_z(xy_product: float = 0.0, pair: tuple = (0, 1), tol: float = DEFAULT_TOL,
                    z_bound: float = Z_SEARCH_BOUND) -> MergeEvent:
    """Locate the |Z_eff| where the given level pair coalesces.

    The lobe peak max_q g(q; z) decreases monotonically in |z| (the hyperbolic term
    grows pointwise), so its zero is bracketed and found by Brent's method.
    """
    if xy_product < 0:
        raise ValueError("xy_product must be >= 0")
    n, m = pair
    if m != n + 1 or n < 0:
        raise ValueError(f"pair must be adjacent levels (n, n+1), got {pair!r}")
    if n % 2 == 1:
        raise NoMerge(f"levels {n} and {m} sit in different lobes separated by s = "
                      f"{(n + 1) * math.pi / 2:.6g} and cannot coalesce")

    def peak(z):
        return _lobe_peak(_offset_function(n, z))[1]

    if peak(z_bound) > 0:
        raise NoMerge(f"pair {pair} is still real at |Z_eff| = {z_bound}")
    z_c = brentq(peak, 0.0, z_bound, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500)
    q_star, _ = _lobe_peak(_offset_function(n, z_c))
    s_merge = 0.5 * ((n + 1) * math.pi + q_star)
    return MergeEvent(pair=(n, m), sigma=Spin.PLUS, z_critical=z_c, s_merge=s_merge,
                      xy_product=xy_product)


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("PTWELL_THREADS", "0") or 0)
    if threads <= 0:
        threads = os.cpu_count() or 1
    return threads


def parallel_map(fn: Callable, items: Iterable, threads: int | None = None) -> list:
    """Order-preserving map; PTWELL_THREADS caps the worker count (0 = auto)."""
    items = list(items)
    workers = min(_threads(threads), max(len(items), 1))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class PhaseRow:
    xy: float
    z: float
    physical: bool
    first_complex_pair: tuple | None  # (n, n+1, sigma)


def _phase_point(xy: float, z: float, n_max: int) -> PhaseRow:
    root_xy = math.sqrt(xy)
    first = None
    for lobe_start in range(0, n_max + 1, 2):
        for sigma in SPINS:
            if not pair_exists(lobe_start, z + int(sigma) * root_xy):
                first = (lobe_start, lobe_start + 1, int(sigma))
                break
        if first is not None:
            break
    return PhaseRow(xy=xy, z=z, physical=first is None, first_complex_pair=first)


def phase_scan(xy_grid: Sequence[float], z_grid: Sequence[float], n_max: int = 1,
               threads: int | None = None) -> list:
    if any(xy < 0 for xy in xy_grid):
        raise ValueError("xy values must be non-negative")
    points = [(xy, z) for xy in xy_grid for z in z_grid]
    return parallel_map(lambda p: _phase_point(p[0], p[1], n_max), points, threads)


def extract_boundary(rows: Sequence[PhaseRow]) -> list:
    """Per xy, the midpoint between the last physical z >= 0 and the first lost one.

    Returns (xy, z_star) pairs; z_star is nan when no transition lies on the grid.
    """
    by_xy: dict = {}
    for row in rows:
        by_xy.setdefault(row.xy, []).append(row)
    out = []
    for xy in sorted(by_xy):
        col = sorted((r for r in by_xy[xy] if r.z >= 0), key=lambda r: r.z)
        z_star = math.nan
        for a, b in zip(col, col[1:]):
            if a.physical and not b.physical:
                z_star = 0.5 * (a.z + b.z)
                break
        out.append((xy, z_star))
    return out
