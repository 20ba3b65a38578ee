"""Explicit bound states of the reduced single-channel equation and their overlaps.

phi(x) = A sin(kappa (x + 1)) on (-1, 0) and C sin(kappa* (1 - x)) on (0, 1), with
kappa = s - i t.  The second channel is chi = sigma * omega * phi.  The full
two-channel ket used for overlaps is (sqrt(Y) phi, sigma sqrt(X) phi), which is
sqrt(Y) times (phi, chi).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .model import CouplingParams, Spin, as_spin
from .secular import LevelRoot, solve_level

ACCIDENTAL_NODE_THRESHOLD = 1e-12
SMALL_T = 1e-6


class DegenerateMatching(ArithmeticError):
    pass


class AccidentalNode(ArithmeticError):
    """Parity self-overlap too small to fix a quasi-parity sign."""


@dataclass(frozen=True)
class BoundState:
    root: LevelRoot
    kappa: complex
    A: complex
    C: complex

    @property
    def sigma(self) -> Spin:
        return self.root.sigma

    @property
    def n(self) -> int:
        return self.root.n

    @property
    def E(self) -> float:
        return self.root.E

    def continuity_residuals(self) -> tuple[float, float]:
        k, kc = self.kappa, self.kappa.conjugate()
        r0 = abs(self.A * cmath.sin(k) - self.C * cmath.sin(kc))
        r1 = abs(self.A * k * cmath.cos(k) + self.C * kc * cmath.cos(kc))
        return r0, r1


def match_amplitudes(root: LevelRoot, C: float = 1.0) -> BoundState:
    """Left amplitude from the matching conditions at x = 0, for real positive C.

    Value matching (A = C sin k*/sin k) degenerates when sin k -> 0 (odd n near the
    Hermitian limit) and slope matching (A = -C k* cos k*/(k cos k)) when cos k -> 0
    (even n); on a root both agree, so the better conditioned one is used.
    """
    k = root.kappa
    kc = k.conjugate()
    sk, ck = cmath.sin(k), cmath.cos(k)
    if max(abs(sk), abs(ck)) < 1e-14:
        raise DegenerateMatching(f"sin and cos of kappa={k} both vanish")
    if abs(sk) >= abs(ck):
        ratio = cmath.sin(kc) / sk
    else:
        ratio = -(kc * cmath.cos(kc)) / (k * ck)
    return BoundState(root=root, kappa=k, A=C * ratio, C=complex(C))


def reduced_wavefunction(state: BoundState, x):
    """phi alone, vectorised over x."""
    x = np.asarray(x, dtype=float)
    k = state.kappa
    phi = np.where(x < 0, state.A * np.sin(k * (x + 1.0)),
                   state.C * np.sin(k.conjugate() * (1.0 - x)))
    return complex(phi) if phi.ndim == 0 else phi


def eval_wavefunction(state: BoundState, params: CouplingParams, x):
    """(phi, chi) at x in [-1, 1]; vectorised over x."""
    if np.any(np.abs(np.asarray(x, dtype=float)) > 1.0):
        raise ValueError("x must lie in [-1, 1]")
    phi = reduced_wavefunction(state, x)
    return phi, int(state.sigma) * params.omega * phi


def eval_derivative(state: BoundState, x):
    x = np.asarray(x, dtype=float)
    k = state.kappa
    kc = k.conjugate()
    left = state.A * k * np.cos(k * (x + 1.0))
    right = -state.C * kc * np.cos(kc * (1.0 - x))
    d = np.where(x < 0, left, right)
    return complex(d) if d.ndim == 0 else d


def parity_overlap(root: LevelRoot) -> float:
    """Closed form (1/2s) sin 2s cosh 2t - (1/2t) cos 2s sinh 2t.

    This equals the integral over (-1, 1) of sin(kappa*(x+1)) sin(kappa(1-x)), i.e. the
    left-branch expression continued across the whole box.  It agrees in sign and
    leading order with the true parity matrix element except near the merging point
    (see parity_inner_product).
    """
    s, t = root.s, root.t
    two_t = 2.0 * t
    if abs(t) < SMALL_T:
        sinhc = 1.0 + two_t**2 / 6.0 + two_t**4 / 120.0
    else:
        sinhc = math.sinh(two_t) / two_t
    return math.sin(2 * s) * math.cosh(two_t) / (2 * s) - math.cos(2 * s) * sinhc


def parity_inner_product(root: LevelRoot) -> float:
    """<phi|P|phi> / (A A*) for the matched state, P phi(x) = phi(-x).

    Equals 2 Re[(A/C) J] with J = int_0^1 sin^2(kappa u) du = 1/2 - sin(2 kappa)/(4 kappa)
    for real C (|A| = |C| on every root).
    """
    st = match_amplitudes(root)
    k = st.kappa
    J = 0.5 - cmath.sin(2 * k) / (4 * k)
    return 2.0 * (st.A / st.C * J).real


def quasi_parity(root: LevelRoot) -> int:
    """sigma * sign<n|P|n>, the sign making the special self-overlap positive."""
    p = parity_inner_product(root)
    if abs(p) < ACCIDENTAL_NODE_THRESHOLD:
        raise AccidentalNode(f"<n|P|n> = {p:.3e} at n={root.n}, sigma={int(root.sigma):+d}")
    return int(root.sigma) * (1 if p > 0 else -1)


def self_overlap(state: BoundState, params: CouplingParams, rho: int) -> float:
    """<<E|E>> = 2 sigma rho sqrt(XY) <n|P|n> for the ket (sqrt(Y) phi, sigma sqrt(X) phi)."""
    if rho not in (1, -1):
        raise ValueError("rho must be +1 or -1")
    aa = abs(state.A) * abs(state.C)
    return 2.0 * int(state.sigma) * rho * params.sqrt_xy * aa * parity_inner_product(state.root)


def normalize_special(state: BoundState, params: CouplingParams) -> BoundState:
    """Rescale C (kept real positive) so the special self-overlap is exactly one."""
    p = parity_inner_product(state.root)
    if abs(p) < ACCIDENTAL_NODE_THRESHOLD:
        raise AccidentalNode(f"<n|P|n> = {p:.3e} at n={state.n}")
    c = 1.0 / math.sqrt(2.0 * params.sqrt_xy * abs(p))
    ratio = state.A / state.C
    return replace(state, A=c * ratio, C=complex(c))


def bound_state(n: int, sigma, params: CouplingParams, tol: float = 1e-12) -> BoundState:
    """Solved, matched and special-normalized state |E_n, sigma>."""
    root = solve_level(n, as_spin(sigma), params, tol)
    return normalize_special(match_amplitudes(root), params)


def wronskian(plus: BoundState, minus: BoundState, x):
    """phi_+ phi_-' - phi_+' phi_- at x."""
    pp = reduced_wavefunction(plus, x)
    pm = reduced_wavefunction(minus, x)
    return pp * eval_derivative(minus, x) - eval_derivative(plus, x) * pm


def crossing_pair(params: CouplingParams, n: int) -> tuple[BoundState, BoundState]:
    if params.Z != 0.0:
        raise ValueError("the spin sectors cross only at Z = 0")
    return bound_state(n, Spin.PLUS, params), bound_state(n, Spin.MINUS, params)


def wronskian_at_crossing(params: CouplingParams, n: int) -> complex:
    """Closed form A_- C_+ k* sin 2k* of the degenerate pair's Wronskian at x = 0.

    k = s - i t_+ belongs to the sigma = +1 state; the sigma = -1 partner has t_- = -t_+.
    The Wronskian is not constant in x because the two reduced potentials differ.
    """
    plus, minus = crossing_pair(params, n)
    kc = plus.kappa.conjugate()
    return minus.A * plus.C * kc * cmath.sin(2 * kc)


def ground_state_expansion(params: CouplingParams, sigma) -> float:
    """E_0 to third order with Z_eff = O(lambda), Z = O(lambda^2).

    From E = s^2 - t^2, s = pi/2 + Q_0/2, Q_0 ~ 4 Z_eff^2/pi^3 and t = Z_eff/(2s):
    E_0 ~ pi^2/4 + Z_eff^2/pi^2, with Z^2 dropped as fourth order.
    """
    sigma = int(as_spin(sigma))
    pi2 = math.pi**2
    return pi2 / 4 + params.X * params.Y / pi2 + 2.0 * sigma * params.Z * params.sqrt_xy / pi2


def norm_integral(root: LevelRoot) -> float:
    """<phi|phi> / (A A*) = sinh(2t)/(2t) - sin(2s)/(2s)."""
    s, t = root.s, root.t
    two_t = 2.0 * t
    sinhc = 1.0 + two_t**2 / 6.0 + two_t**4 / 120.0 if abs(t) < SMALL_T else math.sinh(two_t) / two_t
    return sinhc - math.sin(2 * s) / (2 * s)


def normalized_parity(root: LevelRoot) -> float:
    """<n|P|n> / <n|n>, which tends to (-1)^n for high excitations."""
    return parity_inner_product(root) / norm_integral(root)
