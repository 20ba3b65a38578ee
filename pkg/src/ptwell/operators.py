"""Partitioned grid representations of H, Omega, theta, Q and Theta, and their identities.

Discretisation: N interior nodes x_i = -1 + i h, h = 2/(N+1), three-point second
difference with Dirichlet ends.  N is even, so x = 0 falls between nodes and the
step potentials are exactly antisymmetric under index reversal; pseudo-Hermiticity
H^dag theta = theta H is then an exact matrix identity.

Inner products carry the quadrature weight h: <a|b> = h a^dag b.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.linalg import solve_banded

from .jacobi import jacobi_eigvalsh
from .model import CouplingParams, SPINS, Spin, as_spin
from .states import (BoundState, bound_state, parity_inner_product, quasi_parity,
                     reduced_wavefunction, self_overlap)

DEFAULT_GRID_N = 200


class InsufficientBasis(ValueError):
    pass


class NonPositiveCoefficient(ValueError):
    pass


class BasisMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    N: int = DEFAULT_GRID_N

    def __post_init__(self):
        if self.N < 2 or self.N % 2:
            raise ValueError(f"grid size must be even and >= 2, got {self.N}")

    @property
    def h(self) -> float:
        return 2.0 / (self.N + 1)

    @property
    def nodes(self) -> np.ndarray:
        return -1.0 + self.h * np.arange(1, self.N + 1)

    @property
    def left(self) -> np.ndarray:
        """+1 on nodes with x < 0, -1 on x > 0."""
        return np.where(self.nodes < 0, 1.0, -1.0)

    @property
    def parity(self) -> np.ndarray:
        return np.eye(self.N)[::-1]


@dataclass
class BlockOperator:
    """2x2-partitioned operator stored as one 2N x 2N array."""

    data: np.ndarray
    basis: str = "grid"

    @property
    def N(self) -> int:
        return self.data.shape[0] // 2

    def block(self, i: int, j: int) -> np.ndarray:
        N = self.N
        return self.data[i * N:(i + 1) * N, j * N:(j + 1) * N]

    ul = property(lambda self: self.block(0, 0))
    ur = property(lambda self: self.block(0, 1))
    ll = property(lambda self: self.block(1, 0))
    lr = property(lambda self: self.block(1, 1))

    @classmethod
    def from_blocks(cls, ul, ur, ll, lr, basis="grid") -> "BlockOperator":
        return cls(np.block([[ul, ur], [ll, lr]]).astype(complex), basis)

    def _check(self, other):
        if isinstance(other, BlockOperator):
            if other.basis != self.basis:
                raise BasisMismatch(f"{self.basis} vs {other.basis}")
            return other.data
        return other

    def __matmul__(self, other):
        res = self.data @ self._check(other)
        return BlockOperator(res, self.basis) if isinstance(other, BlockOperator) else res

    def __add__(self, other):
        return BlockOperator(self.data + self._check(other), self.basis)

    def __sub__(self, other):
        return BlockOperator(self.data - self._check(other), self.basis)

    def __mul__(self, scalar):
        return BlockOperator(self.data * scalar, self.basis)

    __rmul__ = __mul__

    @property
    def dag(self) -> "BlockOperator":
        return BlockOperator(self.data.conj().T, self.basis)

    @classmethod
    def identity(cls, N: int, basis="grid") -> "BlockOperator":
        return cls(np.eye(2 * N, dtype=complex), basis)


# -- norms and reports ---------------------------------------------------------------

def operator_norm(a, method: str = "max", iterations: int = 200) -> float:
    """Max-absolute-entry (default) or power-iteration estimate of the spectral norm."""
    a = a.data if isinstance(a, BlockOperator) else np.asarray(a)
    if a.size == 0:
        return 0.0
    if method == "max":
        return float(np.abs(a).max())
    if method != "power":
        raise ValueError(f"unknown norm method {method!r}")
    rng = np.random.default_rng(12345)
    v = rng.standard_normal(a.shape[1]) + 1j * rng.standard_normal(a.shape[1])
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(iterations):
        w = a.conj().T @ (a @ v)
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        v = w / nw
        est = math.sqrt(nw)
    return est


@dataclass
class ReportEntry:
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tolerance)


@dataclass
class VerificationReport:
    norm: str = "max"
    entries: dict = field(default_factory=dict)

    def add(self, name: str, residual: float, tolerance: float) -> ReportEntry:
        entry = ReportEntry(float(residual), float(tolerance))
        self.entries[name] = entry
        return entry

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.entries.update(other.entries)
        return self

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries.values())

    def failures(self) -> list:
        return [k for k, e in self.entries.items() if not e.passed]

    def to_dict(self) -> dict:
        return {
            "norm": self.norm,
            "passed": self.passed,
            "identities": {k: {"residual": e.residual, "tolerance": e.tolerance, "passed": e.passed}
                           for k, e in self.entries.items()},
        }


# -- operator builders --------------------------------------------------------------

def kinetic_matrix(grid: Grid) -> np.ndarray:
    N, h = grid.N, grid.h
    return (2.0 * np.eye(N) - np.eye(N, k=1) - np.eye(N, k=-1)) / h**2


def build_hamiltonian(params: CouplingParams, grid: Grid) -> BlockOperator:
    """H = -d^2/dx^2 (both channels) + [[V_a, W_b], [W_a, V_b]] with imaginary steps."""
    K = kinetic_matrix(grid)
    step = grid.left
    V = np.diag(1j * params.Z * step)
    Wa = np.diag(1j * params.X * step)
    Wb = np.diag(1j * params.Y * step)
    return BlockOperator.from_blocks(K + V, Wb, Wa, K + V)


def build_omega(params: CouplingParams, grid: Grid) -> BlockOperator:
    I = np.eye(grid.N)
    w = params.omega
    return BlockOperator.from_blocks(0 * I, I / w, w * I, 0 * I)


def build_theta(grid: Grid) -> BlockOperator:
    P = grid.parity
    return BlockOperator.from_blocks(0 * P, P, P, 0 * P)


def spin_projector(params: CouplingParams, grid: Grid, sigma) -> BlockOperator:
    sigma = int(as_spin(sigma))
    I = BlockOperator.identity(grid.N)
    return (I + build_omega(params, grid) * sigma) * 0.5


def reduced_hamiltonian(params: CouplingParams, grid: Grid, sigma) -> np.ndarray:
    """H(sigma) = K + V_a + sigma*omega*W_b acting on the first channel."""
    H = build_hamiltonian(params, grid)
    return H.ul + int(as_spin(sigma)) * params.omega * H.ur


def block_diag(a: np.ndarray) -> BlockOperator:
    z = np.zeros_like(a)
    return BlockOperator.from_blocks(a, z, z, a)


# -- discrete eigenbasis ------------------------------------------------------------

@dataclass
class GridState:
    n: int
    sigma: Spin
    E: float
    phi: np.ndarray  # first-channel component, N
    ket: np.ndarray  # (sqrt(Y) phi, sigma sqrt(X) phi), 2N
    rho: int
    analytic: BoundState
    residual: float


def _inverse_iteration(Hs: np.ndarray, P: np.ndarray, mu: float, x: np.ndarray,
                       max_iter: int = 50) -> tuple[complex, np.ndarray, float]:
    """Shifted inverse iteration with the two-sided (P-paired) Rayleigh quotient."""
    N = Hs.shape[0]
    diag, up, lo = np.diag(Hs), np.diag(Hs, 1), np.diag(Hs, -1)
    scale = np.abs(Hs).max()
    ab = np.zeros((3, N), dtype=complex)
    ab[0, 1:] = up
    ab[2, :-1] = lo
    x = x / np.linalg.norm(x)
    res = np.inf
    for _ in range(max_iter):
        ab[1] = diag - mu
        try:
            y = solve_banded((1, 1), ab, x)
        except np.linalg.LinAlgError:
            ab[1] = diag - mu * (1 + 1e-14)
            y = solve_banded((1, 1), ab, x)
        x = y / np.linalg.norm(y)
        Hx = Hs @ x
        px = P @ x
        mu = np.vdot(px, Hx) / np.vdot(px, x)
        res = np.linalg.norm(Hx - mu * x)
        if res <= 32 * np.finfo(float).eps * scale:
            break
    return mu, x, float(res)


@dataclass
class GridBasis:
    params: CouplingParams
    grid: Grid
    states: list

    @property
    def kets(self) -> np.ndarray:
        return np.column_stack([st.ket for st in self.states])

    @property
    def rho(self) -> np.ndarray:
        return np.array([st.rho for st in self.states], dtype=float)

    @property
    def energies(self) -> np.ndarray:
        return np.array([st.E for st in self.states])

    @property
    def sigmas(self) -> np.ndarray:
        return np.array([int(st.sigma) for st in self.states], dtype=float)

    def sector(self, sigma) -> list:
        sigma = as_spin(sigma)
        return [st for st in self.states if st.sigma == sigma]

    def with_rho(self, rho) -> "GridBasis":
        new = [GridState(**{**st.__dict__, "rho": int(r)}) for st, r in zip(self.states, rho)]
        return GridBasis(self.params, self.grid, new)


def sample_ket(state: BoundState, params: CouplingParams, grid: Grid) -> np.ndarray:
    """Analytic full-space ket (sqrt(Y) phi, sigma sqrt(X) phi) sampled on the nodes."""
    phi = reduced_wavefunction(state, grid.nodes)
    return np.concatenate([math.sqrt(params.Y) * phi, int(state.sigma) * math.sqrt(params.X) * phi])


def grid_eigenbasis(params: CouplingParams, grid: Grid, n_max: int) -> GridBasis:
    """Exact eigenvectors of the discrete H for n <= n_max, both spins.

    Each is obtained by inverse iteration on the tridiagonal reduced operator seeded
    with the analytic state, then phase-aligned with it (C real positive) and
    special-normalised so that h rho <r|theta|r> = 1.
    """
    P = grid.parity
    h = grid.h
    sxy = params.sqrt_xy
    out = []
    for sigma in SPINS:
        Hs = reduced_hamiltonian(params, grid, sigma)
        for n in range(n_max + 1):
            st = bound_state(n, sigma, params)
            seed = reduced_wavefunction(st, grid.nodes)
            mu, x, res = _inverse_iteration(Hs, P, st.E, seed)
            a = np.vdot(x, seed)
            x = x * (a / abs(a))
            c = (h * np.vdot(x, P @ x)).real
            rho = int(sigma) * (1 if c > 0 else -1)
            x = x / math.sqrt(2.0 * sxy * abs(c))
            ket = np.concatenate([math.sqrt(params.Y) * x, int(sigma) * math.sqrt(params.X) * x])
            out.append(GridState(n=n, sigma=sigma, E=float(mu.real), phi=x, ket=ket, rho=rho,
                                 analytic=st, residual=res))
    return GridBasis(params, grid, out)


def sampled_residual(state: BoundState, params: CouplingParams, grid: Grid,
                     skip_interface: bool = True) -> float:
    """||H psi - E psi|| / ||psi|| for the analytic state sampled on the nodes.

    The step at x = 0 puts a jump in psi'' between the two central nodes, where the
    three-point stencil has an O(1) local error; skipping them leaves the O(h^2) bulk.
    """
    H = build_hamiltonian(params, grid)
    psi = sample_ket(state, params, grid)
    r = H @ psi - state.E * psi
    if skip_interface:
        keep = np.ones(2 * grid.N, dtype=bool)
        for k in (grid.N // 2 - 1, grid.N // 2):
            keep[k] = keep[grid.N + k] = False
        r = r[keep]
    return float(np.linalg.norm(r) / np.linalg.norm(psi))


# -- basis-built operators ----------------------------------------------------------

def left_kets(basis: GridBasis) -> np.ndarray:
    """|E>> = theta |E> rho as columns."""
    theta = build_theta(basis.grid)
    return (theta.data @ basis.kets) * basis.rho


def pseudo_gram(basis: GridBasis) -> np.ndarray:
    """G[m, n] = <<E_m|E_n>."""
    return basis.grid.h * left_kets(basis).conj().T @ basis.kets


def spectral_operator(basis: GridBasis, values) -> BlockOperator:
    """sum |E> v <<E| / <<E|E>."""
    R = basis.kets
    L = left_kets(basis)
    norms = np.einsum("ij,ij->j", L.conj(), R) * basis.grid.h
    weights = np.asarray(values, dtype=complex) / norms
    return BlockOperator((R * weights) @ L.conj().T * basis.grid.h)


def reduced_quasi_parity(basis: GridBasis, sigma) -> np.ndarray:
    """R(sigma) = sum_n |n> rho <<n| on one channel, with <<n| = (P|n>)^dag / <n|P|n>."""
    grid = basis.grid
    P, h = grid.parity, grid.h
    sect = basis.sector(sigma)
    Phi = np.column_stack([st.phi for st in sect])
    rho = np.array([st.rho for st in sect], dtype=float)
    c = np.real(h * np.einsum("ij,ij->j", Phi.conj(), P @ Phi))
    D = (P @ Phi) / c
    return (Phi * rho) @ D.conj().T * h


def build_quasi_parity(basis: GridBasis, route: str = "spectral") -> BlockOperator:
    """Q from sum |E> rho <<E| ("spectral") or from sum_sigma R(sigma) Pi_sigma ("reduced")."""
    n_max = max(st.n for st in basis.states)
    if n_max < 2:
        raise InsufficientBasis("quasi-parity needs at least levels 0..2 in each spin sector")
    if route == "spectral":
        return spectral_operator(basis, basis.rho)
    if route != "reduced":
        raise ValueError(f"unknown route {route!r}")
    Q = BlockOperator(np.zeros((2 * basis.grid.N,) * 2, dtype=complex))
    for sigma in SPINS:
        Q = Q + block_diag(reduced_quasi_parity(basis, sigma)) @ spin_projector(basis.params, basis.grid, sigma)
    return Q


def build_metric(basis: GridBasis, coefficients=None) -> BlockOperator:
    """Theta = sum |E>> S <<E|-type sum h L S L^dag with L the left kets.

    Default coefficients are the special ones, S = 1/<<E|E>.
    """
    L = left_kets(basis)
    if coefficients is None:
        g = np.real(np.diag(pseudo_gram(basis)))
        coefficients = 1.0 / g
    S = np.asarray(coefficients, dtype=float)
    if np.any(~(S > 0)):
        raise NonPositiveCoefficient(f"metric coefficients must be positive, got min {S.min():.3g}")
    return BlockOperator((L * S) @ L.conj().T * basis.grid.h)


def metric_factorized(basis: GridBasis, route: str = "spectral") -> BlockOperator:
    return build_theta(basis.grid) @ build_quasi_parity(basis, route)


def metric_block_form(basis: GridBasis, variant: str = "projector") -> BlockOperator:
    """Theta_special from the reduced quasi-parities.

    "projector": sum_sigma [[0, P R], [P R, 0]] Pi_sigma
    "weighted":  1/2 sum_sigma [[sigma w, 1], [1, sigma/w]] (x) P R(sigma)
    """
    grid, params = basis.grid, basis.params
    P, w = grid.parity, params.omega
    total = np.zeros((2 * grid.N,) * 2, dtype=complex)
    for sigma in SPINS:
        PR = P @ reduced_quasi_parity(basis, sigma)
        s = int(sigma)
        if variant == "projector":
            z = np.zeros_like(PR)
            total += (BlockOperator.from_blocks(z, PR, PR, z) @ spin_projector(params, grid, sigma)).data
        elif variant == "weighted":
            total += 0.5 * np.block([[s * w * PR, PR], [PR, s / w * PR]])
        else:
            raise ValueError(f"unknown variant {variant!r}")
    return BlockOperator(total)


def gram_projected(op: BlockOperator, basis: GridBasis) -> np.ndarray:
    """<E_m|op|E_n> with the plain grid inner product."""
    R = basis.kets
    return basis.grid.h * R.conj().T @ (op.data @ R)


# -- verification -------------------------------------------------------------------

def verify_pseudo_hermiticity(H: BlockOperator, theta: BlockOperator, tol: float | None = None,
                              norm: str = "max") -> ReportEntry:
    res = operator_norm(H.dag @ theta - theta @ H, norm)
    if tol is None:
        tol = 1e-13 * operator_norm(H, norm)
    return ReportEntry(res, tol)


def verify_structure(params: CouplingParams, grid: Grid, norm: str = "max") -> VerificationReport:
    rep = VerificationReport(norm)
    H = build_hamiltonian(params, grid)
    Om = build_omega(params, grid)
    th = build_theta(grid)
    I = BlockOperator.identity(grid.N)
    hn = operator_norm(H, norm)
    rep.entries["pseudo_hermiticity_H"] = verify_pseudo_hermiticity(H, th, 1e-13 * hn, norm)
    rep.add("pseudo_hermiticity_Omega", operator_norm(Om.dag - th @ Om @ th, norm), 1e-14 * max(1.0, operator_norm(Om, norm)))
    rep.add("commutator_H_Omega", operator_norm(H @ Om - Om @ H, norm), 1e-13 * hn)
    rep.add("theta_involution", operator_norm(th @ th - I, norm), 1e-13)
    rep.add("omega_involution", operator_norm(Om @ Om - I, norm), 1e-13)
    Pp, Pm = (spin_projector(params, grid, s) for s in SPINS)
    rep.add("projector_sum", operator_norm(Pp + Pm - I, norm), 1e-13)
    rep.add("projector_idempotent", max(operator_norm(Pp @ Pp - Pp, norm), operator_norm(Pm @ Pm - Pm, norm)), 1e-13)
    rep.add("projector_orthogonal", operator_norm(Pp @ Pm, norm), 1e-13)
    P = grid.parity
    red = max(operator_norm(Hs - P @ Hs.conj().T @ P, norm)
              for Hs in (reduced_hamiltonian(params, grid, s) for s in SPINS))
    rep.add("reduced_pt_symmetry", red, 1e-13 * hn)
    return rep


def verify_quasi_parity_and_metric(basis: GridBasis, norm: str = "max") -> VerificationReport:
    rep = VerificationReport(norm)
    params, grid = basis.params, basis.grid
    H = build_hamiltonian(params, grid)
    th = build_theta(grid)
    R = basis.kets
    rho = basis.rho
    G = pseudo_gram(basis)
    rep.add("biorthonormality", np.abs(G - np.eye(len(rho))).max(), 1e-8)
    Q = build_quasi_parity(basis, "spectral")
    Qr = build_quasi_parity(basis, "reduced")
    rep.add("quasi_parity_eigen", np.abs(Q @ R - R * rho).max(), 1e-8)
    rep.add("quasi_parity_routes", operator_norm(Q - Qr, norm), 1e-8)
    rep.add("quasi_parity_square", np.abs(Q @ (Q @ R) - R).max(), 1e-8)
    rep.add("commutator_H_Q", operator_norm(H @ Q - Q @ H, norm), 1e-8)
    Theta = build_metric(basis)
    rep.add("metric_hermitian", operator_norm(Theta - Theta.dag, norm), 1e-10)
    rep.add("metric_equals_theta_Q", operator_norm(Theta - th @ Q, norm), 1e-8)
    rep.add("metric_quasi_hermitian", operator_norm(H.dag @ Theta - Theta @ H, norm), 1e-8)
    lam = jacobi_eigvalsh(gram_projected(Theta, basis))
    # margin entries: residual = -lambda_min must not exceed -1e-10
    rep.add("metric_positive", -lam.min(), -1e-10)
    flipped = rho.copy()
    flipped[0] = -flipped[0]
    Theta_bad = metric_factorized(basis.with_rho(flipped))
    B = gram_projected(Theta_bad, basis)
    lam_bad = jacobi_eigvalsh(0.5 * (B + B.conj().T))
    rep.add("metric_flipped_sign_negative", lam_bad.min(), -1e-10)
    rep.add("block_factorization", operator_norm(metric_block_form(basis, "projector") - th @ Q, norm), 1e-8)
    rep.add("block_factorization_weighted", operator_norm(metric_block_form(basis, "weighted") - th @ Q, norm), 1e-8)
    return rep


def verify_completeness_and_spectral(basis: GridBasis, norm: str = "max", seed: int = 7) -> VerificationReport:
    rep = VerificationReport(norm)
    params, grid = basis.params, basis.grid
    R = basis.kets
    Pi = spectral_operator(basis, np.ones(R.shape[1]))
    v0 = R[:, 0]
    rep.add("completeness_basis_member", np.abs(Pi @ v0 - v0).max(), 1e-9)
    rng = np.random.default_rng(seed)
    k = min(10, R.shape[1])
    coeff = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    v = R[:, :k] @ coeff
    rep.add("completeness_random_span", np.abs(Pi @ v - v).max(), 1e-8)
    H = build_hamiltonian(params, grid)
    Hrec = spectral_operator(basis, basis.energies)
    HR = H @ R
    rep.add("spectral_H", np.abs(Hrec @ R - HR).max(), 1e-9 * np.abs(HR).max())
    Om = build_omega(params, grid)
    Orec = spectral_operator(basis, basis.sigmas)
    rep.add("spectral_Omega", np.abs(Orec @ R - Om @ R).max(), 1e-9)
    L = left_kets(basis)
    M = grid.h * (L.conj().T @ (Om @ R)) / np.diag(pseudo_gram(basis))[:, None]
    ev = np.linalg.eigvals(M)
    rep.add("Omega_span_eigenvalues", np.abs(ev - np.sign(ev.real)).max(), 1e-9)
    return rep


def _quad_complex(f, a, b):
    re = quad(lambda x: f(x).real, a, b, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
    im = quad(lambda x: f(x).imag, a, b, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
    return complex(re, im)


def full_overlap_quadrature(bra: BoundState, ket: BoundState, params: CouplingParams, rho: int) -> complex:
    """<<E_bra|E_ket> = rho * integral of r_bra(x)^dag theta r_ket(x) by adaptive quadrature."""
    sx, sy = math.sqrt(params.X), math.sqrt(params.Y)
    sb, sk = int(bra.sigma), int(ket.sigma)

    def integrand(x):
        pb = reduced_wavefunction(bra, x)
        pk = reduced_wavefunction(ket, -x)
        # r_bra = (sy pb, sb sx pb); theta r_ket(x) = (sk sx pk, sy pk)
        return np.conj(sy * pb) * sk * sx * pk + np.conj(sb * sx * pb) * sy * pk

    return rho * (_quad_complex(integrand, -1.0, 0.0) + _quad_complex(integrand, 0.0, 1.0))


def verify_partitioning(basis: GridBasis, n_check: int = 4, norm: str = "max") -> VerificationReport:
    rep = VerificationReport(norm)
    params, grid = basis.params, basis.grid
    worst = 0.0
    for st in basis.states:
        if st.n > n_check:
            continue
        a = st.analytic
        rho = quasi_parity(a.root)
        num = full_overlap_quadrature(a, a, params, rho)
        formula = self_overlap(a, params, rho)
        worst = max(worst, abs(num - formula) / abs(formula))
    rep.add("full_overlap_vs_partitioned", worst, 1e-8)
    # subspace RN constants: sigma*lambda*<n|P|n> > 0 from the single-channel data
    P, h = grid.parity, grid.h
    mism = 0
    for st in basis.states:
        c = (h * np.vdot(st.phi, P @ st.phi)).real
        lam = int(st.sigma) * (1 if c > 0 else -1)
        mism += lam != st.rho
    rep.add("rn_constants_coincide", mism, 0)
    # left partition (sigma sqrt(X) <<chi|, sqrt(Y) <<chi|) with |chi>> = P|phi> lambda
    L = left_kets(basis)
    worst_left = 0.0
    for j, st in enumerate(basis.states):
        chi = (P @ st.phi) * st.rho
        left = np.concatenate([int(st.sigma) * math.sqrt(params.X) * chi, math.sqrt(params.Y) * chi])
        worst_left = max(worst_left, np.abs(left - L[:, j]).max())
    rep.add("left_partition", worst_left, 1e-12)
    th = build_theta(grid)
    TQ = th @ build_quasi_parity(basis)
    rep.add("block_factorization_partitioned", operator_norm(metric_block_form(basis) - TQ, norm), 1e-8)
    rep.add("analytic_quasi_parity_agrees", sum(quasi_parity(st.analytic.root) != st.rho for st in basis.states), 0)
    return rep


def run_verification(params: CouplingParams, grid_n: int = DEFAULT_GRID_N, n_max: int = 8,
                     norm: str = "max") -> VerificationReport:
    grid = Grid(grid_n)
    basis = grid_eigenbasis(params, grid, n_max)
    rep = verify_structure(params, grid, norm)
    rep.merge(verify_quasi_parity_and_metric(basis, norm))
    rep.merge(verify_completeness_and_spectral(basis, norm))
    rep.merge(verify_partitioning(basis, norm=norm))
    E_an = np.array([st.analytic.E for st in basis.states])
    rep.add("grid_energy_consistency", np.abs(basis.energies - E_an).max() / np.abs(E_an).max(), 1e-2)
    return rep
