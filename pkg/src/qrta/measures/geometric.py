"""Geometric measure of entanglement via the best product-state overlap.

Each qubit of a product state is ``cos(alpha)|0> + e^{i beta} sin(alpha)|1>``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..linalg import DensityMatrix, as_density, hermitian_eig, is_permutation_symmetric
from ._search import fixed_starts, refine

Mode = Literal["symmetric", "general"]

GRID_STEPS = 64
N_REFINE = 4
N_GENERAL_STARTS = 64


class GMError(ValueError):
    pass


def normalize_angles(alpha: float, beta: float) -> tuple[float, float]:
    """Map to alpha in [0, pi], beta in [0, 2pi); the qubit state is unchanged up to sign."""
    alpha = float(np.mod(alpha, 2 * np.pi))
    beta = float(beta)
    if alpha > np.pi:
        alpha = 2 * np.pi - alpha
        beta += np.pi
    beta = float(np.mod(beta, 2 * np.pi))
    if beta >= 2 * np.pi:
        beta = 0.0
    return alpha, beta


def canonical_angles(alpha: float, beta: float, real_state: bool = False) -> tuple[float, float]:
    """Representative with alpha in [0, pi/2] under (alpha, beta) ~ (pi - alpha, beta + pi).

    For real density matrices beta ~ -beta as well, and beta is folded to [0, pi].
    """
    alpha, beta = normalize_angles(alpha, beta)
    if alpha > np.pi / 2:
        alpha, beta = normalize_angles(np.pi - alpha, beta + np.pi)
    if real_state and beta > np.pi:
        beta = 2 * np.pi - beta
    if 2 * np.pi - beta < 1e-9:
        beta = 0.0
    return alpha, beta


def qubit_vector(alpha: float, beta: float) -> np.ndarray:
    return np.array([np.cos(alpha), np.exp(1j * beta) * np.sin(alpha)])


@dataclass(frozen=True)
class ProductAnsatz:
    mode: Mode
    angles: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if self.mode not in ("symmetric", "general"):
            raise GMError(f"unknown ansatz mode {self.mode!r}")
        if self.mode == "symmetric" and len(self.angles) != 1:
            raise GMError("symmetric ansatz takes exactly one (alpha, beta) pair")
        if not np.all(np.isfinite(np.asarray(self.angles, dtype=float))):
            raise GMError("angles must be finite")

    @classmethod
    def from_flat(cls, mode: Mode, x) -> ProductAnsatz:
        pairs = np.asarray(x, dtype=float).reshape(-1, 2)
        return cls(mode, tuple(normalize_angles(a, b) for a, b in pairs))

    def state(self, n_qubits: int) -> np.ndarray:
        pairs = self.angles * n_qubits if self.mode == "symmetric" else self.angles
        if len(pairs) != n_qubits:
            raise GMError(f"ansatz has {len(pairs)} qubits, state has {n_qubits}")
        out = np.ones(1, dtype=complex)
        for a, b in pairs:
            out = np.kron(out, qubit_vector(a, b))
        return out


@dataclass(frozen=True)
class GMResult:
    lambda2: float
    gm: float
    argmax: ProductAnsatz


def product_overlap(rho, ansatz: ProductAnsatz) -> float:
    """<phi| rho |phi> for the product state described by ``ansatz``."""
    rho = as_density(rho)
    phi = ansatz.state(rho.n_qubits)
    return float(np.vdot(phi, rho.matrix @ phi).real)


def _batch_products(alphas, betas, n_qubits: int) -> np.ndarray:
    """Symmetric product vectors for each (alpha, beta) row; shape (k, 2**n)."""
    v = np.stack([np.cos(alphas), np.exp(1j * betas) * np.sin(alphas)], axis=1)
    out = v
    for _ in range(n_qubits - 1):
        out = np.einsum("ki,kj->kij", out, v).reshape(len(v), -1)
    return out


def _batch_general(x: np.ndarray, n_qubits: int) -> np.ndarray:
    pairs = x.reshape(len(x), n_qubits, 2)
    out = np.ones((len(x), 1), dtype=complex)
    for j in range(n_qubits):
        a, b = pairs[:, j, 0], pairs[:, j, 1]
        v = np.stack([np.cos(a), np.exp(1j * b) * np.sin(a)], axis=1)
        out = np.einsum("ki,kj->kij", out, v).reshape(len(x), -1)
    return out


def _quad_forms(m: np.ndarray, phis: np.ndarray) -> np.ndarray:
    return np.einsum("ki,ij,kj->k", phis.conj(), m, phis).real


def _symmetric_grid(m: np.ndarray, n: int):
    alphas = np.linspace(0.0, np.pi, GRID_STEPS)
    betas = np.arange(GRID_STEPS) * (2 * np.pi / GRID_STEPS)
    aa, bb = np.meshgrid(alphas, betas, indexing="ij")
    aa, bb = aa.ravel(), bb.ravel()
    vals = _quad_forms(m, _batch_products(aa, bb, n))
    return np.column_stack([aa, bb]), vals


def _top_distinct(points: np.ndarray, vals: np.ndarray, k: int, min_sep: float = 0.15) -> np.ndarray:
    chosen = []
    for i in np.argsort(-vals, kind="stable"):
        if all(np.max(np.abs(points[i] - points[j])) > min_sep for j in chosen):
            chosen.append(i)
        if len(chosen) == k:
            break
    return points[chosen]


def _polish_alternating(m: np.ndarray, n: int, x: np.ndarray, sweeps: int = 500) -> np.ndarray:
    """Cycle through qubits, replacing each by the top eigenvector of its effective 2x2 operator."""
    pairs = np.asarray(x, dtype=float).reshape(n, 2).copy()
    t = m.reshape((2,) * (2 * n))
    prev = -np.inf
    for _ in range(sweeps):
        for j in range(n):
            vecs = [qubit_vector(a, b) for a, b in pairs]
            eff = _effective_operator(t, vecs, j, n)
            w, v = hermitian_eig(eff)
            top = v[:, 0]
            a = np.arctan2(abs(top[1]), abs(top[0]))
            b = np.angle(top[1]) - np.angle(top[0]) if abs(top[1]) > 0 else 0.0
            pairs[j] = normalize_angles(a, b)
        val = _quad_forms(m, _batch_general(pairs.reshape(1, -1), n))[0]
        if val - prev < 1e-15:
            break
        prev = val
    return pairs.ravel()


def _effective_operator(t: np.ndarray, vecs, j: int, n: int) -> np.ndarray:
    """<phi_others| rho |phi_others> as a 2x2 operator on qubit j."""
    eff = t
    # axes: kets of the remaining qubits, then their bras
    remaining = list(range(n))
    for q in reversed(range(n)):
        if q == j:
            continue
        r = len(remaining)
        ket_ax = remaining.index(q)
        bra_ax = r + ket_ax
        eff = np.tensordot(eff, vecs[q], axes=([bra_ax], [0]))
        eff = np.tensordot(vecs[q].conj(), eff, axes=([0], [ket_ax]))
        remaining.pop(ket_ax)
    return eff.reshape(2, 2)


def gm_lambda2(rho, ansatz_mode: Mode = "general") -> GMResult:
    """Maximal overlap of rho with a pure product state, and the maximizer."""
    rho = as_density(rho)
    n = rho.n_qubits
    m = rho.matrix
    if ansatz_mode == "symmetric":
        if not is_permutation_symmetric(rho):
            raise GMError("symmetric ansatz needs a permutation-symmetric state")
    elif ansatz_mode != "general":
        raise GMError(f"unknown ansatz mode {ansatz_mode!r}")

    grid_pts, grid_vals = _symmetric_grid(m, n)
    seeds = _top_distinct(grid_pts, grid_vals, N_REFINE)

    if ansatz_mode == "symmetric":

        def neg(x):
            return -_quad_forms(m, _batch_products(x[:1], x[1:], n))[0]

        best = refine(neg, seeds)
        x = best.x
    else:
        starts = np.vstack(
            [
                np.tile(seeds, (1, n)),
                fixed_starts(2 * n, N_GENERAL_STARTS, np.tile([np.pi, 2 * np.pi], n)),
            ]
        )
        start_vals = _quad_forms(m, _batch_general(starts, n))
        order = np.argsort(-start_vals, kind="stable")[:N_REFINE]

        def neg(x):
            return -_quad_forms(m, _batch_general(x.reshape(1, -1), n))[0]

        candidates = []
        for i in order:
            res = refine(neg, starts[i : i + 1])
            xp = _polish_alternating(m, n, res.x)
            candidates.append((-neg(xp), xp))
        # ties resolved toward the earlier start
        x = max(enumerate(candidates), key=lambda kv: (round(kv[1][0], 13), -kv[0]))[1][1]

    ansatz = ProductAnsatz.from_flat(ansatz_mode, x)
    lam2 = product_overlap(rho, ansatz)
    return GMResult(lam2, gm_from_lambda2(lam2), ansatz)


def gm_from_lambda2(lam2: float) -> float:
    """-log2 Lambda^2, clamped at 0 against rounding just above 1."""
    return max(0.0, float(-np.log2(lam2)))


def gm(rho, ansatz_mode: Mode = "general") -> float:
    """G = -2 log2 Lambda = -log2 Lambda^2, in bits."""
    return gm_lambda2(rho, ansatz_mode).gm
