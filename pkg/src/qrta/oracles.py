"""Brute-force grid oracles for the optimized measures.

These bound the optimizers from the safe side: the GM oracle is a lower bound
on the overlap maximum, the coherence and discord oracles are upper bounds on
their minima. They share nothing with ``measures`` beyond the linalg basics.

Angle grids use the points lo + k (hi - lo) / resolution, so doubling the
resolution keeps every old point and the bound can only improve.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .linalg import as_density, partial_trace, von_neumann_entropy

DEFAULT_ANGLE_RESOLUTION = 128
DEFAULT_SIMPLEX_RESOLUTION = 64
# the simplex grid is coarsened until it has at most this many points
MAX_SIMPLEX_POINTS = 200_000
CHUNK = 8192


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    resolution: int = DEFAULT_ANGLE_RESOLUTION
    bounds: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if int(self.resolution) != self.resolution or self.resolution < 2:
            raise OracleError(f"resolution must be an integer >= 2, got {self.resolution!r}")
        if self.bounds is not None:
            for lo, hi in self.bounds:
                if not (math.isfinite(lo) and math.isfinite(hi) and hi > lo):
                    raise OracleError(f"bad interval ({lo}, {hi})")

    def axis(self, dim: int, default: tuple[float, float], periodic: bool = False) -> np.ndarray:
        lo, hi = default if self.bounds is None else self.bounds[dim]
        k = np.arange(self.resolution if periodic else self.resolution + 1)
        return lo + (hi - lo) * k / self.resolution

    def check_dims(self, n: int, what: str):
        if self.bounds is not None and len(self.bounds) != n:
            raise OracleError(f"{what} grid needs {n} intervals, got {len(self.bounds)}")


# coherence


def _simplex_points(d: int, r: int) -> np.ndarray:
    """All x with x_i in {0, 1/r, ..., 1} summing to 1 (stars and bars)."""
    bars = np.array(list(itertools.combinations(range(r + d - 1), d - 1)), dtype=int)
    if bars.size == 0:
        return np.ones((1, d))
    padded = np.hstack([-np.ones((len(bars), 1), dtype=int), bars, np.full((len(bars), 1), r + d - 1)])
    return (np.diff(padded, axis=1) - 1) / r


def _simplex_count(d: int, r: int) -> int:
    return math.comb(r + d - 1, d - 1)


def _project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-and-threshold)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, len(v) + 1)
    k = idx[u - css / idx > 0][-1]
    return np.maximum(v - css[k - 1] / k, 0.0)


def _dist_to_diag(m: np.ndarray, x: np.ndarray) -> np.ndarray:
    out = np.empty(len(x))
    for s in range(0, len(x), CHUNK):
        xs = x[s : s + CHUNK]
        diff = m[None, :, :] - xs[:, :, None] * np.eye(m.shape[0])[None, :, :]
        out[s : s + CHUNK] = np.sqrt(np.sum(np.abs(diff) ** 2, axis=(1, 2)))
    return out


def coherence_grid_oracle(rho, spec: GridSpec | None = None, polish_steps: int = 200) -> float:
    """min ||rho - diag(x)||_F over a simplex grid of x, then projected-gradient polish.

    The resolution is lowered until the grid fits MAX_SIMPLEX_POINTS.
    """
    spec = GridSpec(DEFAULT_SIMPLEX_RESOLUTION) if spec is None else spec
    m = as_density(rho).matrix
    d = m.shape[0]
    r = spec.resolution
    while r > 1 and _simplex_count(d, r) > MAX_SIMPLEX_POINTS:
        r -= 1
    pts = _simplex_points(d, r)
    vals = _dist_to_diag(m, pts)
    x = pts[int(np.argmin(vals))]
    best = float(vals.min())
    target = np.diag(m).real
    for _ in range(polish_steps):
        # gradient of the squared distance is 2 (x - diag(rho)); step 1/2 lands on the target
        x = _project_simplex(x - 0.5 * 2.0 * (x - target))
        val = float(_dist_to_diag(m, x[None, :])[0])
        if val >= best - 1e-16:
            best = min(best, val)
            break
        best = val
    return best


# geometric measure


def _qubit_rows(alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    return np.stack([np.cos(alpha), np.exp(1j * beta) * np.sin(alpha)], axis=-1)


def _kron_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a[:, :, None] * b[:, None, :]).reshape(len(a), -1)


def gm_grid_oracle(rho, spec: GridSpec | None = None, symmetric: bool = False) -> float:
    """Largest <phi|rho|phi> over a grid of product states phi.

    symmetric: phi = v(alpha, beta)^{(x) n} on an (alpha, beta) grid.
    general: every qubit but the last on the grid; for each grid point the
    last qubit is chosen optimally, i.e. the top eigenvalue of the 2x2
    operator left after contracting the others.
    """
    spec = GridSpec() if spec is None else spec
    rho = as_density(rho)
    m = rho.matrix
    n = rho.n_qubits
    spec.check_dims(2, "GM")
    alphas = spec.axis(0, (0.0, math.pi / 2))
    betas = spec.axis(1, (0.0, 2 * math.pi), periodic=True)
    aa, bb = np.meshgrid(alphas, betas, indexing="ij")
    single = _qubit_rows(aa.ravel(), bb.ravel())

    if symmetric:
        best = -np.inf
        for s in range(0, len(single), CHUNK):
            v = single[s : s + CHUNK]
            phi = v
            for _ in range(n - 1):
                phi = _kron_rows(phi, v)
            vals = np.einsum("ki,ij,kj->k", phi.conj(), m, phi).real
            best = max(best, float(vals.max()))
        return best

    if n == 1:
        return float(np.linalg.eigvalsh(m)[-1])
    t = m.reshape(2 ** (n - 1), 2, 2 ** (n - 1), 2)
    best = -np.inf
    n_single = len(single)
    # iterate over the grid of the first n - 1 qubits as mixed-radix indices
    total = n_single ** (n - 1)
    for s in range(0, total, CHUNK):
        idx = np.arange(s, min(total, s + CHUNK))
        phi = np.ones((len(idx), 1), dtype=complex)
        rem = idx
        digits = []
        for _ in range(n - 1):
            digits.append(rem % n_single)
            rem = rem // n_single
        for dgt in reversed(digits):
            phi = _kron_rows(phi, single[dgt])
        eff = np.einsum("ki,iajb,kj->kab", phi.conj(), t, phi)
        a, d, off = eff[:, 0, 0].real, eff[:, 1, 1].real, eff[:, 0, 1]
        top = 0.5 * (a + d) + np.sqrt(0.25 * (a - d) ** 2 + np.abs(off) ** 2)
        best = max(best, float(top.max()))
    return best


# discord


def discord_grid_oracle(rho, split, spec: GridSpec | None = None) -> float:
    """Grid minimum over qubit bases {|n>, |n_perp>} of sum_a p_a S(rest|a), plus S(A) - S(AB).

    Only splits measuring a single qubit are in scope.
    """
    spec = GridSpec() if spec is None else spec
    rho = as_density(rho)
    measured = list(split.measured)
    rest = list(split.rest)
    if len(measured) != 1:
        raise OracleError(f"oracle scope: measured side must be one qubit, got {len(measured)}")
    if len(measured) + len(rest) != rho.n_qubits:
        raise OracleError("split does not match the state")
    spec.check_dims(2, "discord")
    n = rho.n_qubits
    dr = 2 ** len(rest)
    order = measured + rest
    t = rho.matrix.reshape((2,) * (2 * n)).transpose(order + [q + n for q in order])
    t = t.reshape(2, dr, 2, dr)

    thetas = spec.axis(0, (0.0, math.pi))
    phis = spec.axis(1, (0.0, 2 * math.pi), periodic=True)
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    th, ph = th.ravel(), ph.ravel()
    up = np.stack([np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)], axis=1)
    down = np.stack([-np.exp(-1j * ph) * np.sin(th / 2), np.cos(th / 2)], axis=1)

    cond = np.zeros(len(th))
    for vec in (up, down):
        unnorm = np.einsum("ki,ibjc,kj->kbc", vec.conj(), t, vec)
        p = np.trace(unnorm, axis1=1, axis2=2).real
        ok = p > 1e-14
        states = unnorm[ok] / p[ok, None, None]
        states = 0.5 * (states + states.conj().transpose(0, 2, 1))
        w = np.clip(np.linalg.eigvalsh(states), 0.0, None)
        logs = np.where(w > 1e-15, np.log2(np.where(w > 1e-15, w, 1.0)), 0.0)
        ent = -np.sum(w * logs, axis=1)
        contrib = np.zeros(len(th))
        contrib[ok] = p[ok] * ent
        cond += contrib
    s_a = von_neumann_entropy(partial_trace(rho, measured))
    return float(cond.min() + s_a - von_neumann_entropy(rho))
