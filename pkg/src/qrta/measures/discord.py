"""Mutual information and quantum discord under projective measurements.

Splits are written ``measured|rest``: "A|BC" measures qubit A and looks at
the conditional states of BC.
"""
from __future__ import annotations

import itertools
import string
from dataclasses import dataclass

import numpy as np

from ..linalg import (
    DensityMatrix,
    LinalgError,
    as_density,
    entropy_from_eigenvalues,
    hermitian_eigvals,
    partial_trace,
    permute_qubits,
    von_neumann_entropy,
)
from ._search import OBJECTIVE_TOL, fixed_starts, refine

PROB_CUTOFF = 1e-14


class DiscordError(ValueError):
    pass


@dataclass(frozen=True)
class Bipartition:
    n_qubits: int
    measured: tuple[int, ...]
    rest: tuple[int, ...]

    def __post_init__(self):
        m, r = set(self.measured), set(self.rest)
        if not m or not r:
            raise DiscordError("both sides of a bipartition must be nonempty")
        if m & r or (m | r) != set(range(self.n_qubits)):
            raise DiscordError(f"{self.measured}|{self.rest} does not partition {self.n_qubits} qubits")

    @classmethod
    def of(cls, n_qubits: int, measured) -> Bipartition:
        measured = tuple(sorted(set(measured)))
        rest = tuple(q for q in range(n_qubits) if q not in measured)
        return cls(n_qubits, measured, rest)

    @classmethod
    def parse(cls, label: str) -> Bipartition:
        """Parse "A|BC"-style labels (letters are qubits in order)."""
        try:
            left, right = label.split("|")
        except ValueError:
            raise DiscordError(f"bad split label {label!r}") from None
        letters = string.ascii_uppercase
        measured = [letters.index(ch) for ch in left]
        rest = [letters.index(ch) for ch in right]
        return cls(len(measured) + len(rest), tuple(sorted(measured)), tuple(sorted(rest)))

    @property
    def label(self) -> str:
        letters = string.ascii_uppercase
        return "".join(letters[q] for q in self.measured) + "|" + "".join(letters[q] for q in self.rest)

    @property
    def measured_dim(self) -> int:
        return 2 ** len(self.measured)

    @property
    def rest_dim(self) -> int:
        return 2 ** len(self.rest)


def all_splits(n_qubits: int) -> list[Bipartition]:
    """Every bipartition, each side taking a turn as the measured one."""
    out = []
    for k in range(1, n_qubits):
        for measured in itertools.combinations(range(n_qubits), k):
            out.append(Bipartition.of(n_qubits, measured))
    return out


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """Complete set of orthogonal projectors on the measured subsystem."""

    projectors: tuple[np.ndarray, ...]

    def __post_init__(self):
        projs = tuple(np.asarray(p, dtype=complex) for p in self.projectors)
        if not projs:
            raise DiscordError("empty measurement")
        d = projs[0].shape[0]
        total = np.zeros((d, d), dtype=complex)
        for p in projs:
            if p.shape != (d, d):
                raise DiscordError("projectors must share one square shape")
            if np.max(np.abs(p - p.conj().T)) > 1e-10:
                raise DiscordError("projector is not Hermitian")
            if np.max(np.abs(p @ p - p)) > 1e-10:
                raise DiscordError("projector is not idempotent")
            total += p
        if np.max(np.abs(total - np.eye(d))) > 1e-10:
            raise DiscordError("projectors do not sum to the identity")
        object.__setattr__(self, "projectors", projs)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    @classmethod
    def from_vectors(cls, vectors) -> MeasurementBasis:
        """Rank-1 projectors onto the columns of a unitary."""
        vectors = np.asarray(vectors, dtype=complex)
        return cls(tuple(np.outer(v, v.conj()) for v in vectors.T))

    @classmethod
    def computational(cls, dim: int) -> MeasurementBasis:
        return cls.from_vectors(np.eye(dim))


def givens_unitary(params, dim: int) -> np.ndarray:
    """Unitary from dim(dim-1)/2 complex Givens rotations, (theta, phi) per pair.

    Its columns reach every orthonormal basis up to per-vector phases; for a
    qubit the single pair is the Bloch parametrization (cos t, e^{i phi} sin t).
    """
    params = np.asarray(params, dtype=float)
    pairs = list(itertools.combinations(range(dim), 2))
    if params.size != 2 * len(pairs):
        raise DiscordError(f"need {2 * len(pairs)} angles for dimension {dim}, got {params.size}")
    u = np.eye(dim, dtype=complex)
    for (j, k), (theta, phi) in zip(pairs, params.reshape(-1, 2)):
        c, s = np.cos(theta), np.sin(theta)
        e = np.exp(1j * phi)
        g = np.array([[c, -np.conj(e) * s], [e * s, c]])
        u[:, [j, k]] = u[:, [j, k]] @ g
    return u


def n_basis_params(dim: int) -> int:
    return dim * (dim - 1)


def _split_tensor(rho: DensityMatrix, split: Bipartition) -> np.ndarray:
    if split.n_qubits != rho.n_qubits:
        raise DiscordError(f"split is for {split.n_qubits} qubits, state has {rho.n_qubits}")
    m = permute_qubits(rho, list(split.measured) + list(split.rest))
    dm, dr = split.measured_dim, split.rest_dim
    return m.reshape(dm, dr, dm, dr)


def _entropy(m: np.ndarray) -> float:
    if m.shape[0] == 1:
        return 0.0
    try:
        return entropy_from_eigenvalues(hermitian_eigvals(m))
    except LinalgError:
        return entropy_from_eigenvalues(np.clip(np.linalg.eigvalsh(m), 0.0, None))


def _conditional_entropy_vectors(rho4: np.ndarray, vectors: np.ndarray) -> float:
    total = 0.0
    for u in vectors.T:
        unnorm = np.einsum("j,k,jbkc->bc", u.conj(), u, rho4)
        p = float(np.trace(unnorm).real)
        if p > PROB_CUTOFF:
            cond = unnorm / p
            total += p * _entropy(0.5 * (cond + cond.conj().T))
    return total


def conditional_entropy_after_measurement(rho, split: Bipartition, basis: MeasurementBasis) -> float:
    """sum_a p_a S(rho_{rest|a}) for projectors E_a on the measured side."""
    rho = as_density(rho)
    if basis.dim != split.measured_dim:
        raise DiscordError(f"basis acts on dimension {basis.dim}, measured side has {split.measured_dim}")
    rho4 = _split_tensor(rho, split)
    total = 0.0
    for e in basis.projectors:
        # Tr_measured((E (x) I) rho)
        unnorm = np.einsum("kj,jbkc->bc", e, rho4)
        p = float(np.trace(unnorm).real)
        if p > PROB_CUTOFF:
            cond = unnorm / p
            total += p * _entropy(0.5 * (cond + cond.conj().T))
    return total


def mutual_information(rho, split: Bipartition) -> float:
    rho = as_density(rho)
    s_m = von_neumann_entropy(partial_trace(rho, split.measured))
    s_r = von_neumann_entropy(partial_trace(rho, split.rest))
    return s_m + s_r - von_neumann_entropy(rho)


@dataclass(frozen=True)
class DiscordResult:
    value: float
    conditional_entropy: float
    s_measured: float
    s_total: float
    basis_params: np.ndarray
    split: Bipartition

    @property
    def basis(self) -> MeasurementBasis:
        return MeasurementBasis.from_vectors(givens_unitary(self.basis_params, self.split.measured_dim))


def minimize_conditional_entropy(rho, split: Bipartition, n_refine: int = 3):
    """Coarse search over projective bases on the measured side, then simplex refinement."""
    rho = as_density(rho)
    rho4 = _split_tensor(rho, split)
    d = split.measured_dim
    n_par = n_basis_params(d)

    def objective(x):
        return _conditional_entropy_vectors(rho4, givens_unitary(x, d))

    if d == 2:
        thetas = np.linspace(0.0, np.pi / 2, 9)
        phis = np.arange(16) * (2 * np.pi / 16)
        starts = np.array([[t, f] for t in thetas for f in phis])
    else:
        scale = np.tile([np.pi / 2, 2 * np.pi], n_par // 2)
        starts = np.vstack([np.zeros(n_par), fixed_starts(n_par, 24, scale)])
    values = np.array([objective(x) for x in starts])
    order = np.argsort(values, kind="stable")[:n_refine]
    if values[order[0]] <= OBJECTIVE_TOL:
        # conditional entropy is non-negative, so this is already the minimum
        return float(values[order[0]]), starts[order[0]]
    best = refine(objective, starts[order], step=0.3)
    grid_best = int(order[0])
    if values[grid_best] <= best.fun:
        return float(values[grid_best]), starts[grid_best]
    return best.fun, best.x


def discord_details(rho, split: Bipartition) -> DiscordResult:
    rho = as_density(rho)
    cond, params = minimize_conditional_entropy(rho, split)
    s_m = von_neumann_entropy(partial_trace(rho, split.measured))
    s_tot = von_neumann_entropy(rho)
    return DiscordResult(cond + s_m - s_tot, cond, s_m, s_tot, np.asarray(params), split)


def discord(rho, split: Bipartition) -> float:
    """min over projective bases of the conditional entropy, plus S(measured) - S(total)."""
    return discord_details(rho, split).value
