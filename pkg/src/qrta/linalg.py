"""Dense complex linear algebra at qubit scale.

Qubit 0 is the most significant bit of a basis index, so for three qubits
``|abc>`` sits at index ``4a + 2b + c``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-10

# Above this dimension the cyclic Jacobi sweep is replaced by LAPACK.
JACOBI_MAX_DIM = 32


class LinalgError(ValueError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _n_qubits_for(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise LinalgError(f"dimension {dim} is not a power of two")
    return n


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over ``n_qubits`` qubits."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _frozen(np.ravel(self.amplitudes))
        if not np.all(np.isfinite(amps)):
            raise LinalgError("amplitudes must be finite")
        _n_qubits_for(amps.size)
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise LinalgError(f"state not normalized: sum |a|^2 = {norm2!r}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return _n_qubits_for(self.amplitudes.size)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def from_unnormalized(cls, amplitudes) -> PureState:
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        return cls(amps / np.linalg.norm(amps))

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> PureState:
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(amps)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix on qubits."""

    matrix: np.ndarray

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise LinalgError(f"density matrix must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise LinalgError("density matrix entries must be finite")
        _n_qubits_for(m.shape[0])
        if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise LinalgError("density matrix is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > NORM_TOL:
            raise LinalgError(f"density matrix trace is {tr!r}, expected 1")
        lam_min = hermitian_eig(m).eigenvalues[-1]
        if lam_min < -PSD_TOL:
            raise LinalgError(f"density matrix not PSD: eigenvalue {lam_min!r}")
        object.__setattr__(self, "matrix", m)

    @property
    def n_qubits(self) -> int:
        return _n_qubits_for(self.matrix.shape[0])

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray  # real, descending
    eigenvectors: np.ndarray  # columns


def as_density(rho) -> DensityMatrix:
    if isinstance(rho, DensityMatrix):
        return rho
    if isinstance(rho, PureState):
        return outer(rho)
    return DensityMatrix(np.asarray(rho))


def kron(*factors) -> np.ndarray:
    """Kronecker product of one or more matrices (or vectors), left to right."""
    if not factors:
        raise LinalgError("kron needs at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def outer(psi: PureState) -> DensityMatrix:
    a = psi.amplitudes
    return DensityMatrix(np.outer(a, a.conj()))


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Reduced state on the qubits in ``keep`` (returned in ascending order)."""
    rho = as_density(rho)
    n = rho.n_qubits
    keep = sorted(set(keep))
    if not keep:
        raise LinalgError("nothing kept")
    if keep[0] < 0 or keep[-1] >= n:
        raise LinalgError(f"keep {keep} out of range for {n} qubits")
    traced = [q for q in range(n) if q not in keep]
    t = rho.matrix.reshape((2,) * (2 * n))
    # bra/ket letters: the traced qubits share one index
    ket = list(range(n))
    bra = [n + q for q in range(n)]
    for q in traced:
        bra[q] = ket[q]
    out = [ket[q] for q in keep] + [bra[q] for q in keep]
    reduced = np.einsum(t, ket + bra, out)
    d = 2 ** len(keep)
    m = reduced.reshape(d, d)
    return DensityMatrix(0.5 * (m + m.conj().T))


def _jacobi(h: np.ndarray, tol: float, max_sweeps: int = 100):
    a = np.array(h, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = 1.0 / (abs(theta) + np.hypot(theta, 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # diag(1, conj(phase)) makes the pivot real, then a plane rotation
                rot = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
                a[p, q] = a[q, p] = 0.0
    else:
        raise LinalgError("Jacobi eigensolver did not converge")
    return np.diag(a).real.copy(), v


def hermitian_eig(h, tol: float = 1e-12) -> EigenDecomposition:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Small matrices use cyclic complex Jacobi rotations; eigenvector phases are
    fixed so the largest-modulus component of each column is real positive.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise LinalgError(f"expected a square matrix, got shape {h.shape}")
    if np.max(np.abs(h - h.conj().T), initial=0.0) > 1e-10:
        raise LinalgError("matrix is not Hermitian")
    h = 0.5 * (h + h.conj().T)
    if h.shape[0] <= JACOBI_MAX_DIM:
        w, v = _jacobi(h, tol)
    else:
        w, v = np.linalg.eigh(h)
    order = np.argsort(-w, kind="stable")
    w, v = w[order], v[:, order]
    pivots = np.argmax(np.abs(v) > np.abs(v).max(axis=0) - 1e-12, axis=0)
    ph = v[pivots, np.arange(v.shape[1])]
    v = v * (np.abs(ph) / np.where(ph == 0, 1, ph))
    return EigenDecomposition(w, v)


def hermitian_eigvals(h, tol: float = 1e-12) -> np.ndarray:
    """Eigenvalues only, descending; skips the eigenvector phase bookkeeping."""
    h = np.asarray(h, dtype=complex)
    if h.shape[0] <= JACOBI_MAX_DIM:
        w = _jacobi(0.5 * (h + h.conj().T), tol)[0]
    else:
        w = np.linalg.eigvalsh(h)
    return np.sort(w)[::-1]


def eigenvalues(h) -> np.ndarray:
    return hermitian_eig(h).eigenvalues


def entropy_from_eigenvalues(lam) -> float:
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < -PSD_TOL):
        raise LinalgError(f"negative eigenvalue {lam.min()!r} in entropy")
    lam = lam[lam > 1e-15]
    return float(max(0.0, -np.sum(lam * np.log2(lam))))


def von_neumann_entropy(rho) -> float:
    """Entropy in bits."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return entropy_from_eigenvalues(hermitian_eig(m).eigenvalues)


def binary_entropy(p: float) -> float:
    return entropy_from_eigenvalues([p, 1.0 - p])


def frobenius_norm(a) -> float:
    a = np.asarray(a)
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


def frobenius_distance(a, b) -> float:
    a = a.matrix if isinstance(a, DensityMatrix) else np.asarray(a)
    b = b.matrix if isinstance(b, DensityMatrix) else np.asarray(b)
    if a.shape != b.shape:
        raise LinalgError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return frobenius_norm(a - b)


def permute_qubits(rho: DensityMatrix, order) -> np.ndarray:
    """Matrix of ``rho`` with qubits reordered so that new qubit i is old ``order[i]``."""
    n = rho.n_qubits
    t = rho.matrix.reshape((2,) * (2 * n))
    order = list(order)
    t = t.transpose(order + [n + q for q in order])
    return t.reshape(rho.dim, rho.dim)


def is_permutation_symmetric(rho: DensityMatrix, tol: float = 1e-10) -> bool:
    n = rho.n_qubits
    for i in range(n - 1):
        order = list(range(n))
        order[i], order[i + 1] = order[i + 1], order[i]
        if np.max(np.abs(permute_qubits(rho, order) - rho.matrix)) > tol:
            return False
    return True


def local_unitary(*gates) -> np.ndarray:
    return kron(*gates)


def conjugate(rho: DensityMatrix, u) -> DensityMatrix:
    u = np.asarray(u, dtype=complex)
    m = u @ rho.matrix @ u.conj().T
    return DensityMatrix(0.5 * (m + m.conj().T))
