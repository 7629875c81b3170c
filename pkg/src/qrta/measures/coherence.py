from __future__ import annotations

import numpy as np

from ..linalg import as_density, frobenius_norm


def closest_incoherent(rho) -> np.ndarray:
    """diag(rho): the diagonal density matrix nearest to rho in Frobenius norm."""
    rho = as_density(rho)
    return np.diag(np.diag(rho.matrix).real).astype(complex)


def coherence_frobenius(rho) -> float:
    """Frobenius distance from rho to the nearest incoherent state.

    ||rho - delta||_F^2 splits into the off-diagonal part, which delta cannot
    touch, plus sum_i (rho_ii - delta_i)^2, which vanishes at delta = diag(rho).
    """
    rho = as_density(rho)
    m = rho.matrix
    return frobenius_norm(m - np.diag(np.diag(m)))
