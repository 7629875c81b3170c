"""Closed-form HHL stage states for A = (1/2)[[3, 1], [1, 3]] and b = (b0, b1).

Stage 1 is the three-qubit state after phase estimation, stage 2 the state
after the controlled eigenvalue-inversion rotation, stage 3 after uncomputing
the phase register.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DensityMatrix, PureState

NORM_TOL = 1e-12

# Rotation constant; bounded by the smallest eigenvalue (1) of the system matrix.
C_ROT = 0.5 * (math.sin(math.pi / 4) + 2.0 * math.sin(math.pi / 8))


class HHLError(ValueError):
    pass


def _sqrt_nonneg(x: float, what: str) -> float:
    if x < -1e-12:
        raise HHLError(f"negative radicand {x!r} in {what}")
    return math.sqrt(max(x, 0.0))


@dataclass(frozen=True)
class HHLInput:
    b0: float
    b1: float

    def __post_init__(self):
        if not (math.isfinite(self.b0) and math.isfinite(self.b1)):
            raise HHLError("b0 and b1 must be finite")
        if abs(self.b0**2 + self.b1**2 - 1.0) > NORM_TOL:
            raise HHLError(f"b0^2 + b1^2 = {self.b0**2 + self.b1**2!r}, expected 1")

    @classmethod
    def from_b0(cls, b0: float) -> HHLInput:
        """Take b1 as the non-negative root of 1 - b0^2."""
        if abs(b0) > 1.0:
            raise HHLError(f"|b0| = {abs(b0)!r} exceeds 1")
        return cls(b0, math.sqrt(1.0 - b0 * b0))

    @property
    def beta1(self) -> float:
        return (self.b0 - self.b1) / math.sqrt(2.0)

    @property
    def beta2(self) -> float:
        return (self.b0 + self.b1) / math.sqrt(2.0)


@dataclass(frozen=True)
class HHLStage2Params:
    C: float
    gamma: float
    beta1: float
    beta2: float
    p: float
    a1: float
    a2: float
    x1: float
    x2: float


@dataclass(frozen=True)
class HHLStage3Params:
    A: float
    B: float
    C1: float
    C2: float
    q: float
    f1: float
    f2: float
    y1: float
    y2: float


def stage1_state(inp: HHLInput) -> PureState:
    minus = np.array([1.0, -1.0]) / math.sqrt(2.0)
    plus = np.array([1.0, 1.0]) / math.sqrt(2.0)
    amps = np.zeros(8, dtype=complex)
    # |01> (x) (|0> - |1>) and |10> (x) (|0> + |1>), weights (b0 -+ b1)/2
    amps[2:4] = inp.beta1 * minus
    amps[4:6] = inp.beta2 * plus
    return PureState(amps)


def gamma_coefficient(C: float = C_ROT) -> float:
    return math.sqrt((1.0 - C**2) * (1.0 - C**2 / 4.0)) + C**2 / 2.0


def stage2_params(inp: HHLInput) -> HHLStage2Params:
    C = C_ROT
    gamma = gamma_coefficient(C)
    b1_, b2_ = inp.beta1, inp.beta2
    root = _sqrt_nonneg(1.0 - 4.0 * b1_**2 * b2_**2 * (1.0 - gamma**2), "p")
    p = 0.5 * (1.0 + root)
    a1 = b1_ * (1.0 + root - 2.0 * b2_**2 * (1.0 - gamma**2))
    a2 = b2_ * gamma * (1.0 + root)
    norm2 = a1 * a1 + a2 * a2
    if norm2 < 1e-24:
        raise HHLError("degenerate spectral parameters")
    norm = math.sqrt(norm2)
    return HHLStage2Params(C, gamma, b1_, b2_, p, a1, a2, a1 / norm, a2 / norm)


def _stage2_branches(x1: float, x2: float):
    # |phi1> = x1 |01->  + x2 |10+>,  |phi2> = -x2 |01-> + x1 |10+>
    e1 = np.zeros(8)
    e1[2], e1[3] = 1.0, -1.0
    e2 = np.zeros(8)
    e2[4], e2[5] = 1.0, 1.0
    e1 /= math.sqrt(2.0)
    e2 /= math.sqrt(2.0)
    return x1 * e1 + x2 * e2, -x2 * e1 + x1 * e2


def stage2_state(params: HHLStage2Params) -> DensityMatrix:
    phi1, phi2 = _stage2_branches(params.x1, params.x2)
    p = params.p
    m = p * np.outer(phi1, phi1) + (1.0 - p) * np.outer(phi2, phi2)
    return DensityMatrix(m)


def stage2_eigenvectors(params: HHLStage2Params) -> tuple[np.ndarray, np.ndarray]:
    return _stage2_branches(params.x1, params.x2)


def stage3_params(inp: HHLInput) -> HHLStage3Params:
    C = C_ROT
    b0, b1 = inp.b0, inp.b1
    s1 = _sqrt_nonneg(1.0 - C**2, "A")
    s2 = _sqrt_nonneg(1.0 - C**2 / 4.0, "A")
    A = 0.5 * ((b0 - b1) * s1 + (b0 + b1) * s2)
    B = 0.5 * (-(b0 - b1) * s1 + (b0 + b1) * s2)
    C1 = C * (3.0 * b0 - b1) / 4.0
    C2 = C * (-b0 + 3.0 * b1) / 4.0
    root = _sqrt_nonneg(1.0 - 4.0 * (A * C2 - B * C1) ** 2, "q")
    q = 0.5 * (1.0 + root)
    f1 = A**2 - B**2 + C1**2 + C2**2 + root
    f2 = 2.0 * (A * B + C1 * C2)
    norm2 = f1 * f1 + f2 * f2
    if norm2 < 1e-24:
        raise HHLError("degenerate spectral parameters")
    norm = math.sqrt(norm2)
    return HHLStage3Params(A, B, C1, C2, q, f1, f2, f1 / norm, f2 / norm)


def stage3_state(params: HHLStage3Params) -> DensityMatrix:
    y1, y2, q = params.y1, params.y2, params.q
    m = np.zeros((8, 8))
    m[0, 0] = q * y1**2 + (1.0 - q) * y2**2
    m[1, 1] = (1.0 - q) * y1**2 + q * y2**2
    m[0, 1] = m[1, 0] = (2.0 * q - 1.0) * y1 * y2
    return DensityMatrix(m)


@dataclass(frozen=True)
class HHLStates:
    input: HHLInput
    stage2: HHLStage2Params
    stage3: HHLStage3Params
    rho1: DensityMatrix
    rho2: DensityMatrix
    rho3: DensityMatrix


def all_stages(inp: HHLInput) -> HHLStates:
    from .linalg import outer

    s2 = stage2_params(inp)
    s3 = stage3_params(inp)
    return HHLStates(inp, s2, s3, outer(stage1_state(inp)), stage2_state(s2), stage3_state(s3))


# I on the first qubit, X on the second, X.H on the third: maps
# |01-> -> |000> and |10+> -> |111>.
_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
_X = np.array([[0.0, 1.0], [1.0, 0.0]])
CANONICAL_LOCAL_UNITARY = np.kron(np.kron(np.eye(2), _X), _X @ _H)
