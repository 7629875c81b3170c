"""Grover search states after each oracle and diffuser half-step."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import PureState


class GroverError(ValueError):
    pass


@dataclass(frozen=True)
class GroverConfig:
    n_qubits: int = 3
    target: int = 7
    iterations: int = 2

    def __post_init__(self):
        if self.n_qubits < 1:
            raise GroverError("n_qubits must be >= 1")
        if not 0 <= self.target < 2**self.n_qubits:
            raise GroverError(f"target {self.target} outside [0, {2**self.n_qubits})")
        if self.iterations < 0:
            raise GroverError("iterations must be >= 0")


@dataclass(frozen=True)
class GroverTrace:
    config: GroverConfig
    labels: tuple[str, ...]
    states: tuple[PureState, ...]

    def __getitem__(self, label: str) -> PureState:
        return self.states[self.labels.index(label)]

    def items(self):
        return zip(self.labels, self.states)


def uniform_state(n_qubits: int) -> PureState:
    if n_qubits < 1:
        raise GroverError("n_qubits must be >= 1")
    dim = 2**n_qubits
    return PureState(np.full(dim, 1.0 / np.sqrt(dim), dtype=complex))


def apply_oracle(state: PureState, target: int) -> PureState:
    """I - 2|target><target|: flips the sign of one amplitude."""
    if not 0 <= target < state.dim:
        raise GroverError(f"target {target} outside [0, {state.dim})")
    amps = state.amplitudes.copy()
    amps[target] = -amps[target]
    return PureState(amps)


def apply_diffuser(state: PureState) -> PureState:
    """2|s><s| - I, i.e. inversion about the mean amplitude."""
    amps = state.amplitudes
    return PureState(2.0 * amps.mean() - amps)


def trace_states(config: GroverConfig) -> GroverTrace:
    state = uniform_state(config.n_qubits)
    labels, states = ["s"], [state]
    for _ in range(config.iterations):
        state = apply_oracle(state, config.target)
        labels.append(f"psi{len(states)}")
        states.append(state)
        state = apply_diffuser(state)
        labels.append(f"psi{len(states)}")
        states.append(state)
    return GroverTrace(config, tuple(labels), tuple(states))


def optimal_iterations(n_qubits: int) -> int:
    return int(np.floor(np.pi / 4 * np.sqrt(2**n_qubits)))
