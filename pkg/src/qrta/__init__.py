"""Coherence, discord and geometric entanglement of Grover and HHL states."""
from .grover import GroverConfig, trace_states
from .hhl import HHLInput, all_stages
from .linalg import DensityMatrix, PureState, outer
from .measures import Bipartition, coherence_frobenius, discord, gm, gm_lambda2

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "DensityMatrix",
    "GroverConfig",
    "HHLInput",
    "PureState",
    "all_stages",
    "coherence_frobenius",
    "discord",
    "gm",
    "gm_lambda2",
    "outer",
    "trace_states",
]
