import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrta.grover import GroverConfig, trace_states
from qrta.hhl import HHLInput, all_stages
from qrta.linalg import DensityMatrix, PureState, kron, outer
from qrta.measures import Bipartition, coherence_frobenius, discord, gm_lambda2
from qrta.oracles import (
    GridSpec,
    OracleError,
    coherence_grid_oracle,
    discord_grid_oracle,
    gm_grid_oracle,
)

LABELS = ("psi1", "psi2", "psi3", "psi4")
SLACK = 1e-9


@pytest.fixture(scope="module")
def grover():
    tr = trace_states(GroverConfig())
    return {lab: outer(tr[lab]) for lab in LABELS}


def random_density(seed, rank=8):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(8, rank)) + 1j * rng.normal(size=(8, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def test_grid_spec_validation():
    with pytest.raises(OracleError):
        GridSpec(1)
    with pytest.raises(OracleError):
        GridSpec(8, ((1.0, 0.0), (0.0, 1.0)))
    with pytest.raises(OracleError):
        gm_grid_oracle(DensityMatrix(np.eye(8) / 8), GridSpec(4, ((0, 1),)))


# coherence


def test_coherence_oracle_psi1(grover):
    assert abs(coherence_grid_oracle(grover["psi1"]) - math.sqrt(14) / 4) < 1e-4


def test_coherence_oracle_psi4(grover):
    assert abs(coherence_grid_oracle(grover["psi4"]) - math.sqrt(434) / 64) < 1e-4


def test_coherence_oracle_diagonal():
    assert coherence_grid_oracle(DensityMatrix(np.diag([0.25, 0.75]))) < 1e-12


def test_coherence_oracle_without_polish_is_upper_bound(grover):
    raw = coherence_grid_oracle(grover["psi2"], GridSpec(8), polish_steps=0)
    assert raw >= coherence_frobenius(grover["psi2"]) - SLACK


@pytest.mark.parametrize("seed", range(20))
def test_coherence_sandwich_random(seed):
    rho = random_density(seed)
    assert coherence_frobenius(rho) <= coherence_grid_oracle(rho) + SLACK
    assert abs(coherence_frobenius(rho) - coherence_grid_oracle(rho)) < 1e-6


# geometric measure


def test_gm_oracle_psi2_fine_grid(grover):
    val = gm_grid_oracle(grover["psi2"], GridSpec(256), symmetric=True)
    assert val >= 0.9265
    assert val <= gm_lambda2(grover["psi2"], "symmetric").lambda2 + SLACK


def test_gm_oracle_basis_state():
    rho = outer(PureState.basis(3, 0))
    assert abs(gm_grid_oracle(rho, GridSpec(4), symmetric=True) - 1) < 1e-15
    assert abs(gm_grid_oracle(rho, GridSpec(4)) - 1) < 1e-15


def test_gm_oracle_hhl_stage3():
    st_ = all_stages(HHLInput(0.6, 0.8))
    assert abs(gm_grid_oracle(st_.rho3, GridSpec(16)) - max(st_.stage3.q, 1 - st_.stage3.q)) < 2e-4


@pytest.mark.parametrize("label", LABELS)
def test_gm_sandwich_grover(grover, label):
    rho = grover[label]
    opt = gm_lambda2(rho, "symmetric").lambda2
    assert gm_grid_oracle(rho, symmetric=True) <= opt + SLACK
    assert gm_grid_oracle(rho, GridSpec(12)) <= opt + SLACK
    # the grid gets within its resolution of the optimum
    assert gm_grid_oracle(rho, symmetric=True) > opt - 1e-3


@pytest.mark.parametrize("b0", [0.0, 0.25, 0.6, 0.9])
def test_gm_sandwich_hhl(b0):
    st_ = all_stages(HHLInput.from_b0(b0))
    for rho in (st_.rho1, st_.rho2, st_.rho3):
        assert gm_grid_oracle(rho, GridSpec(12)) <= gm_lambda2(rho).lambda2 + SLACK


def test_gm_oracle_refinement_monotone(grover):
    for label in ("psi1", "psi4"):
        vals = [gm_grid_oracle(grover[label], GridSpec(r), symmetric=True) for r in (8, 16, 32, 64, 128)]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    rho = random_density(3, rank=2)
    vals = [gm_grid_oracle(rho, GridSpec(r)) for r in (4, 8, 16)]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_gm_sandwich_random_pure(seed):
    rng = np.random.default_rng(seed)
    psi = PureState.from_unnormalized(rng.normal(size=8) + 1j * rng.normal(size=8))
    rho = outer(psi)
    assert gm_grid_oracle(rho, GridSpec(8)) <= gm_lambda2(rho).lambda2 + SLACK


# discord


def test_discord_oracle_psi1(grover):
    assert abs(discord_grid_oracle(grover["psi1"], Bipartition.parse("A|BC")) - 0.8113) < 1e-3


def test_discord_oracle_psi3(grover):
    ref = -((8 + math.sqrt(37)) / 16) * math.log2((8 + math.sqrt(37)) / 16) - ((8 - math.sqrt(37)) / 16) * math.log2(
        (8 - math.sqrt(37)) / 16
    )
    assert abs(discord_grid_oracle(grover["psi3"], Bipartition.parse("A|BC")) - ref) < 1e-3


def test_discord_oracle_product():
    v = np.array([0.6, 0.8j])
    rho = outer(PureState(kron(v.reshape(-1, 1), np.array([[1], [0]]), np.array([[0], [1]])).ravel()))
    assert abs(discord_grid_oracle(rho, Bipartition.parse("A|BC"))) < 1e-9


def test_discord_oracle_scope(grover):
    with pytest.raises(OracleError, match="oracle scope"):
        discord_grid_oracle(grover["psi1"], Bipartition.parse("AB|C"))


@pytest.mark.parametrize("label", LABELS)
def test_discord_sandwich_grover(grover, label):
    for split in ("A|BC", "B|AC", "C|AB"):
        s = Bipartition.parse(split)
        assert discord(grover[label], s) <= discord_grid_oracle(grover[label], s, GridSpec(32)) + SLACK


@pytest.mark.parametrize("seed", range(4))
def test_discord_sandwich_mixed(seed):
    rho = random_density(100 + seed, rank=2)
    s = Bipartition.parse("B|AC")
    assert discord(rho, s) <= discord_grid_oracle(rho, s, GridSpec(32)) + SLACK


def test_discord_oracle_refinement_monotone():
    rho = random_density(7, rank=3)
    s = Bipartition.parse("A|BC")
    vals = [discord_grid_oracle(rho, s, GridSpec(r)) for r in (4, 8, 16, 32, 64)]
    assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))
