"""Acceptance checks shared by the ``verify`` command and the test suite.

Each check carries the criterion it belongs to (1-8), the suite that runs it,
the expected value, what was computed and the tolerance used.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.stats import qmc

from . import closed_forms as cf
from .grover import GroverConfig, trace_states
from .hhl import HHLInput, all_stages
from .linalg import DensityMatrix, conjugate, hermitian_eigvals, kron, outer
from .measures import Bipartition, all_splits, coherence_frobenius, discord, gm_lambda2
from .measures.geometric import canonical_angles
from .oracles import GridSpec, coherence_grid_oracle, discord_grid_oracle, gm_grid_oracle

SUITES = ("tables", "formulas", "oracles", "invariants")
N_HHL_SAMPLES = 21
N_HHL_SWEEP = 201
N_LOCAL_UNITARIES = 10
ORACLE_SLACK = 1e-9
HHL_ORACLE_RESOLUTION = 16


@dataclass(frozen=True)
class Check:
    criterion: int
    suite: str
    name: str
    expected: str
    got: float
    tol: float
    passed: bool
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"{status} [{self.criterion}] {self.name}: expected {self.expected}, got {self.got:.12g}, tol {self.tol:g}"
        return out + (f" ({self.note})" if self.note else "")


def _close(criterion, suite, name, target, got, tol, note="") -> Check:
    return Check(criterion, suite, name, format(target, ".12g"), got, tol, abs(got - target) <= tol, note)


def euler_unitary(a: float, b: float, c: float) -> np.ndarray:
    """Rz(a) Ry(b) Rz(c)."""
    rz = lambda t: np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])  # noqa: E731
    ry = np.array([[math.cos(b / 2), -math.sin(b / 2)], [math.sin(b / 2), math.cos(b / 2)]])
    return rz(a) @ ry @ rz(c)


def deterministic_local_unitaries(n_qubits: int, count: int) -> list[np.ndarray]:
    """Tensor products of single-qubit rotations at fixed quasi-random Euler angles."""
    pts = qmc.Halton(d=3 * n_qubits, scramble=False).random(count + 1)[1:] * 2 * math.pi
    out = []
    for row in pts:
        gates = [euler_unitary(*row[3 * j : 3 * j + 3]) for j in range(n_qubits)]
        out.append(kron(*gates))
    return out


@dataclass
class Context:
    """Lazily computed and cached states and optimizer results."""

    _cache: dict = field(default_factory=dict)

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @cached_property
    def grover(self) -> dict[str, DensityMatrix]:
        tr = trace_states(GroverConfig())
        return {lab: outer(tr[lab]) for lab in cf.GROVER_LABELS}

    def grover_discord(self, label: str, split: str) -> float:
        return self._memo(("d", label, split), lambda: discord(self.grover[label], Bipartition.parse(split)))

    def grover_gm(self, label: str, mode: str = "symmetric"):
        return self._memo(("g", label, mode), lambda: gm_lambda2(self.grover[label], mode))

    @cached_property
    def hhl_b0(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, N_HHL_SAMPLES)

    @cached_property
    def hhl(self):
        return [all_stages(HHLInput.from_b0(float(b))) for b in self.hhl_b0]

    def hhl_gm(self, i: int, stage: int):
        st = self.hhl[i]
        rho = (st.rho1, st.rho2, st.rho3)[stage - 1]
        return self._memo(("h", i, stage), lambda: gm_lambda2(rho, "general"))


# criteria 1-3, one check per table cell


def suite_tables(ctx: Context) -> list[Check]:
    out = []
    for cell in cf.grover_table():
        rho = ctx.grover[cell.state_label]
        if cell.measure == "coherence":
            got = coherence_frobenius(rho)
            out.append(_close(1, "tables", f"coherence {cell.state_label} = {cell.exact_expr}", cell.exact_value, got, 1e-9))
        elif cell.measure == "discord":
            got = ctx.grover_discord(cell.state_label, "A|BC")
            out.append(_close(2, "tables", f"discord {cell.state_label} A|BC = {cell.exact_expr}", cell.exact_value, got, 1e-6))
        else:
            got = ctx.grover_gm(cell.state_label).gm
            out.append(_close(3, "tables", f"gm {cell.state_label} vs printed {cell.paper_value}", cell.paper_value, got, 0.01))
    return out


def suite_formulas(ctx: Context) -> list[Check]:
    out = []
    splits = [s.label for s in all_splits(3)]
    for label in cf.GROVER_LABELS:
        vals = [ctx.grover_discord(label, s) for s in splits]
        spread = max(vals) - min(vals)
        out.append(Check(2, "formulas", f"discord {label} equal across {len(splits)} splits", "spread 0", spread, 1e-6, spread <= 1e-6))
    for label, lam_ref, ang_ref in zip(cf.GROVER_LABELS, cf.GROVER_LAMBDA2, cf.GROVER_ARGMAX):
        res = ctx.grover_gm(label)
        out.append(_close(3, "formulas", f"Lambda^2 {label}", lam_ref, res.lambda2, 1e-3))
        found = canonical_angles(*res.argmax.angles[0])
        gap = cf.angle_mismatch(found, ang_ref)
        b_txt = "any" if ang_ref[1] is None else f"{ang_ref[1]:.4g}"
        out.append(
            Check(
                3, "formulas", f"argmax alpha {label}", f"alpha {ang_ref[0]} at beta {b_txt} up to symmetry",
                gap, 0.02, gap <= 0.02, note=f"found alpha={found[0]:.4f}, beta={found[1]:.4f}",
            )
        )

    # stage 1
    errs = [abs(ctx.hhl_gm(i, 1).gm - cf.hhl_stage1_gm(st.input)) for i, st in enumerate(ctx.hhl)]
    k = int(np.argmax(errs))
    out.append(
        Check(4, "formulas", f"HHL stage-1 GM vs -log2 max((b0-+b1)^2/2), {N_HHL_SAMPLES} b0", "max error 0",
              errs[k], 1e-4, errs[k] <= 1e-4, note=f"worst at b0={ctx.hhl_b0[k]:.3f}")
    )
    # stage 3
    errs = [abs(ctx.hhl_gm(i, 3).gm - cf.hhl_stage3_gm(st.stage3)) for i, st in enumerate(ctx.hhl)]
    k = int(np.argmax(errs))
    out.append(
        Check(5, "formulas", f"HHL stage-3 GM vs -log2 max(q,1-q), {N_HHL_SAMPLES} b0", "max error 0",
              errs[k], 1e-6, errs[k] <= 1e-6, note=f"worst at b0={ctx.hhl_b0[k]:.3f}")
    )
    # stage 2: two-angle optimum against the one-angle bound
    below, gap, unconfirmed = [], [], []
    for i, st in enumerate(ctx.hhl):
        red = cf.stage2_reduction(st.stage2)
        lam = ctx.hhl_gm(i, 2).lambda2
        below.append(red.f_max - lam)
        grid_max, on_axis = cf.stage2_beta_scan(st.rho2)
        if on_axis >= grid_max - 1e-12:
            gap.append(abs(lam - red.f_max))
        else:
            unconfirmed.append(float(ctx.hhl_b0[i]))
    worst_below = max(below)
    out.append(
        Check(6, "formulas", "HHL stage-2 optimum >= one-angle objective", "f_max - Lambda^2 <= 0",
              worst_below, ORACLE_SLACK, worst_below <= ORACLE_SLACK)
    )
    worst_gap = max(gap) if gap else 0.0
    note = f"{len(gap)} of {len(ctx.hhl)} b0 with beta confirmed in {{0, pi}}"
    if unconfirmed:
        note += f"; unconfirmed b0 reported only: {', '.join(f'{b:.3f}' for b in unconfirmed)}"
    out.append(
        Check(6, "formulas", "HHL stage-2 Lambda^2 vs one-angle objective", "max gap 0",
              worst_gap, 1e-4, worst_gap <= 1e-4, note=note)
    )
    return out


def suite_oracles(ctx: Context) -> list[Check]:
    out = []
    for label in cf.GROVER_LABELS:
        rho = ctx.grover[label]
        viol = coherence_frobenius(rho) - coherence_grid_oracle(rho)
        out.append(Check(7, "oracles", f"coherence {label}: optimizer <= grid", "violation <= 0", viol, ORACLE_SLACK, viol <= ORACLE_SLACK))
        viols = []
        for split in ("A|BC", "B|AC", "C|AB"):
            viols.append(ctx.grover_discord(label, split) - discord_grid_oracle(rho, Bipartition.parse(split)))
        viol = max(viols)
        out.append(Check(7, "oracles", f"discord {label}, single-qubit splits: optimizer <= grid", "violation <= 0", viol, ORACLE_SLACK, viol <= ORACLE_SLACK))
        viol = gm_grid_oracle(rho, symmetric=True) - ctx.grover_gm(label).lambda2
        out.append(Check(7, "oracles", f"Lambda^2 {label}: grid <= optimizer", "violation <= 0", viol, ORACLE_SLACK, viol <= ORACLE_SLACK))
    spec = GridSpec(HHL_ORACLE_RESOLUTION)
    for stage in (1, 2, 3):
        viols = []
        for i, st in enumerate(ctx.hhl):
            rho = (st.rho1, st.rho2, st.rho3)[stage - 1]
            viols.append(gm_grid_oracle(rho, spec) - ctx.hhl_gm(i, stage).lambda2)
        viol = max(viols)
        out.append(
            Check(7, "oracles", f"HHL stage-{stage} Lambda^2, {N_HHL_SAMPLES} b0: grid <= optimizer", "violation <= 0",
                  viol, ORACLE_SLACK, viol <= ORACLE_SLACK)
        )
    return out


def _density_violation(rho: DensityMatrix) -> float:
    m = rho.matrix
    herm = float(np.max(np.abs(m - m.conj().T)))
    tr = abs(float(np.trace(m).real) - 1.0)
    neg = max(0.0, -float(hermitian_eigvals(m).min()))
    return max(herm, tr, neg)


def suite_invariants(ctx: Context) -> list[Check]:
    out = []
    b0s = np.linspace(0.0, 1.0, N_HHL_SWEEP)
    worst_dm = worst_abc = worst_x = worst_y = 0.0
    for b in b0s:
        st = all_stages(HHLInput.from_b0(float(b)))
        worst_dm = max(worst_dm, *(_density_violation(r) for r in (st.rho1, st.rho2, st.rho3)))
        s3, s2 = st.stage3, st.stage2
        worst_abc = max(worst_abc, abs(s3.A**2 + s3.B**2 + s3.C1**2 + s3.C2**2 - 1.0))
        worst_x = max(worst_x, abs(s2.x1**2 + s2.x2**2 - 1.0))
        worst_y = max(worst_y, abs(s3.y1**2 + s3.y2**2 - 1.0))
    out.append(Check(8, "invariants", f"HHL density-matrix invariants, {N_HHL_SWEEP} b0", "violation 0", worst_dm, 1e-10, worst_dm <= 1e-10))
    out.append(Check(8, "invariants", "A^2+B^2+C1^2+C2^2 = 1", "error 0", worst_abc, 1e-10, worst_abc <= 1e-10))
    out.append(Check(8, "invariants", "x1^2+x2^2 = 1", "error 0", worst_x, 1e-10, worst_x <= 1e-10))
    out.append(Check(8, "invariants", "y1^2+y2^2 = 1", "error 0", worst_y, 1e-10, worst_y <= 1e-10))

    states = dict(ctx.grover)
    probe = all_stages(HHLInput(0.6, 0.8))
    states.update(hhl_rho1=probe.rho1, hhl_rho2=probe.rho2, hhl_rho3=probe.rho3)
    units = deterministic_local_unitaries(3, N_LOCAL_UNITARIES)
    for label, rho in states.items():
        base = gm_lambda2(rho, "general").gm
        dev = max(abs(gm_lambda2(conjugate(rho, u), "general").gm - base) for u in units)
        out.append(Check(8, "invariants", f"GM of {label} under {N_LOCAL_UNITARIES} local unitaries", "change 0", dev, 1e-5, dev <= 1e-5))

    zero = np.array([1.0, 0.0])
    tilted = np.array([math.cos(0.3), math.sin(0.3) * np.exp(0.7j)])
    other = np.array([math.cos(1.1), math.sin(1.1) * np.exp(-2.0j)])
    worst = 0.0
    for vecs in ((zero, zero, zero), (tilted, other, zero), (other, tilted, tilted)):
        psi = kron(*[v.reshape(-1, 1) for v in vecs]).ravel()
        rho = DensityMatrix(np.outer(psi, psi.conj()))
        worst = max(worst, *(abs(discord(rho, s)) for s in all_splits(3)))
    out.append(Check(8, "invariants", "discord of pure product states, all splits", "0", worst, 1e-6, worst < 1e-6))

    worst = 0.0
    for n in range(1, 11):
        tr = trace_states(GroverConfig(n, 2**n - 1, 2))
        worst = max(worst, *(abs(np.linalg.norm(s.amplitudes) - 1.0) for s in tr.states))
    out.append(Check(8, "invariants", "Grover trace normalization, n = 1..10", "error 0", worst, 1e-12, worst <= 1e-12))

    worst = 0.0
    for label in cf.GROVER_LABELS:
        worst = max(worst, abs(ctx.grover_gm(label, "symmetric").lambda2 - ctx.grover_gm(label, "general").lambda2))
    out.append(Check(8, "invariants", "symmetric and general GM agree on psi1-psi4", "difference 0", worst, 1e-6, worst <= 1e-6))
    return out


_SUITE_FUNCS = {
    "tables": suite_tables,
    "formulas": suite_formulas,
    "oracles": suite_oracles,
    "invariants": suite_invariants,
}


def run_suite(name: str, ctx: Context | None = None) -> list[Check]:
    ctx = Context() if ctx is None else ctx
    if name == "all":
        return [c for s in SUITES for c in _SUITE_FUNCS[s](ctx)]
    if name not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}")
    return _SUITE_FUNCS[name](ctx)


def by_criterion(checks: list[Check]) -> dict[int, list[Check]]:
    out: dict[int, list[Check]] = {}
    for c in checks:
        out.setdefault(c.criterion, []).append(c)
    return dict(sorted(out.items()))
