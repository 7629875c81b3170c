"""Command-line entry point: ``qrta grover|hhl|hhl-sweep|verify``."""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import closed_forms as cf
from .checks import SUITES, run_suite
from .grover import GroverConfig, GroverError, trace_states
from .hhl import HHLError, HHLInput, all_stages
from .linalg import is_permutation_symmetric, outer
from .measures import Bipartition, coherence_frobenius, discord, gm_lambda2
from .report import MEASURES, ReportRow, SweepRow, render, sweep_to_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
INPUT_NORM_TOL = 1e-9

STAGE_EXPRS = {
    1: "-log2(max((b0-b1)^2/2,(b0+b1)^2/2))",
    2: "-log2(max f(alpha)), f=a*cos^6+b*cos^3*sin^3+c*sin^6",
    3: "-log2(max(q,1-q))",
}


class UsageError(Exception):
    pass


def _gm_mode(rho) -> str:
    return "symmetric" if is_permutation_symmetric(rho) else "general"


def grover_rows(config: GroverConfig, measures: list[str]) -> list[ReportRow]:
    """One row per (state, measure) for every state after the first oracle call."""
    trace = trace_states(config)
    with_refs = config == GroverConfig()
    rows = []
    for label, psi in trace.items():
        if label == "s":
            continue
        rho = outer(psi)
        for measure in measures:
            cell = cf.grover_cell(label, measure) if with_refs and label in cf.GROVER_LABELS else None
            expr = cell.exact_expr if cell else None
            printed = cell.paper_value if cell else None
            if measure == "coherence":
                rows.append(ReportRow(label, measure, "", coherence_frobenius(rho), expr, printed))
            elif measure == "discord":
                if config.n_qubits < 2:
                    continue
                split = Bipartition.of(config.n_qubits, [0])
                rows.append(ReportRow(label, measure, split.label, discord(rho, split), expr, printed))
            else:
                res = gm_lambda2(rho, _gm_mode(rho))
                rows.append(ReportRow(label, measure, "", res.gm, expr, printed))
    return rows


def hhl_formula_values(inp: HHLInput):
    st = all_stages(inp)
    formula = (
        cf.hhl_stage1_gm(inp),
        cf.stage2_reduction(st.stage2).gm,
        cf.hhl_stage3_gm(st.stage3),
    )
    return st, formula


def hhl_rows(inp: HHLInput) -> list[ReportRow]:
    st, formula = hhl_formula_values(inp)
    rows = []
    for stage, rho in enumerate((st.rho1, st.rho2, st.rho3), start=1):
        numeric = gm_lambda2(rho, "general").gm
        rows.append(ReportRow(f"hhl_rho{stage}", "gm", "", numeric, STAGE_EXPRS[stage], formula[stage - 1]))
    return rows


def sweep_rows(steps: int) -> list[SweepRow]:
    rows = []
    for b0 in np.linspace(0.0, 1.0, steps):
        inp = HHLInput.from_b0(float(b0))
        st, formula = hhl_formula_values(inp)
        for stage, rho in enumerate((st.rho1, st.rho2, st.rho3), start=1):
            rows.append(SweepRow(float(b0), stage, formula[stage - 1], gm_lambda2(rho, "general").gm))
    return rows


def _parse_measures(text: str) -> list[str]:
    items = [m.strip() for m in text.split(",") if m.strip()]
    if not items:
        raise UsageError("--measures is empty")
    bad = [m for m in items if m not in MEASURES]
    if bad:
        raise UsageError(f"unknown measure(s): {', '.join(bad)}; choose from {', '.join(MEASURES)}")
    return list(dict.fromkeys(items))


def _hhl_input(b0: float, b1: float | None) -> HHLInput:
    if not math.isfinite(b0) or (b1 is not None and not math.isfinite(b1)):
        raise UsageError("b0 and b1 must be finite")
    if b1 is None:
        if abs(b0) > 1.0:
            raise UsageError(f"|b0| = {abs(b0)} exceeds 1")
        return HHLInput.from_b0(b0)
    norm2 = b0 * b0 + b1 * b1
    if abs(norm2 - 1.0) > INPUT_NORM_TOL:
        raise UsageError(f"b0^2 + b1^2 = {norm2!r}, expected 1 within {INPUT_NORM_TOL:g}")
    s = math.sqrt(norm2)
    return HHLInput(b0 / s, b1 / s)


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror or exc}") from None


def cmd_grover(args) -> int:
    if not 1 <= args.qubits <= 10:
        raise UsageError("--qubits must be between 1 and 10")
    if args.iterations < 1:
        raise UsageError("--iterations must be >= 1")
    measures = _parse_measures(args.measures)
    try:
        config = GroverConfig(args.qubits, args.target, args.iterations)
    except GroverError as exc:
        raise UsageError(str(exc)) from None
    if "discord" in measures and args.qubits < 2:
        print("note: discord needs at least two qubits; no discord rows", file=sys.stderr)
    _emit(render(grover_rows(config, measures), args.format), args.out)
    return EXIT_OK


def cmd_hhl(args) -> int:
    inp = _hhl_input(args.b0, args.b1)
    _emit(render(hhl_rows(inp), args.format), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be >= 2")
    _emit(sweep_to_csv(sweep_rows(args.steps)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_suite(args.suite)
    lines = [c.line() for c in checks]
    n_fail = sum(not c.passed for c in checks)
    lines.append(f"{len(checks) - n_fail}/{len(checks)} checks passed")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if n_fail == 0 else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qrta", description="Coherence, discord and GM along Grover and HHL states.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("grover", help="measures on each Grover step")
    g.add_argument("--qubits", type=int, default=3)
    g.add_argument("--target", type=int, default=None, help="marked index (default: all ones)")
    g.add_argument("--iterations", type=int, default=2)
    g.add_argument("--measures", default="coherence,discord,gm", help="comma list of coherence, discord, gm")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--out")
    g.set_defaults(func=cmd_grover)

    h = sub.add_parser("hhl", help="GM of the three HHL stages, numeric and closed form")
    h.add_argument("--b0", type=float, required=True)
    h.add_argument("--b1", type=float, default=None, help="default: sqrt(1 - b0^2)")
    h.add_argument("--format", choices=("csv", "json"), default="csv")
    h.add_argument("--out")
    h.set_defaults(func=cmd_hhl)

    s = sub.add_parser("hhl-sweep", help="HHL stage GM over a uniform b0 grid on [0, 1]")
    s.add_argument("--steps", type=int, default=101)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="run the acceptance checks")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "grover" and args.target is None:
        args.target = 2 ** max(args.qubits, 1) - 1 if 1 <= args.qubits <= 10 else 0
    try:
        return args.func(args)
    except (UsageError, HHLError) as exc:
        print(f"qrta {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
