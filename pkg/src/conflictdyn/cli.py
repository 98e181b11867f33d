"""Command-line interface.

Exit codes: 0 success, 1 usage or I/O error, 2 scenario parse/validation
error, 3 numerical or internal error.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from . import __version__
from .games import (
    GAME_VARIANTS,
    correspondence_report,
    dominant_strategies,
    mixed_nash_support_enum,
    pure_nash,
    behavior_label,
)
from .model import PARAM_NAMES, OrbitDiverged, derive_coefficients, orbit, validate_params, State
from .scan import SweepConfig, UsageError, sweep
from .scenarios import (
    DEFAULT_GAME,
    GameSpec,
    Scenario,
    ScenarioError,
    get_preset,
    load_scenario,
)
from .stability import InternalConsistencyError, analyze, attracting, settle_time

EXIT_OK, EXIT_USAGE, EXIT_SCENARIO, EXIT_NUMERIC = 0, 1, 2, 3
SETTLE_EPS = 1e-3
SETTLE_WINDOW = 10


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(v: float) -> str:
    return f"{v:.9g}"


# --------------------------------------------------------------------- helpers

def _scenario(args) -> Scenario:
    if args.scenario and args.preset:
        raise CLIError("use either --scenario or --preset, not both", EXIT_USAGE)
    if args.scenario:
        try:
            scenario = load_scenario(args.scenario)
        except OSError as exc:
            raise CLIError(f"cannot read scenario: {exc}", EXIT_USAGE) from None
        except ScenarioError as exc:
            raise CLIError(f"scenario {args.scenario}: {exc}", EXIT_SCENARIO) from None
    else:
        try:
            scenario = get_preset(args.preset or "salamis_straits")
        except ScenarioError as exc:
            raise CLIError(str(exc), EXIT_USAGE) from None
    outcome = validate_params(scenario.params, strict=args.strict)
    if not outcome.accepted:
        raise CLIError("strict validation failed: " + "; ".join(outcome.errors), EXIT_SCENARIO)
    for w in outcome.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return scenario


def _complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _fmt_complex(z: complex) -> str:
    if z.imag == 0.0:
        return f"{z.real:.6g}"
    if z.real == 0.0:
        return f"{z.imag:.6g}i"
    return f"{z.real:.6g}{z.imag:+.6g}i"


def _analysis(scenario: Scenario):
    try:
        return analyze(scenario.params, scenario.name)
    except InternalConsistencyError as exc:
        raise CLIError(f"analyze: internal consistency error: {exc}", EXIT_NUMERIC) from None


def analysis_records(reports) -> list[dict]:
    out = []
    for k, r in enumerate(reports, 1):
        fp, v = r.fixed_point, r.verdict
        out.append({
            "label": f"E{k}",
            "x": round(fp.location.x, 6),
            "y": round(fp.location.y, 6),
            "residual": fp.residual,
            "admissible": fp.admissible,
            "jacobian": v.jacobian.tolist(),
            "trace": v.trace,
            "determinant": v.determinant,
            "discriminant": v.discriminant,
            "eigenvalues": [_complex_pair(z) for z in v.eigenvalues],
            "spectral_radius": v.spectral_radius,
            "paper_scheme": v.paper_scheme,
            "discrete_scheme": v.discrete_scheme,
        })
    return out


def settle_summary(scenario: Scenario, reports, initial: State | None = None) -> dict:
    """Settle time towards the admissible attracting fixed point, if any."""
    initial = initial or scenario.simulate.initial
    targets = [(k, r) for k, r in enumerate(reports, 1) if r.fixed_point.admissible and attracting(r)]
    summary = {"initial": [initial.x, initial.y], "epsilon": SETTLE_EPS, "window": SETTLE_WINDOW,
               "target": None, "settle_time": None, "diverged": False}
    if not targets:
        return summary
    coeffs = derive_coefficients(scenario.params)
    k, rep = min(targets, key=lambda kr: kr[1].fixed_point.location.distance(initial))
    res = settle_time(coeffs, initial, rep.fixed_point.location, SETTLE_EPS, SETTLE_WINDOW)
    loc = rep.fixed_point.location
    summary.update(target={"label": f"E{k}", "x": round(loc.x, 6), "y": round(loc.y, 6)},
                   settle_time=res.step, diverged=res.diverged)
    return summary


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise CLIError(f"cannot write {path}: {exc}", EXIT_USAGE) from None


# -------------------------------------------------------------------- commands

def cmd_analyze(args) -> int:
    scenario = _scenario(args)
    records = analysis_records(_analysis(scenario))
    if args.json:
        print(json.dumps({"scenario": scenario.name, "fixed_points": records}, indent=2))
        return EXIT_OK
    print(f"scenario: {scenario.name}")
    print(f"fixed points: {len(records)}")
    for rec in records:
        print(f"{rec['label']}: x={rec['x']:.6f} y={rec['y']:.6f} residual={rec['residual']:.2e} "
              f"admissible={'yes' if rec['admissible'] else 'no'}")
        eig = ", ".join(_fmt_complex(complex(*z)) for z in rec["eigenvalues"])
        print(f"    trace={rec['trace']:.6g} det={rec['determinant']:.6g} "
              f"discriminant={rec['discriminant']:.6g} eigenvalues=({eig})")
        print(f"    paper-scheme={rec['paper_scheme']} discrete-scheme={rec['discrete_scheme']}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    scenario = _scenario(args)
    sim = scenario.simulate
    steps = sim.steps if args.steps is None else args.steps
    if steps < 0:
        raise CLIError("--steps must be >= 0", EXIT_USAGE)
    initial = State(sim.initial.x if args.x0 is None else args.x0,
                    sim.initial.y if args.y0 is None else args.y0)
    coeffs = derive_coefficients(scenario.params)
    diverged_at = None
    try:
        orb = orbit(coeffs, initial, steps, sim.clamp)
    except OrbitDiverged as exc:
        orb, diverged_at = exc.orbit, exc.last_index + 1
    buf = io.StringIO()
    buf.write("t,x,y\n")
    for t in range(len(orb)):
        buf.write(f"{t},{fmt(orb.xs[t])},{fmt(orb.ys[t])}\n")
    if diverged_at is not None:
        buf.write(f"# diverged at t={diverged_at}\n")
    _write(args.out, buf.getvalue())

    summary = settle_summary(scenario, _analysis(scenario), initial)
    info = sys.stdout if args.out else sys.stderr
    if args.json:
        print(json.dumps({"scenario": scenario.name, "rows": len(orb), "diverged_at": diverged_at,
                          "settle": summary}, indent=2), file=info)
    elif summary["target"] is None:
        print("settle time: no admissible attracting fixed point", file=info)
    else:
        tgt = summary["target"]
        when = summary["settle_time"]
        print(f"settle time: {when if when is not None else 'not reached'} steps "
              f"(target {tgt['label']} ({tgt['x']:.6f}, {tgt['y']:.6f}), "
              f"eps={SETTLE_EPS:g}, window={SETTLE_WINDOW})", file=info)
    return EXIT_NUMERIC if diverged_at is not None else EXIT_OK


def sweep_csvs(results, with_lyapunov: bool) -> tuple[str, str]:
    samples = ["param,sample_index,x,y\n"]
    summary = ["param,period,lyapunov_max,diverged\n"]
    for r in results:
        v = fmt(r.value)
        for k in range(len(r.xs)):
            samples.append(f"{v},{k},{fmt(r.xs[k])},{fmt(r.ys[k])}\n")
        period = "" if r.period is None else str(r.period)
        lyap = fmt(r.lyapunov) if with_lyapunov and r.lyapunov is not None else ""
        summary.append(f"{v},{period},{lyap},{'true' if r.diverged else 'false'}\n")
    return "".join(samples), "".join(summary)


def cmd_sweep(args) -> int:
    scenario = _scenario(args)
    try:
        config = SweepConfig(args.param, args.lo, args.hi, args.points, args.transient,
                             args.samples, scenario.simulate.initial, lyapunov=args.lyapunov)
    except UsageError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from None
    results = sweep(scenario.params, config)
    samples, summary = sweep_csvs(results, args.lyapunov)
    _write(f"{args.out}_samples.csv", samples)
    _write(f"{args.out}_summary.csv", summary)
    periods: dict[str, int] = {}
    for r in results:
        key = "diverged" if r.diverged else ("aperiodic" if r.period is None else f"period {r.period}")
        periods[key] = periods.get(key, 0) + 1
    line = ", ".join(f"{k}: {n}" for k, n in sorted(periods.items()))
    print(f"swept {args.param} over [{fmt(args.lo)}, {fmt(args.hi)}] at {args.points} points; {line}")
    return EXIT_OK


def game_record(spec: GameSpec) -> dict:
    game = spec.build()
    name = lambda labels, idx: labels[idx]  # noqa: E731
    return {
        "variant": spec.variant,
        "benefit": spec.benefit,
        "cost": spec.cost,
        "row_payoffs": game.A.tolist(),
        "col_payoffs": game.B.tolist(),
        "pure_equilibria": [
            {"profile": [name(game.row_labels, e.profile()[0]), name(game.col_labels, e.profile()[1])],
             "payoffs": list(e.payoffs)}
            for e in pure_nash(game)
        ],
        "equilibria": [
            {"row": list(e.row), "col": list(e.col), "payoffs": list(e.payoffs), "kind": e.kind}
            for e in mixed_nash_support_enum(game)
        ],
        "dominance": [
            {"player": d.player,
             "dominating": (game.row_labels if d.player == 1 else game.col_labels)[d.dominating],
             "dominated": (game.row_labels if d.player == 1 else game.col_labels)[d.dominated],
             "strictness": d.strictness}
            for d in dominant_strategies(game)
        ],
    }


def _table(labels_r, labels_c, table) -> list[str]:
    head = "        " + "".join(f"{c:>10}" for c in labels_c)
    return [head] + [f"  {r:<6}" + "".join(f"{fmt(v):>10}" for v in row) for r, row in zip(labels_r, table)]


def cmd_game(args) -> int:
    base = DEFAULT_GAME
    if args.scenario or args.preset:
        base = _scenario(args).game_or_default
    spec = GameSpec(args.variant or base.variant,
                    base.benefit if args.benefit is None else args.benefit,
                    base.cost if args.cost is None else args.cost)
    try:
        rec = game_record(spec)
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from None
    if args.json:
        print(json.dumps(rec, indent=2))
        return EXIT_OK
    labels = ("Hawk", "Dove")
    print(f"Hawk-Dove ({spec.variant}), benefit={fmt(spec.benefit)}, cost={fmt(spec.cost)}")
    print("row player payoffs:")
    print("\n".join(_table(labels, labels, rec["row_payoffs"])))
    print("column player payoffs:")
    print("\n".join(_table(labels, labels, rec["col_payoffs"])))
    print("pure equilibria:")
    for e in rec["pure_equilibria"]:
        print(f"  ({e['profile'][0]}, {e['profile'][1]})  payoffs ({fmt(e['payoffs'][0])}, {fmt(e['payoffs'][1])})")
    print("all equilibria (support enumeration):")
    for e in rec["equilibria"]:
        row = ", ".join(fmt(p) for p in e["row"])
        col = ", ".join(fmt(q) for q in e["col"])
        print(f"  {e['kind']:<5} row=({row}) col=({col})  payoffs ({fmt(e['payoffs'][0])}, {fmt(e['payoffs'][1])})")
    print("dominance:")
    if not rec["dominance"]:
        print("  none")
    for d in rec["dominance"]:
        print(f"  player {d['player']}: {d['dominating']} {d['strictness']}ly dominates {d['dominated']}")
    return EXIT_OK


def report_record(scenario: Scenario) -> dict:
    reports = _analysis(scenario)
    spec = scenario.game_or_default
    try:
        rows = correspondence_report(reports, spec.build())
    except ValueError as exc:
        raise CLIError(f"game: {exc}", EXIT_NUMERIC) from None
    records = analysis_records(reports)
    behavior = [
        {"label": rec["label"], "x": behavior_label(r.fixed_point.location)[0],
         "y": behavior_label(r.fixed_point.location)[1]}
        for rec, r in zip(records, reports)
    ]
    return {
        "schema": "conflictdyn.report/1",
        "scenario": scenario.name,
        "params": scenario.params.as_dict(),
        "fixed_points": records,
        "behavior": behavior,
        "game": {"variant": spec.variant, "benefit": spec.benefit, "cost": spec.cost,
                 "row_player": "x", "column_player": "y"},
        "correspondence": [
            {"x": round(c.location[0], 6), "y": round(c.location[1], 6),
             "labels": {"x": c.labels[0], "y": c.labels[1]},
             "profile": {"row": c.profile[0], "column": c.profile[1]},
             "nash": c.nash}
            for c in rows
        ],
        "settle": settle_summary(scenario, reports),
    }


def cmd_report(args) -> int:
    print(json.dumps(report_record(_scenario(args)), indent=2))
    return EXIT_OK


# ---------------------------------------------------------------------- parser

def _common(json_help: str = "emit JSON") -> argparse.ArgumentParser:
    # SUPPRESS lets the same flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--scenario", metavar="PATH", default=argparse.SUPPRESS, help="scenario JSON file")
    p.add_argument("--preset", metavar="NAME", default=argparse.SUPPRESS,
                   help="built-in scenario (default salamis_straits)")
    p.add_argument("--strict", action="store_true", default=argparse.SUPPRESS,
                   help="reject parameters outside [0, 1]")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help=json_help)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="conflictdyn", parents=[common],
                     description="Two-player conflict map: fixed points, sweeps and Hawk-Dove games.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", parents=[common], help="fixed points and stability")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", parents=[common], help="time series CSV (t,x,y)")
    p.add_argument("--steps", type=int)
    p.add_argument("--x0", type=float)
    p.add_argument("--y0", type=float)
    p.add_argument("--out", metavar="PATH", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common], help="one-parameter bifurcation sweep")
    p.add_argument("--param", required=True, help=f"one of {', '.join(PARAM_NAMES)}")
    p.add_argument("--from", dest="lo", type=float, required=True)
    p.add_argument("--to", dest="hi", type=float, required=True)
    p.add_argument("--points", type=int, default=181)
    p.add_argument("--transient", type=int, default=500)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--lyapunov", action="store_true")
    p.add_argument("--out", metavar="PREFIX", default="sweep")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("game", parents=[common], help="Hawk-Dove equilibria and dominance")
    p.add_argument("--variant", choices=sorted(GAME_VARIANTS))
    p.add_argument("--benefit", type=float)
    p.add_argument("--cost", type=float)
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("report", parents=[common], help="combined JSON report")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    for name, default in (("scenario", None), ("preset", None), ("strict", False), ("json", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (InternalConsistencyError, ArithmeticError) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
