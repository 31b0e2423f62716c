"""Command line entry points.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import automatic, growth, integer_model
from .convolution import PAD
from .dfa import Dfa, dfa_to_dot
from .errors import SchreierError
from .mealy import machine_to_dot, parse_group_word, standard_machine
from .report import SCHEMA_VERSION
from .schreier import A, B, OmegaSpec, SchreierAction, ball_to_dot

OUT_DIR_ENV = "SCHREIER_AUTO_OUT"
VERIFY_TARGETS = ("vertices", "pairs", "edge-a", "edge-b", "crosscheck", "all")
EXPORT_TARGETS = ("machine", "vertex-dfa", "edge-dfa-a", "edge-dfa-b", "graph",
                  "integer-graph", "growth")
GUARDS = {"vertex_depth": 20, "pairs_depth": 10, "edge_depth": 16, "radius": growth.MAX_ACTION_RADIUS}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    omega: OmegaSpec = field(default_factory=OmegaSpec)
    vertex_depth: int = automatic.DEFAULT_VERTEX_DEPTH
    pairs_depth: int = 8
    edge_depth: int = automatic.DEFAULT_EDGE_DEPTH
    radius: int = 16
    out: str | None = None
    workers: int = 1

    def validate(self):
        for name, limit in GUARDS.items():
            value = getattr(self, name)
            if not 0 <= value <= limit:
                raise UsageError(f"{name.replace('_', ' ')} {value} outside [0, {limit}]")
        if self.workers < 1:
            raise UsageError("workers must be positive")


def _parse_vertex(text: str) -> str:
    return "" if text in ("", "ε", "e", "eps") else text


def _show_vertex(v: str) -> str:
    return v or "ε"


def _emit(text: str, out: str | None, default_name: str):
    if out is None and os.environ.get(OUT_DIR_ENV):
        out = str(Path(os.environ[OUT_DIR_ENV]) / default_name)
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_act(args) -> int:
    omega = OmegaSpec.parse(args.omega)
    action = SchreierAction(omega=omega)
    g = parse_group_word(args.generators)
    v = action.act_word(g, _parse_vertex(args.vertex))
    print(_show_vertex(v))
    return 0


def run_verification(target: str, cfg: RunConfig) -> list:
    omega, reports = cfg.omega, []
    targets = VERIFY_TARGETS[:-1] if target == "all" else (target,)
    for t in targets:
        if t == "vertices":
            reports.append(automatic.verify_vertices(cfg.vertex_depth, omega, workers=cfg.workers))
        elif t == "pairs":
            reports.append(automatic.verify_pairs(cfg.pairs_depth, omega, workers=cfg.workers))
        elif t in ("edge-a", "edge-b"):
            s = A if t == "edge-a" else B
            reports.append(automatic.verify_edges(s, cfg.edge_depth, omega, workers=cfg.workers))
        elif t == "crosscheck":
            corr = integer_model.find_correspondence(omega=omega)
            reports.append(integer_model.cross_check(corr, cfg.radius, SchreierAction(omega=omega)))
    return reports


def cmd_verify(args) -> int:
    cfg = _config(args, "verify")
    if args.depth is not None:
        cfg.vertex_depth = cfg.pairs_depth = cfg.edge_depth = args.depth
        if args.target == "all":
            raise UsageError("--depth applies to a single target; use the per-language flags with 'all'")
        cfg.validate()
    reports = run_verification(args.target, cfg)
    passed = all(r.passed for r in reports)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "omega": str(cfg.omega),
        "target": args.target,
        "passed": passed,
        "reports": [r.to_dict() for r in reports],
    }
    _emit(_json(doc), cfg.out, f"verify-{args.target}.json")
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.language} depth={r.depth} agreements={r.agreements}", file=sys.stderr)
    return 0 if passed else 1


def _symbol(a) -> str:
    if isinstance(a, tuple):
        return "/".join("-" if x is PAD else x for x in a)
    return str(a)


def dfa_to_json(d: Dfa) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "alphabet": [_symbol(a) for a in d.alphabet],
        "initial": d.initial,
        "accepting": sorted(d.accepting),
        "delta": [list(row) for row in d.delta],
    }


def _export_dfa(d: Dfa, fmt: str, name: str) -> str:
    if fmt == "dot":
        return dfa_to_dot(d, name, _symbol)
    if fmt == "json":
        return _json(dfa_to_json(d))
    raise UsageError(f"{name} cannot be exported as {fmt}")


def cmd_export(args) -> int:
    cfg = _config(args, "export")
    omega, target = cfg.omega, args.target
    fmt = args.format or ("csv" if target == "growth" else "dot")
    if target == "machine":
        m = standard_machine()
        if fmt == "dot":
            text = machine_to_dot(m, "machine")
        elif fmt == "json":
            text = _json({
                "schema_version": SCHEMA_VERSION,
                "states": list(m.states),
                "alphabet": list(m.alphabet),
                "edges": [[q, x, m.output[q, x], m.transition[q, x]] for q in m.states for x in m.alphabet],
            })
        else:
            raise UsageError("machine exports as dot or json")
    elif target == "vertex-dfa":
        text = _export_dfa(automatic.vertex_dfa(omega), fmt, "vertex_dfa")
    elif target in ("edge-dfa-a", "edge-dfa-b"):
        s = A if target.endswith("a") else B
        text = _export_dfa(automatic.edge_relation_dfa(s, omega), fmt, f"edge_dfa_{s}")
    elif target == "graph":
        action = SchreierAction(omega=omega)
        dist = action.ball("", cfg.radius)
        if fmt == "dot":
            text = ball_to_dot(action, dist)
        elif fmt == "json":
            order = sorted(dist, key=lambda v: (dist[v], len(v), v))
            text = _json({
                "schema_version": SCHEMA_VERSION,
                "omega": str(omega),
                "radius": cfg.radius,
                "distances": {_show_vertex(v): dist[v] for v in order},
            })
        else:
            raise UsageError("graph exports as dot or json")
    elif target == "integer-graph":
        half = max(cfg.radius, 1)
        g = integer_model.build_graph(omega, (-half, half))
        if fmt == "dot":
            text = g.to_dot()
        elif fmt == "csv":
            text = g.to_csv()
        else:
            raise UsageError("integer-graph exports as dot or csv")
    elif target == "growth":
        if fmt != "csv":
            raise UsageError("growth exports as csv")
        series = growth.growth_series(growth.ActionModel(omega), "", cfg.radius)
        text = growth.to_csv(series)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(target)
    _emit(text, cfg.out, f"{target}.{fmt}")
    return 0


def cmd_growth(args) -> int:
    cfg = _config(args, "growth")
    if args.model == "action":
        model, basepoint = growth.ActionModel(cfg.omega), ""
    else:
        corr = integer_model.find_correspondence(omega=cfg.omega)
        model, basepoint = growth.IntegerModel(cfg.omega), corr(0)
    series = growth.growth_series(model, basepoint, cfg.radius)
    csv_text = growth.to_csv(series)
    _emit(csv_text, cfg.out, f"growth-{args.model}.csv")
    if series.radius >= 16:
        report = growth.diagnostics(series)
    else:
        report = {"model": series.model, "radius": series.radius,
                  "note": "diagnostics need radius >= 16"}
    report["schema_version"] = SCHEMA_VERSION
    report["values"] = list(series.values)
    if args.report:
        _emit(_json(report), args.report, "growth-diagnostics.json")
    elif cfg.out is not None:
        sys.stdout.write(_json(report))
    return 0


def cmd_diagnose(args) -> int:
    series = growth.read_csv(args.csv)
    sys.stdout.write(_json(growth.diagnostics(series)))
    return 0


def cmd_stats(args) -> int:
    sys.stdout.write(_json(automatic.structure_stats(OmegaSpec.parse(args.omega))))
    return 0


def _config(args, command: str) -> RunConfig:
    cfg = RunConfig(command, OmegaSpec.parse(args.omega), out=getattr(args, "out", None),
                    workers=getattr(args, "threads", 1) or 1)
    for name in ("vertex_depth", "pairs_depth", "edge_depth", "radius"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    cfg.validate()
    return cfg


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schreier-auto",
        description="Automatic structure and growth of the Schreier graph of (01)^oo.",
        epilog=f"Without --out, outputs go to stdout, or to ${OUT_DIR_ENV}/<name> when that is set.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--omega", default="01",
                        help="period of the basepoint, e.g. 01 for (01)^oo (default: %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("act", parents=[common], help="apply a generator word to an encoded vertex")
    p.add_argument("generators", help="e.g. a, b, ab^-1, aB (upper case = inverse)")
    p.add_argument("vertex", help="canonical encoding; ε, e or '' for the basepoint")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("verify", parents=[common], help="exhaustive verification against brute force")
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("--depth", type=int, help="depth for a single-language target")
    p.add_argument("--vertex-depth", type=int, help="vertex language depth (default 16)")
    p.add_argument("--pairs-depth", type=int, help="pairs language depth (default 8)")
    p.add_argument("--edge-depth", type=int, help="edge relation depth (default 12)")
    p.add_argument("--radius", type=int, help="crosscheck ball radius (default 16)")
    p.add_argument("--threads", "--workers", type=int, default=1, dest="threads",
                   help="worker processes for enumeration (default 1)")
    p.add_argument("--out", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", parents=[common], help="export automata, graphs and series")
    p.add_argument("target", choices=EXPORT_TARGETS)
    p.add_argument("--format", choices=("dot", "csv", "json"),
                   help="output format (default: csv for growth, dot otherwise)")
    p.add_argument("--radius", type=int, default=6,
                   help="ball radius for graph/growth, half-width for integer-graph (default 6)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("growth", parents=[common], help="growth series and diagnostics")
    p.add_argument("--model", choices=("action", "integer"), default="action")
    p.add_argument("--radius", type=int, default=growth.DEFAULT_RADIUS)
    p.add_argument("--out", help="CSV destination")
    p.add_argument("--report", help="diagnostics JSON destination")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("diagnose", help="diagnostics for a growth CSV written by 'growth'")
    p.add_argument("csv")
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("stats", parents=[common], help="state counts of the minimized acceptors")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SchreierError, KeyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
