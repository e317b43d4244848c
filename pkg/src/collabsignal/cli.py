"""Command-line interface.

Subcommands: gen, bench, construct, verify, lowerbound, sweep.  Exit codes:
0 ok, 2 input error, 3 capacity error, 4 verification failure.  Randomized
paths require an explicit --seed; --mode selects float or exact-rational
reporting.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import lowerbounds
from .benchmarks import STABLE_CAP_DEFAULT, compute_benchmarks
from .constructions import CONSTRUCTORS
from .errors import (
    CapacityError,
    CollabSignalError,
    InputError,
    NoImprovementPossible,
    UnsupportedExact,
    VerificationError,
)
from .graphs import (
    WeightedGraph,
    gen_clique_leaves,
    gen_component_mix,
    gen_double_star,
    gen_k_star_clique,
    gen_triangle_centers,
)
from .modes import FLOAT, RATIONAL, format_number, parse_number, tolerance
from .schemes import (
    SignalingScheme,
    is_persuasive,
    slack_report_exact,
    slack_report_mc,
)
from .sweep import emit_report, render_figure, result_to_json_obj, run_sweep

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAPACITY = 3
EXIT_VERIFICATION = 4


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--mode", choices=(FLOAT, RATIONAL), default=FLOAT)
    parser.add_argument("--seed", type=int, default=None, help="RNG seed (required for randomized paths)")
    parser.add_argument("--out", default=None, help="write output to this path as well as stdout")


def _emit(obj: dict, out: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=1)
    print(text)
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc}") from exc


def _load_graph(path: str) -> WeightedGraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return WeightedGraph.from_json(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read graph {path}: {exc}") from exc


def _load_scheme(path: str) -> SignalingScheme:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return SignalingScheme.from_json(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read scheme {path}: {exc}") from exc


def _require_seed(args) -> int:
    if args.seed is None:
        raise InputError("this command uses randomness; pass --seed")
    return args.seed


# -- subcommand handlers -----------------------------------------------------------


def _cmd_gen(args) -> int:
    if args.family == "double-star":
        g = gen_double_star(args.k)
    elif args.family == "triangle-centers":
        g = gen_triangle_centers(args.k)
    elif args.family == "clique-leaves":
        g = gen_clique_leaves(args.k)
    elif args.family == "k-star-clique":
        if args.n is None:
            raise InputError("k-star-clique needs --n")
        g = gen_k_star_clique(args.k, args.n)
    elif args.family == "component-mix":
        if args.spec:
            spec = json.loads(args.spec)
        elif args.spec_file:
            with open(args.spec_file, "r", encoding="utf-8") as fh:
                spec = json.load(fh)
        else:
            raise InputError("component-mix needs --spec or --spec-file")
        g = gen_component_mix(spec)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown family {args.family}")
    _emit(g.to_json_obj(args.mode), args.out)
    return EXIT_OK


def _cmd_bench(args) -> int:
    g = _load_graph(args.graph)
    report = compute_benchmarks(
        g, args.mode, stable_cap=args.stable_cap, skip_stable=args.skip_stable
    )

    def num(x):
        return None if x is None else format_number(Fraction(x) if not isinstance(x, Fraction) else x, args.mode)

    obj = {
        "opt": num(report.opt),
        "opt_ir": num(report.opt_ir),
        "opt_stable": num(report.opt_stable),
        "pos": num(report.pos),
        "stable_status": report.stable_status,
        "witnesses": {
            k: [num(x) for x in v] for k, v in report.witnesses.items()
        },
    }
    _emit(obj, args.out)
    return EXIT_OK


def _cmd_construct(args) -> int:
    g = _load_graph(args.graph)
    seed = args.seed if args.seed is not None else None
    if args.scheme == "binary-unit" and seed is None:
        raise InputError("binary-unit uses randomized rounding; pass --seed")
    try:
        scheme, params = CONSTRUCTORS[args.scheme](g, seed if seed is not None else 0)
    except NoImprovementPossible as exc:
        _emit({"status": "no-improvement-possible", "detail": str(exc)}, args.out)
        return EXIT_INPUT
    report = slack_report_exact(g, scheme, args.mode)
    obj = {
        "scheme": scheme.to_json_obj(args.mode),
        "params": params.to_json_obj(args.mode) if params else None,
        "slack_report": report.to_json_obj(),
        "persuasive": is_persuasive(report, tolerance(args.mode)),
    }
    _emit(obj, args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    scheme = _load_scheme(args.scheme)
    if args.mc:
        seed = _require_seed(args)
        report = slack_report_mc(g, scheme, samples=args.mc, seed=seed)
        tol = args.tol if args.tol is not None else max(
            (5 * (e.stderr or 0.0) for e in report.entries), default=0.0
        ) or 1e-9
    else:
        try:
            report = slack_report_exact(g, scheme, args.mode)
        except UnsupportedExact as exc:
            raise InputError(
                f"{exc}; re-run with --mc SAMPLES --seed SEED"
            ) from exc
        tol = args.tol if args.tol is not None else tolerance(args.mode)
    persuasive = is_persuasive(report, tol)
    obj = report.to_json_obj()
    obj["persuasive"] = persuasive
    obj["tolerance"] = float(tol)
    _emit(obj, args.out)
    return EXIT_OK if persuasive else EXIT_VERIFICATION


def _cmd_lowerbound(args) -> int:
    g = _load_graph(args.graph)
    grid = tuple(parse_number(tok) for tok in args.grid.split(","))
    if args.search:
        cert, report = lowerbounds.search_piecewise_certificate(g, grid)
        obj = {
            "certificate": cert.to_json_obj(),
            "certified": report["certified"],
            "lower_bound": str(cert.c_bound),
            "search": {
                "a": str(report["a"]),
                "b": str(report["b"]),
                "threshold": str(report["threshold"]),
            },
        }
        _emit(obj, args.out)
        return EXIT_OK if report["certified"] else EXIT_VERIFICATION
    if not args.f or args.C is None:
        raise InputError("lowerbound needs --f and --C (or --search)")
    with open(args.f, "r", encoding="utf-8") as fh:
        f_obj = json.load(fh)
    f_table = {parse_number(k): parse_number(v) for k, v in f_obj.items()}
    cert = lowerbounds.DualCertificate(grid, f_table, parse_number(args.C))
    outcome = lowerbounds.verify_certificate_exhaustive(g, cert)
    if outcome["certified"]:
        obj = {
            "certified": True,
            "lower_bound": str(cert.c_bound),
            "min_margin": str(outcome["min_margin"]),
        }
        _emit(obj, args.out)
        return EXIT_OK
    obj = {
        "certified": False,
        "violation": [str(v) for v in outcome["violation"]],
        "margin": str(outcome["margin"]),
    }
    _emit(obj, args.out)
    return EXIT_VERIFICATION


def _parse_sizes(spec: str) -> list:
    sizes = []
    for tok in spec.split(","):
        tok = tok.strip()
        if ":" in tok:
            lo, hi = tok.split(":")
            sizes.extend(range(int(lo), int(hi) + 1))
        elif tok:
            sizes.append(int(tok))
    return sizes


def _cmd_sweep(args) -> int:
    seed = _require_seed(args)
    sizes = _parse_sizes(args.sizes)
    result = run_sweep(
        args.family, sizes, args.scheme, seed, stable_cap=args.stable_cap
    )
    summary = result_to_json_obj(result)
    if args.out:
        emit_report(result, args.out + ".csv", "csv")
        emit_report(result, args.out + ".json", "json")
        render_figure(result, args.out + ".png")
        summary["artifacts"] = [args.out + ext for ext in (".csv", ".json", ".png")]
    for row in summary["rows"]:
        row.pop("scheme_json", None)  # keep stdout compact; files carry them
    print(json.dumps(summary, sort_keys=True, indent=1))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collabsignal",
        description="Persuasive signaling schemes on collaboration networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance from a named family")
    p.add_argument(
        "family",
        choices=("double-star", "triangle-centers", "clique-leaves", "k-star-clique", "component-mix"),
    )
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--spec", default=None, help="component list as inline JSON")
    p.add_argument("--spec-file", default=None)
    _common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="compute OPT, OPT^IR, OPT^stable, PoS")
    p.add_argument("graph")
    p.add_argument("--stable-cap", type=int, default=STABLE_CAP_DEFAULT)
    p.add_argument("--skip-stable", action="store_true")
    _common(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("construct", help="build a named scheme for a graph")
    p.add_argument("graph")
    p.add_argument("--scheme", required=True, choices=sorted(CONSTRUCTORS))
    _common(p)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="slack report for a scheme on a graph")
    p.add_argument("graph")
    p.add_argument("scheme")
    p.add_argument("--mc", type=int, default=None, help="Monte Carlo sample count")
    p.add_argument("--tol", type=float, default=None)
    _common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("lowerbound", help="check or search a dual certificate")
    p.add_argument("graph")
    p.add_argument("--grid", required=True, help="comma-separated signal values")
    p.add_argument("--f", default=None, help="JSON file mapping signal -> f value")
    p.add_argument("--C", default=None, help="claimed lower bound")
    p.add_argument("--search", action="store_true", help="search a two-piece f instead")
    _common(p)
    p.set_defaults(func=_cmd_lowerbound)

    p = sub.add_parser("sweep", help="family sweep with rate fits and figures")
    p.add_argument("--family", required=True)
    p.add_argument("--sizes", required=True, help="e.g. 4,8,16 or 4:64")
    p.add_argument("--scheme", required=True, choices=sorted(CONSTRUCTORS))
    p.add_argument("--stable-cap", type=int, default=STABLE_CAP_DEFAULT)
    _common(p)
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoImprovementPossible as exc:
        print(json.dumps({"error": "no-improvement-possible", "detail": str(exc)}))
        return EXIT_INPUT
    except InputError as exc:
        print(json.dumps({"error": "input", "detail": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(json.dumps({"error": "capacity", "detail": str(exc)}), file=sys.stderr)
        return EXIT_CAPACITY
    except VerificationError as exc:
        print(json.dumps({"error": "verification", "detail": str(exc)}), file=sys.stderr)
        return EXIT_VERIFICATION
    except CollabSignalError as exc:
        print(json.dumps({"error": "internal", "detail": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:
        print(json.dumps({"error": "input", "detail": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
