"""Family sweeps: benchmark tables, scheme costs, and rate fits.

The sweep builds one instance per size, computes benchmarks (the stable
oracle is skipped above its cap), constructs the requested scheme, verifies
it exactly, and fits log-log exponents of cost and cost/benchmark against n.
Reports are emitted as CSV (the canonical hand-off), JSON (which carries the
scheme objects so rows can be re-verified), and a log-log figure.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .benchmarks import STABLE_CAP_DEFAULT, solve_opt, solve_opt_ir, solve_opt_stable
from .constructions import CONSTRUCTORS
from .errors import InputError, VerificationError
from .graphs import FAMILIES
from .modes import RATIONAL
from .schemes import is_persuasive, slack_report_exact

# which benchmark the cost ratio is taken against, per scheme
_RATIO_BASE = {
    "binary-unit": "opt",
    "match-stable": "opt",
    "improve-unit": "opt",
    "noinfo": "opt_ir",
    "ternary": "opt_ir",
    "ternary-minw": "opt_ir",
    "improve-weighted": "opt_ir",
}

CSV_HEADER = ["family", "k", "n", "opt", "opt_ir", "opt_stable", "scheme", "cost", "persuasive"]


@dataclass
class SweepResult:
    family: str
    scheme: str
    seed: int
    rows: List[dict]
    exponent: Optional[float] = None  # cost vs n
    exponent_stderr: Optional[float] = None
    exponent_ratio: Optional[float] = None  # cost / benchmark vs n
    exponent_ratio_stderr: Optional[float] = None


def fit_loglog(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float]:
    """Ordinary least squares slope of log y on log x, with its stderr."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise InputError("need at least two points for an exponent fit")
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    n = len(lx)
    mx = sum(lx) / n
    my = sum(ly) / n
    sxx = sum((x - mx) ** 2 for x in lx)
    if sxx == 0:
        raise InputError("all sizes identical; exponent undefined")
    sxy = sum((x - mx) * (y - my) for x, y in zip(lx, ly))
    slope = sxy / sxx
    if n == 2:
        return slope, 0.0
    resid = sum((y - my - slope * (x - mx)) ** 2 for x, y in zip(lx, ly))
    stderr = math.sqrt(resid / (n - 2) / sxx)
    return slope, stderr


def run_sweep(
    family: str,
    sizes: Sequence[int],
    scheme_name: str,
    seed: int,
    stable_cap: int = STABLE_CAP_DEFAULT,
) -> SweepResult:
    """Run one (family, scheme) sweep; every row must verify as persuasive."""
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    if scheme_name not in CONSTRUCTORS:
        raise InputError(f"unknown scheme {scheme_name!r}; choose from {sorted(CONSTRUCTORS)}")
    sizes = sorted(set(int(s) for s in sizes))
    if not sizes:
        raise InputError("empty size list")
    rows = []
    for idx, k in enumerate(sizes):
        g = FAMILIES[family](k)
        opt, _ = solve_opt(g, RATIONAL)
        opt_ir, _ = solve_opt_ir(g, RATIONAL)
        if g.n <= stable_cap:
            opt_stable, _ = solve_opt_stable(g, RATIONAL, cap=stable_cap)
        else:
            opt_stable = None  # capacity: row marked absent, sweep continues
        scheme, params = CONSTRUCTORS[scheme_name](g, seed + idx)
        report = slack_report_exact(g, scheme, RATIONAL)
        persuasive = is_persuasive(report, 0)
        if not persuasive:
            raise VerificationError(
                f"sweep aborted: {scheme_name} not persuasive on {family} k={k}"
            )
        rows.append(
            {
                "family": family,
                "k": k,
                "n": g.n,
                "opt": opt,
                "opt_ir": opt_ir,
                "opt_stable": opt_stable,
                "scheme": scheme_name,
                "cost": report.cost,
                "persuasive": persuasive,
                "params": params.to_json_obj(RATIONAL) if params else None,
                "scheme_json": scheme.to_json_obj(RATIONAL),
            }
        )
    result = SweepResult(family, scheme_name, seed, rows)
    if len(rows) >= 2:
        ns = [float(r["n"]) for r in rows]
        costs = [float(r["cost"]) for r in rows]
        result.exponent, result.exponent_stderr = fit_loglog(ns, costs)
        base = _RATIO_BASE[scheme_name]
        ratios = [float(r["cost"]) / float(r[base]) for r in rows]
        if all(v > 0 for v in ratios):
            result.exponent_ratio, result.exponent_ratio_stderr = fit_loglog(ns, ratios)
    return result


# -- emission -------------------------------------------------------------------


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, str)):
        return str(value)
    return repr(float(value))


def result_to_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in result.rows:
        writer.writerow([_csv_cell(r[h]) for h in CSV_HEADER])
    return buf.getvalue()


def result_to_json_obj(result: SweepResult) -> dict:
    def num(x):
        return None if x is None else float(x)

    return {
        "family": result.family,
        "scheme": result.scheme,
        "seed": result.seed,
        "exponent": num(result.exponent),
        "exponent_stderr": num(result.exponent_stderr),
        "exponent_ratio": num(result.exponent_ratio),
        "exponent_ratio_stderr": num(result.exponent_ratio_stderr),
        "rows": [
            {
                "family": r["family"],
                "k": r["k"],
                "n": r["n"],
                "opt": num(r["opt"]),
                "opt_ir": num(r["opt_ir"]),
                "opt_stable": num(r["opt_stable"]),
                "scheme": r["scheme"],
                "cost": num(r["cost"]),
                "persuasive": r["persuasive"],
                "params": r["params"],
                "scheme_json": r["scheme_json"],
            }
            for r in result.rows
        ],
    }


def emit_report(result: SweepResult, path: str, fmt: str = "csv") -> None:
    """Write the sweep report; byte-identical for identical inputs."""
    if fmt == "csv":
        data = result_to_csv(result)
    elif fmt == "json":
        data = json.dumps(result_to_json_obj(result), sort_keys=True, indent=1) + "\n"
    else:
        raise InputError(f"unknown report format {fmt!r}")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
    except OSError as exc:
        raise InputError(f"cannot write report to {path}: {exc}") from exc


def render_figure(result: SweepResult, path: str) -> None:
    """Log-log cost-vs-n scatter with the fitted power law, saved to a file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [float(r["n"]) for r in result.rows]
    costs = [float(r["cost"]) for r in result.rows]
    fig, ax = plt.subplots(figsize=(5.2, 3.8))
    ax.loglog(ns, costs, "o", color="#1f77b4", label=f"{result.scheme} cost")
    if result.exponent is not None and len(ns) >= 2:
        lx = [math.log(x) for x in ns]
        ly = [math.log(y) for y in costs]
        mx = sum(lx) / len(lx)
        my = sum(ly) / len(ly)
        xs = [min(ns), max(ns)]
        ys = [
            math.exp(my + result.exponent * (math.log(x) - mx)) for x in xs
        ]
        ax.loglog(
            xs, ys, "--", color="#d62728",
            label=f"fit: n^{result.exponent:.3f} (se {result.exponent_stderr:.3f})",
        )
    ax.set_xlabel("n (vertices)")
    ax.set_ylabel("scheme cost")
    ax.set_title(f"{result.family}: {result.scheme}")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    try:
        fig.savefig(path, dpi=120)
    except OSError as exc:
        raise InputError(f"cannot write figure to {path}: {exc}") from exc
    finally:
        plt.close(fig)
