"""Command-line front end for the endpoint classifier.

Every subcommand writes one report to stdout (or ``--output``); logs go to stderr.
Reports embed the run arguments and the full effective configuration, so a
report fed back through ``--from-report`` reproduces itself byte for byte.

Exit statuses:
    0: success.
    1: the analytic and numerical routes disagree, or an exact check failed.
    2: invalid input, options, configuration or files.

Example:
    $ endpoint-classifier --format json classify --alpha 0 --q "3/4 * x^-2" --weyl
    $ endpoint-classifier sweep --kind multidim --alpha 0
"""

import argparse
import json
import logging
import random
import sys
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Literal

from omegaconf import DictConfig, OmegaConf
from pydantic import BaseModel, Field, ValidationError

from . import __version__
from .algebra import (
    LogPoly,
    algebra_properties,
    derivative_identities,
    positivity_bound,
    random_logpoly,
    rearrangement_identity,
    tower,
    x_power,
)
from .config import (
    criteria_settings,
    get_logging_config,
    get_sweep_config,
    hardy_settings,
    load_config,
    load_config_from_file,
    load_env_file,
    merge_configs,
    multidim_settings,
    to_container,
    validate_config,
    weyl_settings,
)
from .core.schemas import Endpoint, WeylSettings, agree
from .criteria import (
    classify_at_zero,
    classify_euler,
    leading_coefficient,
    q_alpha_N,
    q_alpha_N_eps,
)
from .multidim import channel, channel_table, selfadjointness_report
from .numerics import (
    SLProblem,
    classify_endpoint,
    classify_problem,
    count_zeros,
    euler_problem,
    hardy_check,
    hardy_sweep,
)
from .potentials import load_samples, parse, potential_from_text
from .solutions import (
    PolySolution,
    bessel_coupling,
    bessel_solution_fn,
    euler_residuals,
    solution_table,
    verify_residuals,
    y_N,
    y_N_eps,
)
from .type_utils.protocols import PotentialSource
from .type_utils.validation import as_rational, parse_window
from .utils.exceptions import ClassifierError, ConfigurationError, format_error_for_logging
from .utils.formatting import dumps_report, format_csv, format_table
from .utils.logging import (
    configure_from_config,
    log_metrics_summary,
    log_operation,
    log_performance,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_ERROR = 2

REPORT_PREFIX = "# endpoint-classifier "

# Residual families addressed by their identity labels
IDENTITY_FAMILIES = {"A1": "log-power", "A2": "log-power-eps"}

GLOBAL_DESTS = frozenset(
    {
        "command",
        "format",
        "seed",
        "window",
        "override",
        "log_level",
        "from_report",
        "workers",
        "config_name",
        "config_file",
        "output",
    }
)


class RunConfig(BaseModel):
    """Validated description of one invocation, embedded in every report."""

    command: str = Field(description="Subcommand name.")
    args: dict[str, Any] = Field(default_factory=dict, description="Subcommand arguments.")
    format: Literal["json", "csv", "text"] = Field(default="text", description="Report format.")
    seed: int = Field(default=0, description="Seed of randomized batteries.")
    window: tuple[float, float] | None = Field(default=None, description="Sampling window.")


@dataclass
class CommandResult:
    """Outcome of a subcommand before rendering."""

    payload: Any
    headers: list[str]
    rows: list[list[Any]]
    status: int = EXIT_OK
    summary: list[str] = field(default_factory=list)


# ----------------------------------------------------------------------
# Argument helpers
# ----------------------------------------------------------------------


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def _potential(args: dict[str, Any]) -> PotentialSource:
    if args.get("samples"):
        with log_operation(logger, "load_samples", path=args["samples"]):
            return load_samples(args["samples"])
    with log_operation(logger, "parse_potential", text=args.get("q")):
        return potential_from_text(args.get("q") or "0")


def _rational_grid(lo: float, hi: float, points: int) -> list[Fraction]:
    start, stop = Fraction(str(lo)), Fraction(str(hi))
    if points == 1:
        return [start]
    step = (stop - start) / (points - 1)
    return [start + i * step for i in range(points)]


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------


def _route_rows(analytic: Any, numeric: Any | None) -> list[list[Any]]:
    rows = [["analytic", analytic.kind.value, analytic.N, analytic.eps, analytic.margin]]
    if numeric is not None:
        rows.append(["weyl", numeric.kind.value, None, None, None])
    return rows


def _compare_routes(analytic: Any, numeric: Any | None) -> tuple[bool | None, int, list[str]]:
    summary = [f"{analytic.kind.value} (analytic)"]
    if numeric is None:
        return None, EXIT_OK, summary
    summary.append(f"{numeric.kind.value} (weyl)")
    agreed = agree(analytic.kind, numeric.kind)
    if not agreed:
        logger.warning(
            f"Routes disagree: analytic {analytic.kind.value}, weyl {numeric.kind.value}",
            extra={"analytic": analytic.kind.value, "weyl": numeric.kind.value},
        )
    return agreed, EXIT_OK if agreed else EXIT_DISAGREEMENT, [", ".join(summary)]


def cmd_classify(run: RunConfig, cfg: DictConfig) -> CommandResult:
    """Analytic classification at zero, optionally checked by the Weyl probes."""
    args = run.args
    source = _potential(args)
    verdict = classify_at_zero(
        source,
        args["alpha"],
        window=run.window,
        grid_points=args.get("grid_points"),
        settings=criteria_settings(cfg),
    )
    numeric = None
    if args.get("weyl"):
        problem = SLProblem.from_potential(args["alpha"], source)
        numeric = classify_endpoint(problem, Endpoint.ZERO, weyl_settings(cfg))

    agreed, status, summary = _compare_routes(verdict, numeric)
    payload = {
        "analytic": verdict.to_report(),
        "weyl": None if numeric is None else numeric.to_report(),
        "agree": agreed,
    }
    headers = ["route", "kind", "N", "eps", "margin"]
    return CommandResult(payload, headers, _route_rows(verdict, numeric), status, summary)


def cmd_classify_euler(run: RunConfig, cfg: DictConfig) -> CommandResult:
    """Exact classification of ``c x^(alpha-2)``, optionally checked by the Weyl probes."""
    args = run.args
    verdict = classify_euler(args["alpha"], args["c"])
    numeric = None
    if args.get("weyl"):
        numeric = classify_endpoint(
            euler_problem(args["alpha"], args["c"]), Endpoint.ZERO, weyl_settings(cfg)
        )
    agreed, status, summary = _compare_routes(verdict, numeric)
    payload = {
        "analytic": verdict.to_report(),
        "weyl": None if numeric is None else numeric.to_report(),
        "agree": agreed,
    }
    headers = ["route", "kind", "N", "eps", "margin"]
    return CommandResult(payload, headers, _route_rows(verdict, numeric), status, summary)


def cmd_verify(run: RunConfig, cfg: DictConfig) -> CommandResult:
    """Exact residual and identity checks; exit 1 when any check fails."""
    args = run.args
    family = IDENTITY_FAMILIES.get(args.get("lemma") or "", args["family"])

    if family in ("log-power", "log-power-eps"):
        checks = verify_residuals(family, args["alpha"], args["max_N"], args.get("eps"))
        headers = ["family", "alpha", "N", "eps", "terms", "zero"]
        rows = [[c.family, c.alpha, c.N, c.eps, c.terms, c.zero] for c in checks]
        failed = sum(not c.zero for c in checks)
    elif family == "euler":
        residuals = euler_residuals(args["alpha"], args["beta"])
        headers = ["solution", "terms", "zero"]
        rows = [[i + 1, len(r), r.is_zero()] for i, r in enumerate(residuals)]
        failed = sum(not r.is_zero() for r in residuals)
    elif family == "identities":
        headers = ["depth", "identity", "holds"]
        rows = []
        for n in range(1, args["max_N"] + 1):
            rows.extend([n, name, ok] for name, ok in derivative_identities(n).items())
            rows.append([n, "rearrangement", rearrangement_identity(n)])
        failed = sum(not row[2] for row in rows)
    else:
        rng = random.Random(run.seed)
        tallies: dict[str, int] = {}
        for _ in range(args["count"]):
            a = random_logpoly(rng, max_depth=args["max_depth"])
            b = random_logpoly(rng, max_depth=args["max_depth"])
            outcomes = algebra_properties(a, b)
            outcomes["round_trip"] = parse(a.render()) == a and parse(b.render()) == b
            for name, ok in outcomes.items():
                tallies[name] = tallies.get(name, 0) + (not ok)
        headers = ["property", "checked", "failures"]
        rows = [[name, args["count"], fails] for name, fails in sorted(tallies.items())]
        failed = sum(tallies.values())

    status = EXIT_OK if failed == 0 else EXIT_DISAGREEMENT
    summary = ["all zero" if failed == 0 else f"{failed} check(s) failed"]
    payload = {"family": family, "failed": failed, "checks": [dict(zip(headers, r)) for r in rows]}
    return CommandResult(payload, headers, rows, status, summary)


def cmd_weyl(run: RunConfig, cfg: DictConfig) -> CommandResult:
    """Numerical Weyl-alternative probes at zero or infinity."""
    args = run.args
    source = _potential(args)
    settings = weyl_settings(cfg)
    headers = ["endpoint", "kind", "deepest_x", "judgements"]

    if args["endpoint"] == "infinity":
        problem = SLProblem.from_potential(
            args["alpha"], source, interval=(args["interval_start"], float("inf"))
        )
    else:
        problem = SLProblem.from_potential(args["alpha"], source)

    if args.get("problem"):
        classification = classify_problem(problem, settings)
        reports = [classification.left] + (
            [] if classification.right is None else [classification.right]
        )
        payload: dict[str, Any] = classification.to_report()
        summary = [f"deficiency index {classification.deficiency}"]
    else:
        endpoint = Endpoint.INFINITY if args["endpoint"] == "infinity" else Endpoint.ZERO
        report = classify_endpoint(problem, endpoint, settings)
        reports = [report]
        payload = {"endpoint": report.to_report()}
        summary = [f"{report.kind.value} (weyl)"]

    rows = [
        [r.endpoint.value, r.kind.value, r.deepest_x, [p.judgement.value for p in r.probes]]
        for r in reports
    ]
    if args.get("zeros") is not None:
        window = run.window or tuple(criteria_settings(cfg).window)
        count, verdict = count_zeros(problem, args["zeros"], (0.0, 1.0), window, settings=settings)
        payload["zeros"] = {"lambda": args["zeros"], "count": count, "verdict": verdict.value}
        summary.append(f"{count} zero(s), {verdict.value}")
    return CommandResult(payload, headers, rows, EXIT_OK, summary)


def cmd_hardy(run: RunConfig, cfg: DictConfig) -> CommandResult:
    """Discrete Hardy-inequality checks, optionally over several grid sizes."""
    args = run.args
    settings = hardy_settings(cfg)
    form = args.get("form") or ("power" if args["N"] == 0 else "squared")
    gamma = args.get("gamma")
    if gamma is None and args["N"] > 0:
        gamma = tower(args["N"]) * args["rho"]
    common = {
        "form": form,
        "delta": args["delta"],
        "settings": settings,
    }
    if args.get("grids"):
        results = hardy_sweep(args["alpha"], args["N"], args["rho"], gamma, args["grids"], **common)
    else:
        results = [
            hardy_check(
                args["alpha"],
                args["N"],
                args["rho"],
                gamma=gamma,
                n_grid=args.get("n_grid"),
                **common,
            )
        ]
    headers = ["alpha", "N", "rho", "gamma", "n_grid", "form", "min_quotient", "pass"]
    rows = [
        [r.alpha, r.N, r.rho, r.gamma, r.n_grid, r.form, r.min_quotient, r.passed] for r in results
    ]
    summary = [f"n_grid={r.n_grid}: {'pass' if r.passed else 'fail'}" for r in results]
    return CommandResult([r.to_report() for r in results], headers, rows, EXIT_OK, summary)


def cmd_multidim(run: RunConfig, cfg: DictConfig) -> CommandResult:
    """Radial-channel table, or a self-adjointness report when a potential is given."""
    args = run.args
    settings = multidim_settings(cfg)
    if args.get("ell") is not None:
        settings = settings.model_copy(update={"ell_max": args["ell"]})

    if args.get("q") is None and args.get("samples") is None:
        table = channel_table(args["n"], args["alpha"], settings)
        headers = list(table[0])
        rows = [[row[h] for h in headers] for row in table]
        summary = [f"alpha* (l=0) = {table[0]['alpha_star']}"]
        return CommandResult(table, headers, rows, EXIT_OK, summary)

    report = selfadjointness_report(
        args["n"],
        args["alpha"],
        _potential(args),
        window=run.window,
        settings=settings,
        criteria_settings=criteria_settings(cfg),
    )
    headers = ["ell", "kind", "N", "eps", "margin"]
    rows = [[ell, v.kind.value, v.N, v.eps, v.margin] for ell, v in report.channels.items()]
    summary = [f"certified: {'true' if report.certified else 'false'}"]
    return CommandResult(report.to_report(), headers, rows, EXIT_OK, summary)


def _default_points(family: str, N: int) -> list[float]:  # noqa: N803
    if family in ("log-power", "log-power-eps") and N > 0:
        bound = positivity_bound(N)
        return [bound * f for f in (0.5, 0.1, 0.01)]
    return [0.01, 0.1, 0.5]


def cmd_solution(run: RunConfig, cfg: DictConfig) -> CommandResult:
    """Tabulate a reference solution with its finite-difference residual."""
    args = run.args
    family = args["family"]
    N = args["N"]  # noqa: N806
    xs = args.get("points") or _default_points(family, N)

    if family == "bessel":
        beta, gamma, z = args["beta"], args["gamma"], complex(args["z"])
        coupling = bessel_coupling(beta, gamma)
        b = float(as_rational(beta, "beta"))
        y: Callable[[float], Any] = bessel_solution_fn(beta, gamma, z, args["j"])
        alpha: Any = beta

        def bessel_q(x: float) -> complex:
            return coupling * x ** (b - 2) - z

        q: Callable[[float], Any] = bessel_q
    else:
        alpha = args["alpha"]
        a = as_rational(alpha, "alpha")
        poly: LogPoly
        if family == "log-power-eps":
            poly, potential = y_N_eps(N, args["eps"]), q_alpha_N_eps(a, N, args["eps"])
        else:
            poly = y_N(N)
            potential = q_alpha_N(a, N) if N > 0 else x_power(a - 2, leading_coefficient(a))
        y = PolySolution(poly)
        q = potential.evaluate

    table = solution_table(alpha, q, y, xs, h_rel=args["h_rel"])
    headers = ["x", "y_real", "y_imag", "residual_abs"]
    rows = [[x, complex(v).real, complex(v).imag, abs(r)] for x, v, r in table]
    payload = {"family": family, "rows": [dict(zip(headers, row)) for row in rows]}
    summary = [f"max residual {max(row[3] for row in rows):.3e}"]
    return CommandResult(payload, headers, rows, EXIT_OK, summary)


def _euler_cell(cell: tuple[Fraction, Fraction, bool, WeylSettings]) -> list[Any]:
    alpha, c, with_weyl, settings = cell
    verdict = classify_euler(alpha, c)
    row: list[Any] = [str(alpha), str(c), verdict.kind.value]
    row += [verdict.nonoscillatory, verdict.margin]
    if with_weyl:
        numeric = classify_endpoint(euler_problem(alpha, c), Endpoint.ZERO, settings)
        row.extend([numeric.kind.value, agree(verdict.kind, numeric.kind)])
    return row


def _channel_cell(cell: tuple[int, int, Fraction]) -> list[Any]:
    n, ell, alpha = cell
    row = channel(n, ell, alpha).to_row()
    return [row[h] for h in CHANNEL_COLUMNS]


CHANNEL_COLUMNS = ["n", "ell", "alpha", "coupling", "gamma_alpha", "alpha_star", "class_at_zero"]


@log_performance(logger, threshold_seconds=30.0)
def cmd_sweep(run: RunConfig, cfg: DictConfig) -> CommandResult:
    """Phase diagrams over ``(alpha, c)`` or ``(n, ell)``, computed in parallel.

    Rows come back in parameter order regardless of completion order.
    """
    args = run.args
    sweep = get_sweep_config(cfg)
    workers = sweep["workers"]

    if args["kind"] == "multidim":
        alpha = as_rational(args["alpha"], "alpha")
        n_values = args.get("n_values") or sweep["n_values"]
        ell_values = args.get("ell_values") or sweep["ell_values"]
        cells: list[Any] = [(n, ell, alpha) for n in n_values for ell in ell_values]
        worker: Callable[[Any], list[Any]] = _channel_cell
        headers = list(CHANNEL_COLUMNS)
    else:
        alpha_lo, alpha_hi = args.get("alpha_range") or sweep["alpha_range"]
        c_lo, c_hi = args.get("c_range") or sweep["c_range"]
        points = args.get("points") or sweep["points"]
        if points < 1 or alpha_lo > alpha_hi or c_lo > c_hi:
            raise ConfigurationError(
                "Invalid sweep ranges",
                details={"alpha_range": (alpha_lo, alpha_hi), "c_range": (c_lo, c_hi)},
            )
        settings = weyl_settings(cfg)
        cells = [
            (a, c, bool(args.get("weyl")), settings)
            for a in _rational_grid(alpha_lo, alpha_hi, points)
            for c in _rational_grid(c_lo, c_hi, points)
        ]
        worker = _euler_cell
        headers = ["alpha", "c", "kind", "nonoscillatory", "margin"]
        if args.get("weyl"):
            headers += ["weyl_kind", "agree"]

    logger.info(f"Sweeping {len(cells)} cells with {workers} workers", extra={"cells": len(cells)})
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(worker, cells))

    status = EXIT_OK
    if args.get("weyl") and args["kind"] == "euler" and not all(row[-1] for row in rows):
        status = EXIT_DISAGREEMENT
    payload = [dict(zip(headers, row)) for row in rows]
    return CommandResult(payload, headers, rows, status, [f"{len(rows)} cell(s)"])


COMMANDS: dict[str, Callable[[RunConfig, DictConfig], CommandResult]] = {
    "classify": cmd_classify,
    "classify-euler": cmd_classify_euler,
    "verify": cmd_verify,
    "weyl": cmd_weyl,
    "hardy": cmd_hardy,
    "multidim": cmd_multidim,
    "solution": cmd_solution,
    "sweep": cmd_sweep,
}


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------


def _add_potential_options(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--q", help='Potential text, e.g. "3/4 * x^-2 - x^-2 * ln1(x)^-1"')
    group.add_argument("--samples", help="Two-column x,q CSV file of potential samples")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser; global options precede the subcommand."""
    parser = argparse.ArgumentParser(
        prog="endpoint-classifier",
        description="Limit point / limit circle classification of power-weighted "
        "Sturm-Liouville operators.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=["json", "csv", "text"], default="text")
    parser.add_argument("--seed", type=int, default=0, help="Seed of randomized batteries")
    parser.add_argument("--window", help="Sampling window 'a,b' with 0 < a < b")
    parser.add_argument(
        "--override", action="append", default=[], help="Hydra override, e.g. weyl.rho_max=0.8"
    )
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--from-report", help="Re-run the invocation embedded in a report")
    parser.add_argument("--workers", type=int, help="Worker threads for sweeps")
    parser.add_argument("--config-name", default="default", help="e.g. experiment/quick_test")
    parser.add_argument("--config-file", help="YAML file merged over the composed configuration")
    parser.add_argument("--output", help="Write the report to this file instead of stdout")

    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("classify", help="Classify tau_alpha at x = 0")
    p.add_argument("--alpha", required=True)
    _add_potential_options(p)
    p.add_argument("--weyl", action="store_true", help="Also run the numerical Weyl probes")
    p.add_argument("--grid-points", type=int)

    p = sub.add_parser("classify-euler", help="Exact classification of c x^(alpha-2)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--weyl", action="store_true")

    p = sub.add_parser("verify", help="Exact residual and identity checks")
    p.add_argument(
        "--family",
        choices=["log-power", "log-power-eps", "euler", "identities", "random"],
        default="log-power",
    )
    p.add_argument(
        "--lemma",
        choices=sorted(IDENTITY_FAMILIES),
        help="Residual identity label; A1 is log-power and A2 is log-power-eps",
    )
    p.add_argument("--alpha", default="0")
    p.add_argument("--max-N", dest="max_N", type=int, default=4)
    p.add_argument("--eps")
    p.add_argument("--beta", default="3/4")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-depth", type=int, default=2)

    p = sub.add_parser("weyl", help="Numerical Weyl-alternative probes")
    p.add_argument("--alpha", required=True)
    _add_potential_options(p)
    p.add_argument("--endpoint", choices=["zero", "infinity"], default="zero")
    p.add_argument("--interval-start", type=float, default=1.0)
    p.add_argument("--problem", action="store_true", help="Classify both endpoints")
    p.add_argument("--zeros", type=float, help="Count zeros at this real lambda on the window")

    p = sub.add_parser("hardy", help="Discrete Hardy-inequality checks")
    p.add_argument("--alpha", default="0")
    p.add_argument("--N", type=int, default=0)
    p.add_argument("--rho", type=float, default=1.0)
    p.add_argument("--gamma", type=float, help="Log shift; defaults to e_N * rho")
    p.add_argument(
        "--form",
        choices=["power", "squared", "first-power"],
        help="Defaults to power at N = 0 and squared otherwise",
    )
    p.add_argument("--delta", default="0")
    p.add_argument("--n-grid", type=int)
    p.add_argument("--grids", type=_int_list, help="Comma-separated grid sizes")

    p = sub.add_parser("multidim", help="Radial channels of the n-dimensional operator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", default="0")
    p.add_argument("--ell", type=int, help="Largest angular momentum")
    _add_potential_options(p, required=False)

    p = sub.add_parser("solution", help="Reference solutions with residuals")
    p.add_argument(
        "--family", choices=["log-power", "log-power-eps", "bessel"], default="log-power"
    )
    p.add_argument("--alpha", default="0")
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--eps", default="1/2")
    p.add_argument("--beta", default="0")
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--z", default="1j")
    p.add_argument("--j", type=int, choices=[1, 2], default=1)
    p.add_argument("--points", type=_float_list)
    p.add_argument("--h-rel", type=float, default=1e-4)

    p = sub.add_parser("sweep", help="Phase diagrams written as CSV-ready rows")
    p.add_argument("--kind", choices=["euler", "multidim"], default="euler")
    p.add_argument("--alpha", default="0", help="Weight exponent of the multidim table")
    p.add_argument("--alpha-range", type=_float_list)
    p.add_argument("--c-range", type=_float_list)
    p.add_argument("--points", type=int)
    p.add_argument("--n-values", type=_int_list)
    p.add_argument("--ell-values", type=_int_list)
    p.add_argument("--weyl", action="store_true")

    return parser


# ----------------------------------------------------------------------
# Runs and reports
# ----------------------------------------------------------------------


def read_report(path: str | Path) -> dict[str, Any]:
    """Extract the embedded ``{"run", "config"}`` block of a report."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        if text.startswith(REPORT_PREFIX):
            embedded = json.loads(text.splitlines()[0][len(REPORT_PREFIX) :])
        else:
            embedded = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigurationError(
            "Report holds no embedded configuration", details={"file": str(path)}
        ) from e
    if not isinstance(embedded, dict) or "run" not in embedded or "config" not in embedded:
        raise ConfigurationError(
            "Report holds no embedded configuration", details={"file": str(path)}
        )
    return embedded


def resolve_run(ns: argparse.Namespace) -> tuple[RunConfig, DictConfig]:
    """Turn parsed options (or an embedded report) into a run and its configuration."""
    if ns.from_report:
        embedded = read_report(ns.from_report)
        return RunConfig.model_validate(embedded["run"]), OmegaConf.create(embedded["config"])

    if ns.command is None:
        raise ConfigurationError("A subcommand or --from-report is required")

    overrides = load_env_file() + list(ns.override)
    if ns.log_level:
        overrides.append(f"logging.level={ns.log_level}")
    if ns.workers is not None:
        overrides.append(f"sweep.workers={ns.workers}")
    cfg = load_config(ns.config_name, overrides=overrides)
    if ns.config_file:
        cfg = merge_configs(cfg, load_config_from_file(ns.config_file))

    args = {k: v for k, v in vars(ns).items() if k not in GLOBAL_DESTS}
    run = RunConfig(
        command=ns.command,
        args=args,
        format=ns.format,
        seed=ns.seed,
        window=parse_window(ns.window) if ns.window else None,
    )
    return run, cfg


def render_report(run: RunConfig, cfg: DictConfig, result: CommandResult) -> str:
    """Render a result in the run's format with the configuration embedded."""
    embedded = {"run": run.model_dump(mode="json"), "config": to_container(cfg)}
    if run.format == "json":
        return dumps_report({**embedded, "command": run.command, "result": result.payload}) + "\n"

    header = REPORT_PREFIX + dumps_report(embedded, indent=None) + "\n"
    if run.format == "csv":
        return header + format_csv(result.headers, result.rows)
    body = "\n".join(result.summary + ["", format_table(result.headers, result.rows, False)])
    return header + body + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the ``endpoint-classifier`` console script."""
    parser = build_parser()
    ns = parser.parse_args(argv)

    try:
        run, cfg = resolve_run(ns)
        configure_from_config(get_logging_config(cfg))
        if not validate_config(cfg):
            raise ConfigurationError("Configuration failed validation")
        result = COMMANDS[run.command](run, cfg)
        report = render_report(run, cfg, result)
        log_metrics_summary(logger)
    except (ClassifierError, ValidationError, OSError, ValueError) as e:
        logger.error(format_error_for_logging(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    if ns.output:
        output = Path(ns.output)
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(report, encoding="utf-8")
    else:
        sys.stdout.write(report)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
