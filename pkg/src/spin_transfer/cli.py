"""Command-line front end emitting the simulator's data products.

Commands: fig2 (qubit-source sweep), fig3 (invariant region + per-angle
maxima), fig4 (initial/ceiling/max curves + staircase), iterate (iterated
transfer), maximize (single-angle search), verify (self-check report).
Output is CSV for curves and JSON for structured results; identical
configuration and seed produce byte-identical files.

Exit codes: 0 success, 2 configuration error, 3 mandatory verification
failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .entanglement import XStateCoeffs, negativity
from .protocol import MODE_PURE_RESET, canonical_mode, iterate_transfer, snapshot_purity
from .qutritmax import (
    FIG3_THETA_GRID,
    SearchBudget,
    emax_is_nondecreasing,
    invariants,
    maximize_E12_half_period,
    negativity_at_half_period,
    sample_physical_region,
)
from .transfer import (
    STATE_A,
    STATE_B,
    QubitPairState,
    QutritPairState,
    evolve_reduced,
)
from .verify import run_checks

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_VERIFY = 3


class ConfigError(Exception):
    pass


_PI_PATTERN = re.compile(
    r"^\s*(?P<sign>-)?\s*(?P<coef>\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$",
    re.IGNORECASE,
)


def parse_angle(text: Any) -> float:
    """Angle in radians; accepts plain floats and 'pi', 'pi/4', '3pi/32'."""
    if isinstance(text, (int, float)):
        return float(text)
    try:
        return float(text)
    except ValueError:
        pass
    match = _PI_PATTERN.match(str(text))
    if not match:
        raise ConfigError(f"cannot parse angle {text!r}")
    value = float(match.group("coef") or 1.0) * np.pi
    if match.group("den"):
        value /= float(match.group("den"))
    return -value if match.group("sign") else value


def parse_source_state(text: Any) -> QutritPairState:
    """Named state A/B/C or an amplitude triple (normalized)."""
    if isinstance(text, QutritPairState):
        return text
    if isinstance(text, (list, tuple)):
        if len(text) != 3:
            raise ConfigError(f"source state needs three amplitudes, got {text!r}")
        return QutritPairState.normalized(*(float(v) for v in text))
    text = str(text).strip()
    if text.upper() in ("A", "B", "C"):
        return QutritPairState.from_label(text)
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"source state must be A, B, C or 'k0,k1,k2', got {text!r}")
    try:
        return QutritPairState.normalized(*(float(p) for p in parts))
    except ValueError as exc:
        raise ConfigError(f"bad source amplitudes {text!r}: {exc}") from exc


def parse_budget(text: Any) -> SearchBudget:
    """Search budget as 'coarse[:refinements[:shrink]]' or a bare integer."""
    if isinstance(text, SearchBudget):
        return text
    parts = str(text).split(":")
    try:
        coarse = int(parts[0])
        refinements = int(parts[1]) if len(parts) > 1 else 3
        shrink = float(parts[2]) if len(parts) > 2 else 5.0
        return SearchBudget(coarse, refinements, shrink)
    except (ValueError, IndexError) as exc:
        raise ConfigError(f"bad budget {text!r}: expected coarse[:refinements[:shrink]]") from exc


def format_value(value: Any) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(format_value(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_json(path: Path, payload: Any) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_table(path: Path, fmt: str, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    if fmt == "csv":
        write_csv(path, header, rows)
    else:
        write_json(path, {"header": list(header), "rows": [list(r) for r in rows]})


def sibling_path(out: Path, suffix_word: str) -> Path:
    return out.with_name(f"{out.stem}_{suffix_word}{out.suffix}")


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved parameters of one CLI invocation."""

    command: str
    out: Path
    fmt: str = "csv"
    seed: int = 0
    theta1: float = 0.0
    theta2: float = np.pi / 4
    sp: QutritPairState = STATE_A
    t_start: float = 0.0
    t_stop: float = 2.0 * np.pi
    t_points: int = 601
    theta_points: int = 65
    samples: int = 2000
    e0: float = 0.2
    steps: int = 4
    mode: str = MODE_PURE_RESET
    budget: SearchBudget = SearchBudget()


def _load_config_file(path: str | None) -> dict:
    if not path:
        return {}
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ConfigError(f"config file {path!r} must hold a JSON object")
    return payload


def _resolve(args: argparse.Namespace, file_cfg: dict, name: str, default: Any, parse=None) -> Any:
    value = getattr(args, name, None)
    if value is None:
        value = file_cfg.get(name)
    if value is None:
        return default
    return parse(value) if parse is not None else value


def build_run_config(args: argparse.Namespace) -> RunConfig:
    file_cfg = _load_config_file(getattr(args, "config", None))
    defaults = RunConfig(command=args.command, out=Path(f"{args.command}.csv"))
    default_out = {
        "fig2": "fig2.csv",
        "fig3": "fig3.csv",
        "fig4": "fig4.csv",
        "iterate": "iterate.csv",
        "maximize": "maximize.json",
        "verify": "verify_report.json",
    }[args.command]
    fmt = _resolve(args, file_cfg, "format", "json" if default_out.endswith(".json") else "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown format {fmt!r}; expected csv or json")
    cfg = RunConfig(
        command=args.command,
        out=Path(_resolve(args, file_cfg, "out", default_out)),
        fmt=fmt,
        seed=int(_resolve(args, file_cfg, "seed", 0)),
        theta1=_resolve(args, file_cfg, "theta1", defaults.theta1, parse_angle),
        theta2=_resolve(args, file_cfg, "theta2", defaults.theta2, parse_angle),
        sp=_resolve(args, file_cfg, "sp", defaults.sp, parse_source_state),
        t_start=_resolve(args, file_cfg, "t_start", defaults.t_start, parse_angle),
        t_stop=_resolve(args, file_cfg, "t_stop", defaults.t_stop, parse_angle),
        t_points=int(_resolve(args, file_cfg, "t_points", defaults.t_points)),
        theta_points=int(_resolve(args, file_cfg, "theta_points", defaults.theta_points)),
        samples=int(_resolve(args, file_cfg, "samples", defaults.samples)),
        e0=float(_resolve(args, file_cfg, "e0", defaults.e0)),
        steps=int(_resolve(args, file_cfg, "steps", defaults.steps)),
        mode=canonical_mode(_resolve(args, file_cfg, "mode", defaults.mode)),
        budget=_resolve(args, file_cfg, "budget", defaults.budget, parse_budget),
    )
    if cfg.t_points < 2:
        raise ConfigError(f"t-points must be at least 2, got {cfg.t_points}")
    if cfg.theta_points < 2:
        raise ConfigError(f"theta-points must be at least 2, got {cfg.theta_points}")
    return cfg


def cmd_fig2(cfg: RunConfig) -> int:
    tp = QubitPairState(cfg.theta1)
    sp = QubitPairState(cfg.theta2)
    rows = []
    for t in np.linspace(cfg.t_start, cfg.t_stop, cfg.t_points):
        rho = evolve_reduced(tp, sp, t)
        coeffs = XStateCoeffs.from_operator(rho)
        rows.append(
            [
                float(t),
                negativity(rho).value,
                coeffs.a,
                coeffs.b,
                coeffs.c,
                coeffs.d,
                coeffs.f.real,
                coeffs.f.imag,
            ]
        )
    write_table(cfg.out, cfg.fmt, ["t", "E12", "A", "B", "C", "D", "ReF", "ImF"], rows)
    print(f"wrote {cfg.out}")
    return EXIT_OK


def cmd_fig3(cfg: RunConfig) -> int:
    if cfg.samples < 100:
        raise ConfigError(f"need at least 100 region samples, got {cfg.samples}")
    region_rows = []
    for state, point in sample_physical_region(cfg.samples, cfg.seed):
        region_rows.append([state.k0, state.k1, state.k2, point.i1, point.i2, point.i1p, point.i2p])
    write_table(
        cfg.out, cfg.fmt, ["k0", "k1", "k2", "I1", "I2", "I1p", "I2p"], region_rows
    )
    maxima_rows = []
    for theta1 in FIG3_THETA_GRID:
        result = maximize_E12_half_period(theta1, cfg.budget)
        k = result.argmax_state
        inv = result.argmax_invariants
        maxima_rows.append(
            [theta1, result.e_max, k.k0, k.k1, k.k2, inv.i1, inv.i2, inv.i1p, inv.i2p]
        )
    maxima_path = sibling_path(cfg.out, "maxima")
    write_table(
        maxima_path,
        cfg.fmt,
        ["theta1", "E_max", "k0", "k1", "k2", "I1", "I2", "I1p", "I2p"],
        maxima_rows,
    )
    print(f"wrote {cfg.out}")
    print(f"wrote {maxima_path}")
    return EXIT_OK


def cmd_fig4(cfg: RunConfig) -> int:
    thetas = np.linspace(0.0, np.pi / 4, cfg.theta_points)
    rows = []
    results = []
    amp_a = STATE_A.amplitudes()
    amp_b = STATE_B.amplitudes()
    for theta1 in thetas:
        result = maximize_E12_half_period(float(theta1), cfg.budget)
        results.append(result)
        rows.append(
            [
                float(theta1),
                QubitPairState(theta1).initial_negativity(),
                float(negativity_at_half_period(theta1, amp_a)),
                float(negativity_at_half_period(theta1, amp_b)),
                result.e_max,
            ]
        )
    write_table(cfg.out, cfg.fmt, ["theta1", "E_initial", "E_A", "E_B", "E_max"], rows)
    print(f"wrote {cfg.out}")
    print(f"E_max monotone non-decreasing along grid: {emax_is_nondecreasing(results)}")
    fold_rows = _iteration_rows(iterate_transfer(cfg.e0, cfg.sp, cfg.steps, cfg.mode))
    fold_path = sibling_path(cfg.out, "foldline")
    write_table(fold_path, cfg.fmt, _ITERATION_HEADER, fold_rows)
    print(f"wrote {fold_path}")
    return EXIT_OK


_ITERATION_HEADER = ["step", "mode", "E_before", "E_after", "tp_theta", "tp_purity"]


def _iteration_rows(records) -> list[list[Any]]:
    rows = []
    for rec in records:
        theta = rec.tp_state_snapshot if isinstance(rec.tp_state_snapshot, float) else ""
        rows.append(
            [
                rec.step,
                rec.mode,
                rec.negativity_before,
                rec.negativity_after,
                theta,
                snapshot_purity(rec),
            ]
        )
    return rows


def cmd_iterate(cfg: RunConfig) -> int:
    if not 0.0 <= cfg.e0 <= 1.0:
        raise ConfigError(f"e0 must lie in [0, 1], got {cfg.e0}")
    if cfg.steps < 1:
        raise ConfigError(f"steps must be at least 1, got {cfg.steps}")
    records = iterate_transfer(cfg.e0, cfg.sp, cfg.steps, cfg.mode)
    write_table(cfg.out, cfg.fmt, _ITERATION_HEADER, _iteration_rows(records))
    print(f"wrote {cfg.out}")
    return EXIT_OK


def cmd_maximize(cfg: RunConfig) -> int:
    result = maximize_E12_half_period(cfg.theta1, cfg.budget)
    k = result.argmax_state
    inv = result.argmax_invariants
    payload = {
        "theta1": result.theta1,
        "e_max": result.e_max,
        "argmax_k": [k.k0, k.k1, k.k2],
        "invariants": {"I1": inv.i1, "I2": inv.i2, "I1p": inv.i1p, "I2p": inv.i2p},
        "evaluations": result.evaluations,
        "refinement_depth": result.refinement_depth,
        "budget": {
            "coarse": cfg.budget.coarse,
            "refinements": cfg.budget.refinements,
            "shrink": cfg.budget.shrink,
        },
    }
    write_json(cfg.out, payload)
    print(f"wrote {cfg.out}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    report = run_checks(cfg.seed)
    write_json(cfg.out, report)
    for check in report["checks"]:
        status = "pass" if check["passed"] else "FAIL"
        if check["passed"] is None:
            status = "info"
        print(
            f"{status:>4}  {check['name']}: max deviation {check['max_deviation']:.3e}"
            f" (tol {check['tolerance']:.1e})"
        )
    print(f"wrote {cfg.out}")
    return EXIT_OK if report["mandatory_passed"] else EXIT_VERIFY


_COMMANDS = {
    "fig2": cmd_fig2,
    "fig3": cmd_fig3,
    "fig4": cmd_fig4,
    "iterate": cmd_iterate,
    "maximize": cmd_maximize,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spin-transfer",
        description="Entanglement transfer between spin pairs: sweeps, maximization, iteration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    command_help = {
        "fig2": "qubit-source negativity sweep over time",
        "fig3": "invariant-region samples and per-angle maxima",
        "fig4": "initial/ceiling/maximum curves plus the staircase file",
        "iterate": "iterated half-period transfer",
        "maximize": "single-angle maximization over qutrit source states",
        "verify": "run the self-check suite and write a JSON report",
    }
    for name, help_text in command_help.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--theta1", help="target Schmidt angle (radians or 'pi/4')")
        p.add_argument("--theta2", help="qubit-source Schmidt angle")
        p.add_argument("--sp", help="qutrit source: A, B, C or 'k0,k1,k2'")
        p.add_argument("--t-start", dest="t_start", help="sweep start time")
        p.add_argument("--t-stop", dest="t_stop", help="sweep stop time")
        p.add_argument("--t-points", dest="t_points", type=int, help="sweep grid size")
        p.add_argument(
            "--theta-points", dest="theta_points", type=int, help="target-angle grid size"
        )
        p.add_argument("--samples", type=int, help="region sample count")
        p.add_argument("--e0", type=float, help="initial target negativity")
        p.add_argument("--steps", type=int, help="iteration count")
        p.add_argument("--mode", choices=["pure-reset", "mixed"], help="iteration bookkeeping")
        p.add_argument("--budget", help="search budget coarse[:refinements[:shrink]]")
        p.add_argument("--seed", type=int, help="seed for sampled checks and region fills")
        p.add_argument("--out", help="output path")
        p.add_argument("--format", dest="format", choices=["csv", "json"], help="table format")
        p.add_argument("--config", help="JSON config file; flags override its entries")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_run_config(args)
        return _COMMANDS[args.command](cfg)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
