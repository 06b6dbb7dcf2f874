"""Command line experiment runner.

Subcommands: verify, correspondence, scaling, dynamics, ensemble.  Each
takes --config PATH (JSON; defaults apply when omitted), --seed INT
(overrides the config seed), --out PATH (default stdout) and --format
csv|json.  Exit codes: 0 pass, 1 check failure or internal error,
2 config error.  Identical config and seed give byte-identical output;
a NaN in any output cell is treated as an internal error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .config import ConfigError, ExperimentConfig
from .correspondence import (
    T_variable,
    classical_average_exact,
    classical_average_mc,
    h_scaling_study,
    DensityOperator,
)
from .dynamics import ensemble_evolve, evolve_point, make_flow, vonneumann_lift
from .gaussian import complex_covariance
from .phase import to_complex_operator
from .verify import run_verify

__all__ = ["main"]


class CheckFailure(Exception):
    pass


def _fmt(x: float) -> str:
    """17 significant digits (binary64 round-trip); NaN is never emitted."""
    x = float(x)
    if math.isnan(x):
        raise CheckFailure("NaN in output cell")
    return f"{x:.17g}"


def _csv(header: list[str], rows: list[list]) -> list[str]:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(cell if isinstance(cell, str) else _fmt(cell) for cell in row))
    return lines


def _json_clean(obj):
    """Recursively reject NaN so json output stays strictly valid."""
    if isinstance(obj, float) and math.isnan(obj):
        raise CheckFailure("NaN in output cell")
    if isinstance(obj, dict):
        for v in obj.values():
            _json_clean(v)
    if isinstance(obj, list):
        for v in obj:
            _json_clean(v)
    return obj


def cmd_verify(cfg: ExperimentConfig, fmt: str) -> tuple[list[str], int]:
    rows = [
        r.to_row()
        for r in run_verify(
            cfg.n,
            cfg.h,
            cfg.seed,
            state=cfg.build_state(),
            expect_state_invariant=cfg.expect_state_invariant,
        )
    ]
    code = 0 if all(r["status"] == "pass" for r in rows) else 1
    if fmt == "json":
        return [json.dumps(_json_clean(rows), indent=2)], code
    return _csv(
        ["check", "status", "max_residual"],
        [[r["check"], r["status"], r["max_residual"]] for r in rows],
    ), code


def cmd_correspondence(cfg: ExperimentConfig, fmt: str) -> tuple[list[str], int]:
    rho = cfg.build_state()
    f = cfg.build_variable()
    classical = classical_average_exact(f, rho)
    mc, se = classical_average_mc(f, rho, cfg.samples, cfg.mc_seed())
    D = DensityOperator(complex_covariance(rho) / (2 * cfg.h), check_trace=False)
    obs = T_variable(f, cfg.h)
    quantum = float(np.trace(D.matrix @ obs).real)
    if fmt == "json":
        doc = {
            "classical_exact": classical,
            "mc_estimate": mc,
            "mc_stderr": se,
            "quantum": quantum,
        }
        return [json.dumps(_json_clean(doc), indent=2)], 0
    return _csv(
        ["classical_exact", "mc_estimate", "mc_stderr", "quantum"],
        [[classical, mc, se, quantum]],
    ), 0


def cmd_scaling(cfg: ExperimentConfig, fmt: str) -> tuple[list[str], int]:
    if len(cfg.h_values) < 3:
        raise ConfigError("config.h_values: scaling study needs at least 3 grid points")
    rho = cfg.build_state()
    f = cfg.build_variable()
    Bc = complex_covariance(rho)
    D0 = DensityOperator(Bc / float(np.trace(Bc).real))
    study = h_scaling_study(f, D0, cfg.h_values)
    if fmt == "json":
        doc = {
            "rows": [
                {"h": h, "classical": c, "quantum": q, "abs_error": e}
                for h, c, q, e in study.rows
            ],
            "summary": study.summary_dict(),
        }
        return [json.dumps(_json_clean(doc), indent=2)], 0
    lines = _csv(["h", "classical", "quantum", "abs_error"], [list(r) for r in study.rows])
    lines.append("# summary: " + json.dumps(_json_clean(study.summary_dict())))
    return lines, 0


def _dynamics_rows(cfg: ExperimentConfig, with_ensemble: bool):
    rho0 = cfg.build_state()
    H = cfg.build_generator()
    f = cfg.build_variable()
    point = cfg.build_point()
    obs = T_variable(f, cfg.h)
    n = cfg.n
    rows = []
    for t in cfg.times:
        flow = make_flow(H, t, cfg.h)
        pt = evolve_point(flow, point)
        rho_t = vonneumann_lift(rho0, flow)
        Bc_t = complex_covariance(rho_t)
        obs_avg = float(np.trace(Bc_t @ obs).real) / (2 * cfg.h)
        row = [t, *pt.q.tolist(), *pt.p.tolist(), rho_t.dispersion, obs_avg]
        if with_ensemble:
            emp = ensemble_evolve(
                rho0, to_complex_operator(H), t, cfg.h, cfg.samples, cfg.mc_seed()
            )
            row.append(float(np.trace(emp).real))
            row.append(float(np.max(np.abs(emp - Bc_t))))
        rows.append(row)
    header = (
        ["t"]
        + [f"q_{k}" for k in range(n)]
        + [f"p_{k}" for k in range(n)]
        + ["dispersion", "observable_avg"]
    )
    if with_ensemble:
        header += ["ensemble_dispersion", "ensemble_residual"]
    return header, rows


def cmd_dynamics(cfg: ExperimentConfig, fmt: str, with_ensemble: bool = False) -> tuple[list[str], int]:
    if with_ensemble:
        try:
            to_complex_operator(cfg.build_generator())
        except ValueError as exc:
            raise ConfigError(f"config.generator: ensemble mode needs an s-commuting generator ({exc})") from exc
    header, rows = _dynamics_rows(cfg, with_ensemble)
    if fmt == "json":
        doc = [dict(zip(header, row)) for row in rows]
        return [json.dumps(_json_clean(doc), indent=2)], 0
    return _csv(header, rows), 0


COMMANDS = {
    "verify": cmd_verify,
    "correspondence": cmd_correspondence,
    "scaling": cmd_scaling,
    "dynamics": cmd_dynamics,
    "ensemble": lambda cfg, fmt: cmd_dynamics(cfg, fmt, with_ensemble=True),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phaselab",
        description="Gaussian phase-space statistics and their quantum image.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("verify", "run the seeded property suite and report pass/fail per check"),
        ("correspondence", "classical exact + Monte Carlo vs quantum averages"),
        ("scaling", "classical-quantum error across an h grid with slope fit"),
        ("dynamics", "time series of point, dispersion and observable average"),
        ("ensemble", "dynamics plus empirical-vs-exact ensemble covariance residuals"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", metavar="PATH", help="JSON config file (defaults if omitted)")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--out", metavar="PATH", help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config is not None:
            cfg = ExperimentConfig.from_file(args.config, seed_override=args.seed)
        else:
            cfg = ExperimentConfig.from_dict({}, seed_override=args.seed)
        lines, code = COMMANDS[args.command](cfg, args.format)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (CheckFailure, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
