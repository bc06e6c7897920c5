"""Command-line front end: spectrum and sweep runs with file artifacts.

Artifacts are machine-oriented: JSON for structured results, CSV for plot
feeds, PNG figures rendered alongside them.  Floats are serialized with
shortest round-trip precision so identical runs produce byte-identical
CSV/JSON files.  Exit codes: 0 success, 2 configuration or input error,
3 numerical failure.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import plots
from .baseflow import BaseFlowProfile, batchelor, from_table, load_profile_csv
from .eigen import DEFAULT_BETA_MIN, DEFAULT_EPSILON, Spectrum, leading_mode
from .errors import NumericalError, ParameterError, SwirlStabError
from .operators import make_problem
from .sweep import (DEFAULT_OMEGA_MAX, DEFAULT_OMEGA_MIN, DEFAULT_OMEGA_STEP,
                    convergence_study, frequency_sweep, solve_problem)

FORMATS = ("json", "csv", "png")


@dataclass
class RunConfig:
    command: str
    method: str = "collocation"
    m: int = -1
    N: int | None = 16
    N_list: tuple | None = None
    omega_min: float = DEFAULT_OMEGA_MIN
    omega_max: float = DEFAULT_OMEGA_MAX
    omega_step: float = DEFAULT_OMEGA_STEP
    r_wall: float | None = None
    profile_kind: str = "batchelor"
    batchelor_q: float = 0.8
    batchelor_a: float = 0.0
    profile_path: str | None = None
    epsilon: float = DEFAULT_EPSILON
    beta_min: float = DEFAULT_BETA_MIN
    quad_order: int | None = None
    out_dir: str = "out"
    formats: tuple = ("json", "csv", "png")


def _fmt(x) -> str:
    """Shortest round-trip decimal form of a float."""
    return repr(float(x))


def _json_dump(obj, path: Path):
    path.write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")


def _write_csv(path: Path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _mode_row(mo):
    if not np.isfinite(mo.k):
        return {"k_re": None, "k_im": None, "residual": None, "status": mo.status}
    return {"k_re": mo.k.real, "k_im": mo.k.imag, "residual": mo.residual, "status": mo.status}


def build_profile(config: RunConfig) -> BaseFlowProfile:
    if config.profile_kind == "batchelor":
        r_wall = 1.0 if config.r_wall is None else config.r_wall
        return batchelor(config.batchelor_q, config.batchelor_a, r_wall)
    table = load_profile_csv(config.profile_path)
    flow = from_table(table)
    if config.r_wall is not None and abs(config.r_wall - flow.r_wall) > 1e-12 * flow.r_wall:
        raise ParameterError(
            f"--r-wall {config.r_wall} conflicts with the profile file wall radius {flow.r_wall}"
        )
    return flow


def _config_echo(config: RunConfig, flow: BaseFlowProfile) -> dict:
    return {
        "command": config.command,
        "method": config.method,
        "m": config.m,
        "N": config.N,
        "N_list": list(config.N_list) if config.N_list else None,
        "omega_min": config.omega_min,
        "omega_max": config.omega_max,
        "omega_step": config.omega_step,
        "r_wall": flow.r_wall,
        "profile": flow.label,
        "epsilon": config.epsilon,
        "beta_min": config.beta_min,
        "quad_order": config.quad_order,
        "formats": list(config.formats),
    }


def spectrum_to_dict(spectrum: Spectrum) -> dict:
    return {
        "problem": spectrum.problem,
        "epsilon": spectrum.epsilon,
        "beta_min": spectrum.beta_min,
        "counts": spectrum.counts,
        "modes": [_mode_row(mo) for mo in spectrum.modes],
    }


def run_spectrum(config: RunConfig) -> int:
    """Solve one eigenproblem and write spectrum.json / spectrum.csv (+ figure)."""
    flow = build_profile(config)
    if config.N is None:
        raise ParameterError("spectrum runs need a single --N")
    problem = make_problem(flow, config.m, config.omega_min, config.N,
                           config.method, config.quad_order)
    spectrum = solve_problem(problem, config.epsilon, config.beta_min)
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    payload = spectrum_to_dict(spectrum)
    payload["config"] = _config_echo(config, flow)
    if "json" in config.formats:
        _json_dump(payload, out / "spectrum.json")
    if "csv" in config.formats:
        rows = []
        for mo in spectrum.modes:
            if np.isfinite(mo.k):
                rows.append((_fmt(mo.k.real), _fmt(mo.k.imag), mo.status))
            else:
                rows.append(("inf", "inf", mo.status))
        _write_csv(out / "spectrum.csv", ("k_re", "k_im", "status"), rows)
    if "png" in config.formats:
        plots.save_spectrum_figure(spectrum, out / "spectrum.png")
    lead = leading_mode(spectrum)
    if lead is None:
        print("no physical mode retained")
    else:
        print(f"leading mode: k = ({_fmt(lead.k.real)}, {_fmt(lead.k.imag)}), "
              f"residual = {lead.residual:.3e}")
    print(f"counts: {spectrum.counts}")
    print(f"artifacts written to {out}")
    return 0


def run_sweep(config: RunConfig) -> int:
    """Sweep the frequency grid; with an N list, add the convergence study."""
    flow = build_profile(config)
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    n_seed = config.N_list[0] if config.N_list else config.N
    if n_seed is None:
        raise ParameterError("sweep runs need --N or --N-list")
    problem = make_problem(flow, config.m, config.omega_min, n_seed,
                           config.method, config.quad_order)
    summary = {"config": _config_echo(config, flow)}

    if config.N_list:
        report = convergence_study(problem, config.N_list, config.omega_min,
                                   config.omega_max, config.omega_step,
                                   config.epsilon, config.beta_min)
        if "csv" in config.formats:
            _write_csv(out / "convergence.csv", ("N", "omega_cr"),
                       [(str(n), _fmt(w)) for n, w in zip(report.N_list, report.omega_cr)])
            _write_csv(out / "residual.csv", ("N", "E_N"),
                       [(str(n), _fmt(e)) for n, e in report.E_N])
        if "png" in config.formats:
            plots.save_convergence_figure(report, out / "convergence.png")
            plots.save_residual_figure(report, out / "residual.png")
        summary["convergence"] = {
            "N_list": list(report.N_list),
            "omega_cr": list(report.omega_cr),
            "modal_omega": report.modal_omega,
            "N_cr_min": report.N_cr_min,
            "N_cr_max": report.N_cr_max,
            "E_N": [[n, e] for n, e in report.E_N],
        }
        sweep_n = report.N_cr_max if report.N_cr_max is not None else config.N_list[-1]
        problem = make_problem(flow, config.m, config.omega_min, sweep_n,
                               config.method, config.quad_order)
        print(f"omega_cr(N): {dict(zip(report.N_list, report.omega_cr))}")
        print(f"modal omega_cr = {report.modal_omega}, plateau = "
              f"[{report.N_cr_min}, {report.N_cr_max}]")

    result = frequency_sweep(problem, config.omega_min, config.omega_max,
                             config.omega_step, config.epsilon, config.beta_min)
    if "csv" in config.formats:
        rows = []
        for w, c, lead in zip(result.omega, result.chi, result.leaders):
            if lead is None:
                rows.append((_fmt(w), "nan", "nan", "nan"))
            else:
                rows.append((_fmt(w), _fmt(c), _fmt(lead.k.real), _fmt(lead.k.imag)))
        _write_csv(out / "sweep.csv", ("omega", "chi", "k_re", "k_im"), rows)
    if "png" in config.formats:
        plots.save_sweep_figure(result, out / "sweep.png")
    summary["sweep"] = {
        "N": result.problem["N"],
        "omega": [float(w) for w in result.omega],
        "chi": [None if not np.isfinite(c) else float(c) for c in result.chi],
        "gr_max": result.gr_max,
        "omega_cr": result.omega_cr,
        "gaps": [float(w) for w in result.gaps()],
    }
    if "json" in config.formats:
        _json_dump(summary, out / "summary.json")
    print(f"gr_max = {_fmt(result.gr_max)} at omega_cr = {_fmt(result.omega_cr)} "
          f"(N = {result.problem['N']})")
    print(f"artifacts written to {out}")
    return 0


def _parse_profile(text: str, config: RunConfig):
    if text.startswith("batchelor"):
        config.profile_kind = "batchelor"
        if ":" in text:
            for item in text.split(":", 1)[1].split(","):
                if not item:
                    continue
                key, _, val = item.partition("=")
                key = key.strip()
                if key == "q":
                    config.batchelor_q = float(val)
                elif key == "a":
                    config.batchelor_a = float(val)
                else:
                    raise ParameterError(f"unknown batchelor parameter {key!r} in --profile")
    elif text.startswith("file:"):
        config.profile_kind = "file"
        config.profile_path = text[len("file:"):]
        if not config.profile_path:
            raise ParameterError("--profile file: needs a path")
    else:
        raise ParameterError(
            f"--profile must be 'batchelor:q=Q,a=A' or 'file:PATH', got {text!r}"
        )


def _parse_omega_range(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise ParameterError(f"--omega-range must be MIN:MAX:STEP, got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise ParameterError(f"--omega-range has a non-numeric part: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swirlstab",
        description="Spatial stability of swirling columnar flows via shifted "
                    "Chebyshev spectral methods.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("spectrum", "solve one eigenproblem and emit the spectrum"),
                            ("sweep", "sweep the frequency grid (optionally over N)")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--method", choices=("projection", "collocation"),
                       default="collocation")
        p.add_argument("--m", type=int, default=-1, help="tangential wavenumber (-1 or 1)")
        p.add_argument("--N", type=int, default=None, help="number of expansion terms")
        p.add_argument("--N-list", default=None,
                       help="comma-separated ascending resolutions for a convergence study")
        p.add_argument("--omega", type=float, default=None, help="single frequency")
        p.add_argument("--omega-range", default=None, help="frequency grid MIN:MAX:STEP")
        p.add_argument("--r-wall", type=float, default=None,
                       help="wall radius (analytic profiles; default 1)")
        p.add_argument("--profile", default="batchelor:q=0.8,a=0.0",
                       help="'batchelor:q=Q,a=A' or 'file:PATH'")
        p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON,
                       help="spurious-mode residual tolerance")
        p.add_argument("--beta-min", type=float, default=DEFAULT_BETA_MIN,
                       help="relative denominator floor below which modes count as infinite")
        p.add_argument("--quad-order", type=int, default=None)
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--format", default="json,csv,png",
                       help="comma list from json,csv,png")
    return parser


def config_from_args(args) -> RunConfig:
    config = RunConfig(command=args.command)
    config.method = args.method
    config.m = args.m
    config.N = args.N
    if args.N_list:
        try:
            config.N_list = tuple(int(t) for t in args.N_list.split(","))
        except ValueError:
            raise ParameterError(f"--N-list has a non-integer entry: {args.N_list!r}") from None
    if args.command == "spectrum" and config.N is None:
        config.N = 16
    if args.command == "sweep" and config.N is None and config.N_list is None:
        config.N = 16
    if args.omega is not None and args.omega_range is not None:
        raise ParameterError("use either --omega or --omega-range, not both")
    if args.omega is not None:
        config.omega_min = config.omega_max = args.omega
        config.omega_step = 1.0
    elif args.omega_range is not None:
        config.omega_min, config.omega_max, config.omega_step = _parse_omega_range(args.omega_range)
    elif args.command == "spectrum":
        raise ParameterError("spectrum runs need --omega")
    config.r_wall = args.r_wall
    _parse_profile(args.profile, config)
    if args.epsilon <= 0:
        raise ParameterError(f"--epsilon must be positive, got {args.epsilon}")
    if args.beta_min <= 0:
        raise ParameterError(f"--beta-min must be positive, got {args.beta_min}")
    config.epsilon = args.epsilon
    config.beta_min = args.beta_min
    config.quad_order = args.quad_order
    config.out_dir = args.out
    formats = tuple(f.strip() for f in args.format.split(",") if f.strip())
    for f in formats:
        if f not in FORMATS:
            raise ParameterError(f"unknown output format {f!r}; choose from {FORMATS}")
    config.formats = formats
    return config


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        if args.command == "spectrum":
            return run_spectrum(config)
        return run_sweep(config)
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except (SwirlStabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
