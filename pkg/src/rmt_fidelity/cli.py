"""Command-line entry point: compute, compare and export fidelity curves.

Modes
-----
analytic   exact curve (beta=1 quadrature, beta=2 closed form)
lr         linear-response curves, plain and exponentiated
simulate   Monte Carlo curve with standard errors
compare    every applicable method on one shared grid
verify     internal consistency suite (identity, oracle, continuity)
calibrate  spectral sanity report of the sampled ensembles

Exit codes: 0 success, 1 verification/calibration failure, 2 usage error,
3 numerical failure.  Output files are byte-identical for identical
configurations (including the seed), independent of the worker count,
which is taken from the env var RMT_FIDELITY_WORKERS.
"""

import argparse
import csv
import json
import os
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .core import EnsembleSpec, FidelityCurve, PerturbationSpec, TimeGrid
from .goe import fidelity_goe, verify_appendix_a
from .gue import fidelity_gue, fidelity_gue_oracle
from .linear_response import fidelity_lr
from .quadrature import IntegrationError
from .simulate import SimulationConfig, estimate_curve, spectral_calibration

__all__ = ["RunConfig", "run", "main"]

_DATA_MODES = ("analytic", "lr", "simulate", "compare")
_MODES = _DATA_MODES + ("verify", "calibrate")

_DEFAULTS = dict(beta=None, epsilon=None, tau_min=0.0, tau_max=3.0, steps=301,
                 dim=300, outer=100, inner=20, band_fraction=0.2, seed=0,
                 output=None, format="csv")


class UsageError(ValueError):
    """Bad flag/config combination; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    mode: str
    beta: int | None = None
    epsilon: tuple = ()
    tau_min: float = 0.0
    tau_max: float = 3.0
    steps: int = 301
    dim: int = 300
    outer: int = 100
    inner: int = 20
    band_fraction: float = 0.2
    seed: int = 0
    output: str | None = None
    format: str = "csv"

    def __post_init__(self):
        if self.mode not in _MODES:
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.steps < 2:
            raise UsageError("steps must be >= 2")
        if self.mode in _DATA_MODES:
            if not self.epsilon:
                raise UsageError(f"mode {self.mode} needs --epsilon")
            if self.beta not in (1, 2, 4):
                raise UsageError(f"mode {self.mode} needs --beta 1|2|4")
            if self.output is None:
                raise UsageError(f"mode {self.mode} needs --output")
        if self.mode == "calibrate" and self.beta not in (1, 2, 4):
            raise UsageError("mode calibrate needs --beta 1|2|4")
        if self.mode == "analytic" and self.beta == 4:
            raise UsageError("no analytic result exists for beta=4; "
                             "use --mode lr or --mode simulate")

    def grid(self) -> TimeGrid:
        return TimeGrid.linspace(self.tau_min, self.tau_max, self.steps)


def _records(curve: FidelityCurve, method: str, beta: int, epsilon: float):
    for i, tau in enumerate(curve.taus):
        yield {
            "tau": float(tau),
            "f": float(curve.values[i]),
            "stderr": None if curve.stderr is None else float(curve.stderr[i]),
            "imag_diag": (None if curve.imag_diag is None
                          else float(curve.imag_diag[i])),
            "method": method,
            "beta": beta,
            "epsilon": epsilon,
        }


_COLUMNS = ("tau", "f", "stderr", "imag_diag", "method", "beta", "epsilon")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _write_csv(path: str, records) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_COLUMNS)
        for rec in records:
            writer.writerow([_fmt(rec[c]) for c in _COLUMNS])


def _write_json(path: str, records, config: RunConfig) -> None:
    doc = {
        "metadata": {
            "config": asdict(config),
            "package_version": __version__,
            "numpy_version": np.__version__,
        },
        "records": list(records),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_curve_csv(path: str):
    """Parse a CSV written by this tool back into per-method curves."""
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            rows.append({
                "tau": float(rec["tau"]),
                "f": float(rec["f"]),
                "stderr": float(rec["stderr"]) if rec["stderr"] else None,
                "imag_diag": (float(rec["imag_diag"])
                              if rec["imag_diag"] else None),
                "method": rec["method"],
                "beta": int(rec["beta"]),
                "epsilon": float(rec["epsilon"]),
            })
    return rows


def _analytic_curve(beta: int, epsilon: float, grid: TimeGrid) -> FidelityCurve:
    if beta == 2:
        vals = [fidelity_gue(epsilon, t) for t in grid.taus]
    else:
        vals = [fidelity_goe(epsilon, t) for t in grid.taus]
    return FidelityCurve(taus=grid.taus, values=np.asarray(vals))


def _sim_config(config: RunConfig, epsilon: float) -> SimulationConfig:
    return SimulationConfig(
        ensemble=EnsembleSpec(beta=config.beta, dim=config.dim),
        perturbation=PerturbationSpec(epsilon=epsilon),
        taus=config.grid(),
        outer_reals=config.outer,
        inner_reals=config.inner,
        band_fraction=config.band_fraction,
        seed=config.seed,
    )


def _workers() -> int:
    return max(1, int(os.environ.get("RMT_FIDELITY_WORKERS", "1")))


def _mode_records(config: RunConfig):
    grid = config.grid()
    for epsilon in config.epsilon:
        if config.mode in ("analytic", "compare") and config.beta in (1, 2):
            curve = _analytic_curve(config.beta, epsilon, grid)
            yield from _records(curve, "analytic", config.beta, epsilon)
        if config.mode in ("lr", "compare"):
            for flag, name in ((False, "lr-linear"), (True, "lr-exp")):
                vals = np.asarray([fidelity_lr(config.beta, epsilon, t, flag)
                                   for t in grid.taus])
                for i, tau in enumerate(grid.taus):
                    yield {"tau": float(tau), "f": float(vals[i]),
                           "stderr": None, "imag_diag": None, "method": name,
                           "beta": config.beta, "epsilon": epsilon}
        if config.mode in ("simulate", "compare"):
            print(f"simulating beta={config.beta} eps={epsilon} "
                  f"dim={config.dim} {config.outer}x{config.inner} ...",
                  flush=True)
            curve = estimate_curve(_sim_config(config, epsilon), _workers())
            if config.mode == "compare" and config.beta in (1, 2):
                exact = _analytic_curve(config.beta, epsilon, grid)
                dev = np.abs(curve.values - exact.values)
                print(f"  max |sim - analytic| = {dev.max():.4f}, "
                      f"max 3*stderr = {3 * curve.stderr.max():.4f}")
            yield from _records(curve, "simulate", config.beta, epsilon)


def _run_verify(config: RunConfig) -> int:
    failures = 0

    grid = TimeGrid(np.linspace(3.0 / 50.0, 3.0, 50))
    report = verify_appendix_a(grid, tol=1e-6)
    print(report.summary())
    failures += not report.passed

    eps_list = (0.2, 1.0, 2.0, 4.0, 10.0)
    taus = np.linspace(0.01, 3.0, 300)
    worst = max(abs(fidelity_gue(e, t) - fidelity_gue_oracle(e, t))
                for e in eps_list for t in taus)
    ok = worst <= 1e-10
    print(f"closed form vs defining integral over {len(eps_list)}x{len(taus)} "
          f"points: max dev = {worst:.3e} (tol 1e-10) -> "
          f"{'PASS' if ok else 'FAIL'}")
    failures += not ok

    for eps in (0.2, 1.0, 4.0, 10.0):
        jump = abs(fidelity_gue(eps, 1.0 - 1e-9) - fidelity_gue(eps, 1.0 + 1e-9))
        h = 1e-5
        left = (fidelity_gue(eps, 1.0) - fidelity_gue(eps, 1.0 - h)) / h
        right = (fidelity_gue(eps, 1.0 + h) - fidelity_gue(eps, 1.0)) / h
        ok = jump <= 1e-8 and abs(left - right) <= 1e-4 * (1.0 + abs(left))
        print(f"continuity at the Heisenberg time, eps={eps}: value gap "
              f"{jump:.2e}, slope gap {abs(left - right):.2e} -> "
              f"{'PASS' if ok else 'FAIL'}")
        failures += not ok

    if config.output:
        with open(config.output, "w") as fh:
            json.dump({"appendix_identity_max_dev": report.max_abs_deviation,
                       "oracle_max_dev": float(worst),
                       "passed": failures == 0}, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if failures == 0 else 1


def _run_calibrate(config: RunConfig) -> int:
    cfg = SimulationConfig(
        ensemble=EnsembleSpec(beta=config.beta, dim=config.dim),
        perturbation=PerturbationSpec(epsilon=0.0),
        taus=TimeGrid([0.0, 1.0]),
        outer_reals=config.outer,
        inner_reals=1,
        band_fraction=config.band_fraction,
        seed=config.seed,
    )
    report = spectral_calibration(cfg)
    for line in report.lines():
        print(line)
    if config.output:
        with open(config.output, "w") as fh:
            json.dump(asdict(report), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if report.passed else 1


def run(config: RunConfig) -> int:
    """Execute one mode; returns the process exit code."""
    if config.mode == "verify":
        return _run_verify(config)
    if config.mode == "calibrate":
        return _run_calibrate(config)
    records = list(_mode_records(config))
    if config.format == "csv":
        _write_csv(config.output, records)
    else:
        _write_json(config.output, records, config)
    print(f"wrote {len(records)} records to {config.output}")
    return 0


def _parse_epsilons(values) -> tuple:
    out = []
    for chunk in values:
        for part in str(chunk).split(","):
            part = part.strip()
            if part:
                out.append(float(part))
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rmt-fidelity",
        description="Fidelity amplitude of perturbed Gaussian ensembles")
    p.add_argument("--mode", choices=_MODES)
    p.add_argument("--config", help="JSON file with the same field names; "
                                    "flags override it")
    p.add_argument("--beta", type=int, choices=(1, 2, 4))
    p.add_argument("--epsilon", action="append",
                   help="perturbation strength; repeatable or comma-separated")
    p.add_argument("--tau-min", type=float, dest="tau_min")
    p.add_argument("--tau-max", type=float, dest="tau_max")
    p.add_argument("--steps", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--outer", type=int)
    p.add_argument("--inner", type=int)
    p.add_argument("--band-fraction", type=float, dest="band_fraction")
    p.add_argument("--seed", type=int)
    p.add_argument("--output")
    p.add_argument("--format", choices=("csv", "json"))
    return p


def _merge_config(args: argparse.Namespace) -> RunConfig:
    merged = dict(_DEFAULTS)
    merged["mode"] = None
    if args.config:
        with open(args.config) as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(merged)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        merged.update(loaded)
    for key in merged:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if merged["mode"] is None:
        raise UsageError("--mode is required (flag or config file)")
    eps = merged["epsilon"]
    if eps is not None:
        merged["epsilon"] = _parse_epsilons(eps if isinstance(eps, (list, tuple))
                                            else [eps])
    else:
        merged["epsilon"] = ()
    return RunConfig(**merged)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _merge_config(args)
    except (UsageError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (np.linalg.LinAlgError, IntegrationError, FloatingPointError,
            ValueError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
