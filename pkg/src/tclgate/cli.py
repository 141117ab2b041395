"""Command line entry point: ``run``, ``sweep`` and ``kernel`` subcommands.

Exit codes: 0 success, 2 configuration error, 3 numerical-integrity failure.
"""

import argparse
import io
import sys
from pathlib import Path

import numpy as np

from .algebra import EnergySpectrum
from .bath import kernel as bath_kernel
from .config import ScenarioConfig, dump_config, load_config
from .errors import ConfigError, NumericalIntegrityError, QuadratureError
from .observables import (
    ObservableRecord,
    gate_fidelity,
    gate_purity,
    polarization,
    pure_state_vector,
    state_fidelity,
    state_purity,
    von_neumann_entropy,
)
from .propagator import evolve_series, herm_error, trace_error

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INTEGRITY = 3

SWEEP_PARAMS = ("lambda2_eta", "temperature", "omega_c", "j0")
SUMMARY_COLUMNS = ("value", "s1_at_taus", "gate_fidelity_at_taus",
                   "gate_purity_at_taus", "entropy_at_taus")


def record(t, e, rho, spectrum, psi0=None):
    try:
        entropy = von_neumann_entropy(rho)
    except NumericalIntegrityError as exc:
        raise NumericalIntegrityError(f"t = {t:.12g}: {exc}", t=t) from None
    return ObservableRecord(
        t=t,
        tbar=e.tbar,
        s1=polarization(rho, 1),
        s2=polarization(rho, 2),
        gate_fidelity=gate_fidelity(e, spectrum),
        gate_purity=gate_purity(e),
        state_fidelity=None if psi0 is None else state_fidelity(rho, psi0, spectrum, e.tbar),
        state_purity=state_purity(rho),
        entropy_bits=entropy,
        trace_error=trace_error(rho),
        herm_error=herm_error(rho),
    )


def simulate(cfg, times=None):
    """ObservableRecords for ``cfg`` at ``times`` (default: the config grid)."""
    if times is None:
        times = cfg.times()
    schedule = cfg.schedule()
    spectrum = EnergySpectrum(cfg.j0)
    rho0 = cfg.rho0()
    psi0 = pure_state_vector(rho0)
    series = evolve_series(times, rho0, cfg.bath(), schedule, divisor=cfg.kernel_du_divisor)
    return [record(t, e, rho, spectrum, psi0) for t, e, rho in series]


def _fmt(x):
    if x is None:
        return ""
    return f"{x:.15e}"


def write_csv(path, header, rows):
    """Comma separated, LF line endings, UTF-8; ``path=None`` writes to stdout."""
    buf = io.StringIO(newline="")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    text = buf.getvalue()
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_run(args):
    cfg = load_config(args.config)
    if args.dump_config:
        Path(args.dump_config).write_text(dump_config(cfg), encoding="utf-8")
    recs = simulate(cfg)
    write_csv(args.output or cfg.output_path, ObservableRecord.columns(),
              (r.values() for r in recs))
    return EXIT_OK


def _sweep_paths(base, param, values):
    base = Path(base)
    stem, suffix = base.stem, base.suffix or ".csv"
    runs = [base.with_name(f"{stem}_{param}_{i}{suffix}") for i in range(len(values))]
    return runs, base.with_name(f"{stem}_{param}_summary{suffix}")


def parse_values(text):
    items = [v for v in (s.strip() for s in text.split(",")) if v]
    if not items:
        raise ConfigError("--values must list at least one value", key="values")
    try:
        return [float(v) for v in items]
    except ValueError:
        raise ConfigError(f"cannot parse --values {text!r}", key="values") from None


def sweep(cfg, param, values):
    """(per-value records, summary rows) at t = tau_s for each value."""
    if param not in SWEEP_PARAMS:
        raise ConfigError(f"--param must be one of {SWEEP_PARAMS}", key=param)
    if not values:
        raise ConfigError("sweep needs at least one value", key="values")
    runs, summary = [], []
    for v in values:
        c = cfg.with_value(param, v)
        ScenarioConfig.__post_init__(c)
        recs = simulate(c)
        at = simulate(c, [c.schedule().tau_s])[0]
        runs.append(recs)
        summary.append((v, at.s1, at.gate_fidelity, at.gate_purity, at.entropy_bits))
    return runs, summary


def cmd_sweep(args):
    cfg = load_config(args.config)
    values = parse_values(args.values)
    base = args.output or cfg.output_path
    if base is None:
        raise ConfigError("sweep needs output_path in the config or --output", key="output_path")
    runs, summary = sweep(cfg, args.param, values)
    run_paths, summary_path = _sweep_paths(base, args.param, values)
    for path, recs in zip(run_paths, runs):
        write_csv(path, ObservableRecord.columns(), (r.values() for r in recs))
    write_csv(summary_path, SUMMARY_COLUMNS, summary)
    return EXIT_OK


def cmd_kernel(args):
    cfg = load_config(args.config)
    if not args.t_max > 0:
        raise ConfigError("--t-max must be > 0", key="t-max")
    if args.points < 2:
        raise ConfigError("--points must be >= 2", key="points")
    u = np.linspace(0.0, args.t_max, args.points)
    k = bath_kernel(u, cfg.bath())
    write_csv(args.output or cfg.output_path, ("u", "gamma", "delta"),
              zip(u, k.gamma, k.delta))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="tclgate", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="time series of observables for one scenario")
    r.add_argument("--config", required=True)
    r.add_argument("--output", help="CSV path (default: output_path or stdout)")
    r.add_argument("--dump-config", metavar="PATH", help="write the effective config")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("sweep", help="repeat run over values of one parameter")
    s.add_argument("--config", required=True)
    s.add_argument("--param", required=True, choices=SWEEP_PARAMS)
    s.add_argument("--values", required=True, help="comma separated list")
    s.add_argument("--output", help="base CSV path for the run and summary files")
    s.set_defaults(func=cmd_sweep)

    k = sub.add_parser("kernel", help="dump the bath kernel Gamma, Delta")
    k.add_argument("--config", required=True)
    k.add_argument("--t-max", type=float, required=True, help="largest u in 1/K")
    k.add_argument("--points", type=int, required=True)
    k.add_argument("--output")
    k.set_defaults(func=cmd_kernel)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        key = f" [{exc.key}]" if exc.key else ""
        print(f"config error{key}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalIntegrityError as exc:
        where = f" at t = {exc.t:.12g}" if exc.t is not None else ""
        print(f"numerical integrity failure{where}: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY
    except QuadratureError as exc:
        print(f"numerical integrity failure: {exc}", file=sys.stderr)
        return EXIT_INTEGRITY


if __name__ == "__main__":
    sys.exit(main())
