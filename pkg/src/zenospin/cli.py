"""Command-line runner: scenarios in, deterministic CSV out.

Exit codes: 0 success, 1 parse/validation failure, 2 numerical failure,
3 I/O failure. Floats are written with shortest round-trip formatting, so
re-running a scenario reproduces the file byte for byte.
"""

import argparse
import sys
import time

import numpy as np

from .dynamics import evolve_expansion, evolve_ode, expand_observable, \
    initial_singlet_state
from .errors import NumericalError, ScenarioError, ZenoSpinError
from .liouville import build_liouvillian
from .magnetics import LARMOR_PER_GAUSS
from .scenario import Scenario, bundled_scenario_text, load_scenario, \
    parse_scenario
from .sensitivity import PAIR_NAMES, deuteration_study, field_scan
from .spectra import branch_scan, classify_modes, eigenmodes
from .validation import run_validation

PAPER_FIGURE_SCENARIOS = {"2": "fig2", "4": "fig4", "5": "fig5", "6": "fig6"}

SUBCOMMAND_TASKS = {
    "spectrum": "spectrum",
    "scan-k": "branch-scan",
    "scan-field": "field-scan",
    "evolve": "evolve",
    "deuteration": "deuteration",
}


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    value = float(value)
    if not np.isfinite(value):
        raise NumericalError(f"non-finite value in output: {value}")
    return repr(value)


def _write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(_fmt(cell) for cell in row) + "\n")


def _run_spectrum(scenario: Scenario, prefix, threads):
    superop = build_liouvillian(scenario.system, scenario.kind)
    modes = eigenmodes(superop)
    omega = scenario.system.omega
    rows = []
    for i in range(modes.n):
        lam = modes.decay_rates[i]
        mix = modes.mixing_frequencies[i]
        rows.append((i, lam, mix, lam / omega, mix / omega))
    path = f"{prefix}_spectrum.csv"
    _write_csv(path, ("mode_index", "lambda", "Omega", "lambda_over_omega",
                      "Omega_over_omega"), rows)
    n_slow = classify_modes(modes, omega).n_slow
    return [path], f"{modes.n} modes, {n_slow} slow at omega={_fmt(omega)}"


def _run_branch_scan(scenario: Scenario, prefix, threads):
    omega = scenario.system.omega
    points = branch_scan(scenario.system, scenario.grid_values(),
                         scenario.kind, kT_ratio=scenario.kT_ratio,
                         threads=threads)
    rows = []
    for point in points:
        ks_norm = point.kS / omega
        for lam, mix in zip(point.decay_rates, point.mixing_frequencies):
            rows.append((ks_norm, lam / omega, mix / omega))
    path = f"{prefix}_branches.csv"
    _write_csv(path, ("kS_over_omega", "lambda_over_omega",
                      "Omega_over_omega"), rows)
    counts = ", ".join(str(p.n_slow) for p in points)
    return [path], (f"{len(points)} grid points x {points[0].decay_rates.size} "
                    f"modes; n_slow per point: {counts}")


def _run_field_scan(scenario: Scenario, prefix, threads):
    omegas = scenario.grid_values()
    result = field_scan(scenario.system, omegas, scenario.kind,
                        keep_rates=True, threads=threads)
    rows = []
    for i, omega in enumerate(result.omegas):
        for lam in result.decay_rates[i]:
            rows.append((omega, lam, result.n_slow[i],
                         result.slow_fraction[i], result.yield_drop_pct[i]))
    path = f"{prefix}_fieldscan.csv"
    _write_csv(path, ("omega", "lambda", "n_slow", "slow_fraction",
                      "yield_drop_pct"), rows)
    return [path], (f"{len(omegas)} field points x {result.n_modes} modes; "
                    f"n_slow {result.n_slow.min()}..{result.n_slow.max()}")


def _run_evolve(scenario: Scenario, prefix, threads):
    superop = build_liouvillian(scenario.system, scenario.kind)
    rho0 = initial_singlet_state(scenario.system.space)
    times = scenario.grid_values()
    traj = evolve_ode(superop, rho0, times)
    expansion = expand_observable(eigenmodes(superop), rho0)
    if not expansion.well_conditioned:
        raise NumericalError(
            "eigenvector matrix too ill-conditioned for the mode expansion "
            f"(cond {expansion.condition_number:.2e}); only the RK4 route is "
            "available")
    signal = evolve_expansion(expansion, times)
    rows = []
    for i, t in enumerate(times):
        rows.append((t, traj.singlet[i], traj.triplet[i], traj.trace[i],
                     signal.singlet[i],
                     abs(traj.singlet[i] - signal.singlet[i])))
    path = f"{prefix}_traj.csv"
    _write_csv(path, ("t_us", "qs", "qt", "trace", "qs_expansion",
                      "abs_residual"), rows)
    worst = float(np.abs(traj.singlet - signal.singlet).max())
    return [path], (f"{len(times)} samples; max |expansion - ode| = "
                    f"{worst:.2e}")


def _run_deuteration(scenario: Scenario, prefix, threads):
    omegas = scenario.grid_values()
    study = deuteration_study(scenario.system, omegas, scenario.kind,
                              coupling_scale=scenario.deuterium_scale,
                              deuterium_spin=scenario.deuterium_spin,
                              threads=threads)
    if scenario.source_gauss is not None:
        gauss = scenario.source_gauss
    else:
        gauss = omegas / LARMOR_PER_GAUSS
    rows = []
    for name in PAIR_NAMES:
        result = study.pairs[name]
        for i, omega in enumerate(result.omegas):
            rows.append((name, gauss[i], omega, result.n_slow[i],
                         result.slow_fraction[i], result.yield_drop_pct[i]))
    path = f"{prefix}_yield.csv"
    _write_csv(path, ("pair", "B_gauss", "omega", "n_slow", "slow_fraction",
                      "yield_drop_pct"), rows)
    drops = {name: study.pairs[name].max_yield_drop_pct for name in PAIR_NAMES}
    summary = ", ".join(f"{name} max drop {drop:.2f}%"
                        for name, drop in drops.items())
    return [path], summary


_TASK_RUNNERS = {
    "spectrum": _run_spectrum,
    "branch-scan": _run_branch_scan,
    "field-scan": _run_field_scan,
    "evolve": _run_evolve,
    "deuteration": _run_deuteration,
}


def run_scenario(scenario: Scenario, out_prefix=None, threads=1):
    """Execute a scenario; returns (paths, summary)."""
    prefix = out_prefix or scenario.out
    return _TASK_RUNNERS[scenario.task](scenario, prefix, threads)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="zenospin",
        description="Spin dynamics of radical-ion-pair recombination under "
                    "continuous measurement: spectra, scans, trajectories.")
    sub = parser.add_subparsers(dest="command", required=True)
    for command in (*SUBCOMMAND_TASKS, "validate"):
        p = sub.add_parser(command)
        if command != "validate":
            p.add_argument("--config", help="scenario file path")
            p.add_argument("--out", help="output file prefix")
            p.add_argument("--threads", type=int, default=1,
                           help="parallel grid points (default 1)")
            p.add_argument("--paper-figure", choices=sorted(
                PAPER_FIGURE_SCENARIOS), help="run a bundled scenario")
    return parser


def _load(args):
    if args.config and args.paper_figure:
        raise ScenarioError("--config and --paper-figure are mutually "
                            "exclusive")
    if args.paper_figure:
        return parse_scenario(
            bundled_scenario_text(PAPER_FIGURE_SCENARIOS[args.paper_figure]))
    if not args.config:
        raise ScenarioError("either --config or --paper-figure is required")
    return load_scenario(args.config)


def _run_validate():
    results = run_validation()
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status}  {result.name}: {result.detail}")
    failed = sum(not r.passed for r in results)
    print(f"validate: {len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "validate":
        return _run_validate()
    started = time.perf_counter()
    try:
        scenario = _load(args)
        expected = SUBCOMMAND_TASKS[args.command]
        if scenario.task != expected:
            raise ScenarioError(
                f"scenario task is {scenario.task!r} but the {args.command} "
                f"subcommand runs {expected!r}")
        paths, summary = run_scenario(scenario, args.out,
                                      max(1, args.threads))
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except ZenoSpinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    elapsed = time.perf_counter() - started
    print(f"{args.command} {scenario.name}: {summary} -> "
          f"{', '.join(paths)} ({elapsed:.1f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
