"""Command-line driver: configuration in, machine-readable verdicts out.

Commands
    verify-algebra      bracket-level checks (Jacobi, metric, decomposition)
    verify-deformation  every linear and quadratic coefficient relation
    verify-theory       the full differential identity suite
    observables         stress-energy, causality sampling, charge quadratures

Exit codes: 0 all checks passed, 1 a check failed, 2 configuration or
schema error, 3 singular strength operator (field amplitude too large).

Reports are deterministic byte-for-byte for a fixed (config, seed): wall
times are printed to stderr and only embedded in the JSON when --timings
is given.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__, lie_core
from .config import ConfigError, RunConfig, load_config
from .deformations import (check_all_relations, check_e_mass_obstruction,
                           check_linear_relations, check_quadratic_relations,
                           parity_grade)
from .dynamics import run_identity_suite
from .forms import CONVENTION
from .observables import (charge_line, charge_surface, coulomb_sampler,
                          energy_causality_check, radial_magnetic_sampler,
                          random_strength_values, stress_energy,
                          uniform_scalar_sampler, zero_sampler)
from .strengths import SingularYError

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_SINGULAR = 3


def _report_skeleton(config: RunConfig, command: str) -> dict:
    return {
        "tool": "ymft",
        "version": __version__,
        "command": command,
        "conventions": CONVENTION.as_report_header(),
        "config": config.raw,
        "checks": {},
        "passed": None,
    }


def _emit(report: dict, args, timings: dict | None) -> None:
    if timings:
        for name, seconds in sorted(timings.items()):
            print(f"# {name}: {seconds:.3f}s", file=sys.stderr)
        if args.timings:
            report["timings"] = {k: round(v, 6)
                                 for k, v in sorted(timings.items())}
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.json:
        with open(args.json, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def cmd_verify_algebra(config: RunConfig, args) -> int:
    report = _report_skeleton(config, "verify-algebra")
    sc = config.structure_constants()
    tol = config.tolerances["constraints"]
    start = time.perf_counter()
    killing = lie_core.killing_metric(sc)
    checks = {
        "antisymmetry": sc.antisymmetry_residual(),
        "jacobi": lie_core.jacobi_residual(sc),
        "killing-symmetry": float(np.abs(killing - killing.T).max()),
    }
    report["checks"] = {name: {"residual": val, "passed": val <= tol}
                        for name, val in checks.items()}
    report["killing_metric"] = killing.ravel().tolist()
    report["killing_signature"] = list(
        lie_core.structure_signature(killing))
    report["passed"] = all(c["passed"] for c in report["checks"].values())
    _emit(report, args, {"verify-algebra": time.perf_counter() - start})
    return EXIT_PASS if report["passed"] else EXIT_FAIL


def cmd_verify_deformation(config: RunConfig, args) -> int:
    report = _report_skeleton(config, "verify-deformation")
    ds = config.deformation()
    tol = args.tol if args.tol else config.tolerances["constraints"]
    start = time.perf_counter()
    linear = check_linear_relations(ds, tol)
    quadratic = check_quadratic_relations(ds, tol)
    obstruction = check_e_mass_obstruction(ds, tol)
    report["checks"]["linear-relations"] = linear.as_dict()
    report["checks"]["quadratic-relations"] = quadratic.as_dict()
    report["checks"]["e-mass-obstruction"] = {"passed": obstruction}
    report["parity"] = parity_grade(ds)
    report["passed"] = bool(linear.passed and quadratic.passed
                            and obstruction)
    _emit(report, args, {"verify-deformation": time.perf_counter() - start})
    return EXIT_PASS if report["passed"] else EXIT_FAIL


def cmd_verify_theory(config: RunConfig, args) -> int:
    report = _report_skeleton(config, "verify-theory")
    ds = config.deformation()
    if not args.force:
        gate = check_all_relations(ds, config.tolerances["constraints"])
        if not gate.passed:
            report["checks"]["constraint-gate"] = gate.as_dict()
            report["passed"] = False
            _emit(report, args, None)
            return EXIT_FAIL
    variant = config.variant()
    seeds = [args.seed] if args.seed is not None else config.jet["seeds"]
    degree = args.degree if args.degree else config.jet["degree"]
    tols = dict(config.tolerances)
    if args.tol:
        tols["composite"] = args.tol
    out = run_identity_suite(variant, seeds, degree,
                             config.jet["amplitude"], config.checks, tols)
    for name, rep in out["reports"].items():
        report["checks"][name] = rep.as_dict()
    report["passed"] = all(rep.passed for rep in out["reports"].values())
    _emit(report, args, out["timings"])
    return EXIT_PASS if report["passed"] else EXIT_FAIL


_SAMPLER_BUILDERS = {
    "coulomb": lambda p, c: coulomb_sampler(p, c),
    "radial-magnetic": lambda p, c: radial_magnetic_sampler(p),
    "uniform-scalar": lambda p, c: uniform_scalar_sampler(p),
    "zero": lambda p, c: zero_sampler(),
}


def cmd_observables(config: RunConfig, args) -> int:
    report = _report_skeleton(config, "observables")
    section = config.observables_section()
    seeds = [args.seed] if args.seed is not None else config.jet["seeds"]
    start = time.perf_counter()
    passed = True

    if "charge" in section["checks"]:
        parameter = float(section["parameter"])
        sampler = _SAMPLER_BUILDERS[section["sampler"]](
            parameter, tuple(section.get("center", (0.0, 0.0, 0.0))))
        if section["sampler"] == "uniform-scalar":
            result = charge_line(sampler, float(section["radius"]),
                                 int(section["points"]))
        else:
            kind = ("magnetic" if section["sampler"] == "radial-magnetic"
                    else "electric")
            result = charge_surface(sampler, kind, float(section["radius"]),
                                    tuple(section["grid"]))
        expected = 0.0 if section["sampler"] == "zero" else parameter
        err = float(np.abs(result.values - expected).max())
        ok = err <= 1e-6
        passed = passed and ok
        report["checks"]["charge"] = {
            "sampler": section["sampler"],
            "values": result.values.tolist(),
            "expected": expected,
            "error": err,
            "estimated_quadrature_error": result.estimated_error,
            "grid": list(result.grid),
            "passed": ok,
        }

    if "causality" in section["checks"]:
        rng = np.random.default_rng(seeds[0] if seeds else 0)
        samples = [random_strength_values(rng, 3, 3)
                   for _ in range(int(section["causality_samples"]))]
        try:
            causal = energy_causality_check(samples, np.eye(3), np.eye(3),
                                            True, seed=seeds[0] if seeds
                                            else 0)
        except ValueError as exc:
            report["checks"]["causality"] = {"error": str(exc),
                                             "passed": False}
            passed = False
        else:
            causal["passed"] = bool(causal["energy_nonnegative"]
                                    and causal["flux_causal"])
            passed = passed and causal["passed"]
            report["checks"]["causality"] = causal

    if "trace" in section["checks"]:
        from .forms import JetRing, LieForm
        ring = JetRing(config.jet["degree"])
        rng = np.random.default_rng(seeds[0] if seeds else 0)
        comps = rng.uniform(-1.0, 1.0, (3, 6, ring.width))
        star_p = LieForm(ring, 2, comps)
        star_q = LieForm.zero(ring, 1, 3)
        tensor = stress_energy((star_p, star_q), np.eye(3), np.eye(3))
        trace = float(np.abs(tensor.trace().coeffs).max())
        sym = tensor.symmetry_residual()
        ok = trace <= 1e-12 and sym == 0.0
        passed = passed and ok
        report["checks"]["trace"] = {"p_sector_trace": trace,
                                     "symmetry_residual": sym,
                                     "passed": ok}

    report["passed"] = bool(passed)
    _emit(report, args, {"observables": time.perf_counter() - start})
    return EXIT_PASS if passed else EXIT_FAIL


COMMANDS = {
    "verify-algebra": cmd_verify_algebra,
    "verify-deformation": cmd_verify_deformation,
    "verify-theory": cmd_verify_theory,
    "observables": cmd_observables,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ymft",
        description="verify coupled vector/tensor gauge-theory identities "
                    "on truncated-Taylor field configurations")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True,
                         help="path to the JSON run configuration")
        cmd.add_argument("--json", default=None,
                         help="write the report to this path instead of "
                              "stdout")
        cmd.add_argument("--seed", type=int, default=None,
                         help="override the config seed list with one seed")
        cmd.add_argument("--degree", type=int, default=None,
                         help="override the jet truncation degree")
        cmd.add_argument("--tol", type=float, default=None,
                         help="override the check tolerance")
        cmd.add_argument("--force", action="store_true",
                         help="run the theory suite even if the "
                              "deformation constraints fail")
        cmd.add_argument("--timings", action="store_true",
                         help="embed wall times in the JSON report "
                              "(breaks byte-for-byte determinism)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        return COMMANDS[args.command](config, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SingularYError as exc:
        print(f"singular strength operator: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
