"""Deterministic command-line front end (entry point ``crx``).

Subcommands: ``mtheta`` (compressed-shift matrices and condition report
from a zeros file), ``extremal`` (full pipeline on a matrix file),
``census`` (seeded random-matrix degree statistics), and ``verify``
(the acceptance suite).  Exit codes: 0 ok, 1 verify failure, 2 bad
input, 3 I/O, 4 spectrum placement, 5 boundary geometry.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import serialize
from .errors import (
    CenterOutside,
    CrouzeixLabError,
    DegenerateRange,
    DegreeTooLarge,
    DuplicatePoint,
    FlatBoundary,
    MapConvergenceError,
    MapDomainMismatch,
    OutOfRange,
    SeparationTooSmall,
    SpectrumTooCloseToBoundary,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_IO = 3
EXIT_SPECTRUM = 4
EXIT_GEOMETRY = 5

_INPUT_ERRORS = (DuplicatePoint, SeparationTooSmall, OutOfRange, DegreeTooLarge)
_SPECTRUM_ERRORS = (MapDomainMismatch, SpectrumTooCloseToBoundary)
_GEOMETRY_ERRORS = (FlatBoundary, CenterOutside, DegenerateRange, MapConvergenceError)


def _load_json(path):
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise _IOFailure(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise OutOfRange(f"malformed JSON in {path}: {exc}") from exc


class _IOFailure(Exception):
    pass


def cmd_mtheta(args):
    from .model_space import ModelSpaceSystem, condition_report

    zeros = serialize.zeros_from_json(_load_json(args.zeros))
    system = ModelSpaceSystem.from_zeros(zeros)
    report = condition_report(zeros)
    out = args.out
    os.makedirs(out, exist_ok=True)
    serialize.write_json_atomic(os.path.join(out, "m_theta.json"), serialize.matrix_to_json(system.m_theta))
    serialize.write_json_atomic(os.path.join(out, "x.json"), serialize.matrix_to_json(system.x_mat))
    serialize.write_json_atomic(os.path.join(out, "xinv.json"), serialize.matrix_to_json(system.x_inv))
    serialize.write_json_atomic(os.path.join(out, "condition_report.json"), report.to_json())
    print(f"wrote m_theta.json, x.json, xinv.json, condition_report.json to {out}")
    return EXIT_OK


def _build_pipeline_map(a, args):
    from .conformal_map import build_map, range_map
    from .numerical_range import range_boundary

    if args.map == "auto":
        return range_map(a, m=args.nodes)
    boundary = range_boundary(a, args.nodes)
    return boundary, build_map(boundary, kind=args.map)


def cmd_extremal(args):
    from .boundary_measures import moment_check, representation_check, rho_density, w_measure_check
    from .extremal_search import SearchConfig, optimize_norm, optimize_radius
    from .numerical_range import spectrum_in_interior

    a = serialize.matrix_from_json(_load_json(args.matrix))
    boundary, the_map = _build_pipeline_map(a, args)
    inside, margin = spectrum_in_interior(a, boundary)
    if not inside:
        raise MapDomainMismatch("spectrum touches the boundary of its numerical range")
    degree = None if args.degree == "auto" else int(args.degree)
    config = SearchConfig(starts=args.starts, seed=args.seed)
    if args.mode == "norm":
        result = optimize_norm(a, the_map, degree, config)
    else:
        result = optimize_radius(a, the_map, degree, config)
    payload = result.to_json()
    payload["matrix"] = serialize.matrix_to_json(a)
    payload["map"] = {
        "kind": the_map.kind,
        "nodes": boundary.m,
        "scale_radius": the_map.scale_radius,
        "analyticity_residual": the_map.analyticity_residual,
        "iterations": the_map.iterations,
    }
    payload["boundary"] = {"nodes": boundary.m, "spectrum_margin": margin}
    if args.boundary_csv:
        serialize.write_csv_atomic(
            args.boundary_csv,
            ("theta", "re", "im", "dre", "dim"),
            serialize.boundary_csv_rows(boundary),
        )
    if args.measures:
        if result.mode == "norm":
            density = rho_density(result.phi_of_a, result.vector, 512, the_map, boundary)
            worst, f_integral = representation_check(
                density, a, boundary, the_map, result.vector,
                extremal=result.product, attained=result.attained,
            )
            payload["measures"] = {
                "total_mass": density.total_mass,
                "min_density": float(np.min(density.rho_values)),
                "moment_deviation": moment_check(density, result.phi_of_a, result.vector, 10),
                "representation_deviation": worst,
                "f_integral": f_integral,
            }
            density_csv = args.density_csv or args.out + ".density.csv"
            serialize.write_csv_atomic(
                density_csv, ("theta", "rho", "weight"), serialize.density_csv_rows(density)
            )
        else:
            report = w_measure_check(result)
            payload["measures"] = {
                "total_mass_re": report.total_mass.real,
                "total_mass_im": report.total_mass.imag,
                "radius": report.radius,
                "f_integral_re": report.f_integral.real,
                "f_integral_im": report.f_integral.imag,
                "min_truncated_density": report.min_truncated_density,
            }
    serialize.write_json_atomic(args.out, payload)
    print(
        f"mode={result.mode} attained={result.attained:.9f} "
        f"effective_degree={result.effective_degree} map={the_map.kind} -> {args.out}"
    )
    return EXIT_OK


def cmd_census(args):
    from .extremal_search import SearchConfig, degree_census

    rows = degree_census(args.dim, args.samples, args.seed, SearchConfig(starts=args.starts, seed=args.seed))
    serialize.write_csv_atomic(args.csv, serialize.CENSUS_HEADER, serialize.census_csv_rows(rows))
    ok = [r for r in rows if not r.failure]
    degrees = [r.effective_degree for r in ok]
    print(
        f"census dim={args.dim} samples={args.samples} seed={args.seed}: "
        f"{len(ok)} rows ok, degree histogram "
        f"{ {d: degrees.count(d) for d in sorted(set(degrees))} } -> {args.csv}"
    )
    return EXIT_OK


def cmd_verify(args):
    from .acceptance import run_suite

    results = run_suite(module=args.suite)
    if not results:
        print(f"no criteria matched suite {args.suite!r}", file=sys.stderr)
        return EXIT_INPUT
    payload = []
    failed = 0
    for result in results:
        print(result.line())
        for warning in result.warnings:
            print(f"      WARNING: {warning}")
        failed += not result.passed
        payload.append(
            {
                "number": result.number,
                "name": result.name,
                "module": result.module,
                "passed": result.passed,
                "elapsed_seconds": result.elapsed,
                "details": {k: _jsonable(v) for k, v in result.details.items()},
                "warnings": result.warnings,
            }
        )
    if args.report:
        serialize.write_json_atomic(args.report, payload)
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="crx",
        description="desk-scale numerics for matrix norms over numerical ranges",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mtheta", help="compressed-shift matrices from a zeros JSON file")
    p.add_argument("--zeros", required=True, help="JSON list of {re, im} zeros")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(fn=cmd_mtheta)

    p = sub.add_parser("extremal", help="extremal Blaschke search for a matrix JSON file")
    p.add_argument("--matrix", required=True)
    p.add_argument("--degree", default="auto", help="auto (n-1) or an explicit degree")
    p.add_argument("--starts", type=int, default=20)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--map", default="auto", help="auto | identity | scale:<r>")
    p.add_argument("--mode", choices=("norm", "radius"), default="norm")
    p.add_argument("--nodes", type=int, default=256)
    p.add_argument("--measures", action="store_true", help="attach measure checks to the result")
    p.add_argument("--density-csv", default=None, help="density table path (default <out>.density.csv)")
    p.add_argument("--boundary-csv", default=None, help="write the boundary samples here")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_extremal)

    p = sub.add_parser("census", help="seeded random-matrix degree census")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--starts", type=int, default=20)
    p.add_argument("--csv", required=True)
    p.set_defaults(fn=cmd_census)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--suite", default=None, help="restrict to one module tag")
    p.add_argument("--report", default=None, help="write a JSON report here")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _IOFailure as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _SPECTRUM_ERRORS as exc:
        print(f"spectrum error: {exc}", file=sys.stderr)
        return EXIT_SPECTRUM
    except _GEOMETRY_ERRORS as exc:
        print(f"geometry error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CrouzeixLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
