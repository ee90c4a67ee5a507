# Copyright 2026 XminPaq developers.
# Distributed under the Apache License, Version 2.0.
import sys, argparse, json
from pathlib import Path

#: Exit codes: success, invalid input, recovery failure.
EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FAILED = 3


def main(argv=sys.argv[1:]):
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT

    import logging

    level = {0: logging.WARNING, 1: logging.INFO}.get(ns.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    from .error import InversionUnstableError, XminError

    try:
        return ns.command(ns)
    except Exception as ex:
        if ns.debug:
            import pdb, traceback

            traceback.print_exc()
            _, _, tb = sys.exc_info()
            pdb.post_mortem(tb)
            return 1
        if isinstance(ex, InversionUnstableError):
            _print_error(ex)
            return EXIT_FAILED
        if isinstance(ex, (XminError, OSError)):
            _print_error(ex)
            return EXIT_INPUT
        raise


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--outdir", default=".", help="Directory for the output files (default: current)"
    )
    common.add_argument("--t-min", type=float, default=-2.0, help="First threshold t of the tail grid")
    common.add_argument("--t-max", type=float, default=6.0, help="Last threshold t of the tail grid")
    common.add_argument(
        "--grid-points", type=int, default=201, help="Number of thresholds in the tail grid"
    )
    common.add_argument(
        "--rho-points",
        type=int,
        default=None,
        help="Number of radii of circular transforms (default: 2048 for forward, 1000 for counterexample, 8 for the constructive route)",
    )
    common.add_argument(
        "--mc-samples",
        type=int,
        default=0,
        help="Also write this many Monte Carlo draws of X_min to samples.csv (forward only)",
    )
    common.add_argument("--seed", type=int, default=0, help="Seed of all randomness")
    common.add_argument(
        "--route",
        choices=["fit", "constructive"],
        default="fit",
        help="Recovery route (default: fit)",
    )
    common.add_argument(
        "--tol",
        type=float,
        default=1e-3,
        help="Largest permutation distance accepted by roundtrip (default: 1e-3)",
    )
    common.add_argument(
        "--gs-order", type=int, default=16, help="Outer Gaver-Stehfest order (default: 16)"
    )
    common.add_argument(
        "--multistart", type=int, default=8, help="Number of starts of the fit route (default: 8)"
    )
    common.add_argument(
        "--verbose", "-v", action="count", default=0, help="Log progress; twice for details"
    )
    common.add_argument(
        "--debug-traces",
        "-d",
        dest="debug",
        action="store_true",
        help="Automatically invoke the post-mortem debugger on exception",
    )

    parser = argparse.ArgumentParser(
        prog="xmin",
        description="Recover a trivariate Gaussian covariance, up to permutation, from the tail of its minimum",
    )
    parser.set_defaults(command=None)
    commands = parser.add_subparsers(title="commands")

    forward = commands.add_parser(
        "forward",
        parents=[common],
        help="Write the tail, section triangle and circular transform of a covariance",
    )
    forward.add_argument("--input", required=True, help='JSON file {"sigma": [[...], ...]}')
    forward.set_defaults(command=cmd_forward)

    recover = commands.add_parser(
        "recover",
        parents=[common],
        help="Recover a covariance from a tail (t,m,stderr) or samples (xmin) CSV file",
    )
    recover.add_argument("--input", required=True, help="CSV file of a tail or of samples")
    recover.set_defaults(command=cmd_recover)

    roundtrip = commands.add_parser(
        "roundtrip",
        parents=[common],
        help=(
            "Recover a covariance from its own tail and report the distance; "
            "exits 0 iff the distance is at most --tol, whatever the route reports"
        ),
    )
    roundtrip.add_argument("--input", required=True, help='JSON file {"sigma": [[...], ...]}')
    roundtrip.set_defaults(command=cmd_roundtrip)

    counterexample = commands.add_parser(
        "counterexample",
        parents=[common],
        help="Write the transforms of two pairs of triangles with equal circular transforms",
    )
    counterexample.set_defaults(command=cmd_counterexample)
    return parser


def _print_error(ex):
    print(json.dumps({"error": type(ex).__name__, "message": str(ex)}), file=sys.stderr)


def _outdir(ns):
    outdir = Path(ns.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir


def recovery_config(ns):
    """The recovery options given on the command line.

    :rtype: RecoveryConfig
    """
    from .recovery import RecoveryConfig

    options = dict(
        route=ns.route,
        seed=ns.seed,
        t_min=ns.t_min,
        t_max=ns.t_max,
        grid_points=ns.grid_points,
        gs_order=ns.gs_order,
        multistart=ns.multistart,
    )
    if ns.rho_points is not None:
        options["rho_points"] = ns.rho_points
    return RecoveryConfig(**options)


def cmd_forward(ns):
    from .core import section_triangle, standard_square_root, validate_admissible
    from .error import AdmissibilityError, DomainError
    from .formats import read_sigma, write_json, write_profile, write_samples, write_tail
    from .radon import ParametricForm, decompose_atoms, radon_profile
    from .tail import analytic_tail, sample_xmin
    from .utilities import DEFAULT_RHO_POINTS

    config = recovery_config(ns)
    if ns.mc_samples < 0:
        raise DomainError("--mc-samples must be nonnegative")
    sigma = read_sigma(ns.input)
    diagnostics = validate_admissible(sigma)
    if not diagnostics.admissible:
        raise AdmissibilityError(f"Inadmissible covariance: {diagnostics.reason}")

    root = standard_square_root(sigma)
    triangle = section_triangle(root)
    atoms = decompose_atoms(triangle)
    rho_points = DEFAULT_RHO_POINTS if ns.rho_points is None else ns.rho_points
    if rho_points < 3:
        raise DomainError("--rho-points must be at least 3")
    tail = analytic_tail(sigma, config.tail_grid())

    outdir = _outdir(ns)
    write_tail(outdir / "tail.csv", tail)
    write_json(outdir / "triangle.json", {**triangle.to_dict(), "kappa": root.kappa})
    write_profile(outdir / "radon.csv", radon_profile(triangle, rho_points=rho_points))
    write_json(
        outdir / "summary.json",
        {
            "sigma": sigma.matrix.tolist(),
            "kappa": root.kappa,
            "case": atoms.case,
            "parametric_form": ParametricForm.from_triangle(triangle).to_dict(),
            "atoms": atoms.to_list(),
            "admissibility": diagnostics.to_dict(),
        },
    )
    if ns.mc_samples > 0:
        write_samples(outdir / "samples.csv", sample_xmin(sigma, ns.mc_samples, ns.seed))
    return EXIT_OK


def cmd_recover(ns):
    from .formats import read_tail_or_samples, write_json
    from .recovery import recover_sigma
    from .tail import MinSampleSet, empirical_tail

    config = recovery_config(ns)
    data = read_tail_or_samples(ns.input)
    if isinstance(data, MinSampleSet):
        tail = empirical_tail(data, config.tail_grid())
    else:
        tail = data
    report = recover_sigma(tail, config)
    write_json(_outdir(ns) / "recovery_report.json", report.to_dict())
    return EXIT_OK if report.success else EXIT_FAILED


def cmd_roundtrip(ns):
    from .formats import read_sigma, write_json
    from .recovery import roundtrip_report

    config = recovery_config(ns)
    sigma = read_sigma(ns.input)
    report = roundtrip_report(sigma, config)
    write_json(_outdir(ns) / "report.json", {**report.to_dict(), "tolerance": ns.tol})
    distance = report.distance_to_truth
    if distance is not None and distance <= ns.tol:
        return EXIT_OK
    return EXIT_FAILED


def cmd_counterexample(ns):
    import numpy
    from .error import DomainError
    from .formats import write_csv, write_json, write_profile
    from .radon import RadonProfile, compare_transforms, counterexample_pairs

    rho_points = 1000 if ns.rho_points is None else ns.rho_points
    if rho_points < 3:
        raise DomainError("--rho-points must be at least 3")
    rho = numpy.linspace(0.0, 4.2, rho_points + 1)[1:]
    outdir = _outdir(ns)
    summary = {}
    for pair in counterexample_pairs():
        suffix = "" if pair.name == "corner" else "_sym"
        comparison = compare_transforms(pair.first, pair.second, rho)
        write_profile(outdir / f"radon_a{suffix}.csv", RadonProfile(rho, comparison.first))
        write_profile(outdir / f"radon_b{suffix}.csv", RadonProfile(rho, comparison.second))
        write_csv(outdir / f"diff{suffix}.csv", ("rho", "diff"), (rho, comparison.difference))
        summary[pair.name] = {
            "first": pair.first.to_dict(),
            "second": pair.second.to_dict(),
            "max_difference": float(numpy.max(numpy.abs(comparison.difference))),
            "congruent": pair.first.congruent(pair.second),
            "orthogonally_equivalent": pair.first.orthogonally_equivalent(pair.second),
        }
    write_json(outdir / "triangles.json", summary)
    return EXIT_OK
