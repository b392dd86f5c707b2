"""Command-line interface: ``sball gen|complete|verify|profile|render``."""

import argparse
import io as _io
import sys

import numpy as np

from . import io
from .completeness import (CompletionConfig, complete, is_complete, is_constant_diameter,
                           piece_report, VerificationReport)
from .core import normalize
from .body import contains
from .generators import NORTH, random_cap_points, reuleaux_odd_gon
from .render import RenderSpec, render_svg
from .width import is_constant_width, min_width, semicircle_centers, width_profile

CHECKS = ("complete", "width", "diameter", "claim2", "piece")


def _vector(text):
    try:
        v = np.array([float(x) for x in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y,Z, got {text!r}") from None
    if v.shape != (3,):
        raise argparse.ArgumentTypeError(f"expected three components, got {text!r}")
    return normalize(v)


def _checks(text):
    names = [c.strip() for c in text.split(",") if c.strip()]
    bad = [c for c in names if c not in CHECKS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown checks {bad}; choose from {CHECKS}")
    return names


def semicircle_center_report(body, delta, tol):
    """Semicircle centers of a minimal lune must lie in the body."""
    w, lune = min_width(body)
    m = np.array(semicircle_centers(lune))
    return VerificationReport.build("claim2", tol, m, contains(body, m), min_width=w)


def run_checks(body, delta, checks, tol):
    reports = []
    for name in checks:
        if name == "complete":
            reports.append(is_complete(body, delta, tol))
        elif name == "width":
            reports.append(is_constant_width(body, delta, tol))
        elif name == "diameter":
            reports.append(is_constant_diameter(body, delta, tol))
        elif name == "claim2":
            reports.append(semicircle_center_report(body, delta, tol))
        elif name == "piece":
            reports.append(piece_report(body, delta, tol=tol))
    return reports


def cmd_gen_reuleaux(args):
    body = reuleaux_odd_gon(args.k, args.delta, args.pole)
    io.save_body(body, args.output)
    return 0


def cmd_gen_seeds(args):
    pts = random_cap_points(args.n, args.pole, args.cap_radius, args.delta, args.rng_seed)
    io.save_points(pts, args.output, delta=args.delta)
    return 0


def cmd_complete(args):
    seeds, _ = io.load_points(args.seeds)
    body = complete(seeds, CompletionConfig(args.delta, args.resolution))
    io.save_body(body, args.output)
    return 0


def cmd_verify(args):
    body = io.load_body(args.body)
    reports = run_checks(body, args.delta, args.checks, args.tol)
    for r in reports:
        print(r.summary())
    if args.report:
        io.save_reports(reports, args.report)
    return 0 if all(r.passed for r in reports) else 1


def cmd_profile(args):
    body = io.load_body(args.body)
    prof = width_profile(body, n_samples=args.samples)
    buf = _io.StringIO()
    prof.write_csv(buf)
    io.atomic_write(args.output, buf.getvalue())
    return 0


def cmd_render(args):
    body = io.load_body(args.body)
    io.atomic_write(args.output, render_svg(body, RenderSpec(view_pole=args.view_pole)))
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="sball", description="Build, complete, check and draw spherical ball polygons.")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate bodies or seed sets")
    gsub = gen.add_subparsers(dest="what", required=True)
    g = gsub.add_parser("reuleaux", help="spherical Reuleaux odd-gon")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--delta", type=float, required=True)
    g.add_argument("--pole", type=_vector, default=NORTH)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen_reuleaux)

    g = gsub.add_parser("seeds", help="random seed points in a cap")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--delta", type=float, required=True)
    g.add_argument("--cap-radius", type=float, required=True)
    g.add_argument("--rng-seed", type=int, required=True)
    g.add_argument("--pole", type=_vector, default=NORTH)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_gen_seeds)

    c = sub.add_parser("complete", help="complete a seed set to diameter delta")
    c.add_argument("--seeds", required=True)
    c.add_argument("--delta", type=float, required=True)
    c.add_argument("--resolution", type=float, required=True)
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=cmd_complete)

    v = sub.add_parser("verify", help="run verification checks on a body")
    v.add_argument("--body", required=True)
    v.add_argument("--delta", type=float, required=True)
    v.add_argument("--checks", type=_checks, default=list(CHECKS))
    v.add_argument("--tol", type=float, default=0.03)
    v.add_argument("--report")
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("profile", help="export a width profile as CSV")
    pr.add_argument("--body", required=True)
    pr.add_argument("--samples", type=int, required=True)
    pr.add_argument("-o", "--output", required=True)
    pr.set_defaults(func=cmd_profile)

    r = sub.add_parser("render", help="draw a body as SVG")
    r.add_argument("--body", required=True)
    r.add_argument("--view-pole", type=_vector, default=None)
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"sball: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
