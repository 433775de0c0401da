"""Command line interface.

Subcommands: basis, classify, sample, verify, volume, boundary.  Exit
codes: 0 success, 1 verification failure, 2 usage error, 3 numeric
failure.  For a fixed set of flags (including --streams) the primary
output on stdout is byte-identical across runs; timing and other
diagnostics go to stderr.  JSON serializes numbers with 17 significant
digits and complex values as [re, im] pairs; text output uses 6.
"""

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .basis import build_basis, cr_relation_residual, cr_to_real, real_to_cr
from .errors import NumericFailure
from .membership import (
    EXTERIOR,
    classify,
    classify_batch,
    sample_root_vectors,
    real_coords_from_roots_batch,
)
from .render import save_curve_figure, svg_curve
from .symmetry import (
    binomial_kernel_selfconv,
    conjugation_action,
    dihedral_group,
    parseval_distance,
    rotation_action,
    vertex_distance_squared,
    vertex_span_determinant,
    vertices,
    verify_isometry,
)
from .tolerances import default_tolerances
from .volume import (
    boundary_curve,
    boundary_projection,
    circumscribed_radius,
    volume_closed_form,
    volume_mc_hit,
    volume_mc_jacobian,
)


# ---------------------------------------------------------------------------
# deterministic serialization


def _json_dumps(obj):
    """JSON text with floats at 17 significant digits, deterministic key order."""
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            raise ValueError(f"non-finite value in JSON output: {obj}")
        return format(obj, ".17g")
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    if isinstance(obj, complex):
        return _json_dumps([obj.real, obj.imag])
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_dumps(x) for x in obj) + "]"
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_json_dumps(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, np.floating):
        return _json_dumps(float(obj))
    if isinstance(obj, np.ndarray):
        return _json_dumps(obj.tolist())
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _f6(x):
    return format(float(x), ".6g")


def _f17(x):
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_basis(args, out):
    omega = complex(np.exp(1j * args.omega_arg)) if args.omega_arg else 1.0 + 0j
    b = build_basis(args.n, omega)
    abs_det = float(abs(np.linalg.det(b.entries)))
    if args.json:
        doc = {
            "n": args.n,
            "omega": complex(omega),
            "abs_det": abs_det,
            "entries": [[complex(v) for v in row] for row in b.entries],
        }
        out.write(_json_dumps(doc) + "\n")
    else:
        out.write(f"basis matrix, degree {args.n}, omega = {_f6(omega.real)}"
                  f"{omega.imag:+.6g}i\n")
        for row in b.entries:
            cells = [f"{v.real:+.6f}{v.imag:+.6f}i" for v in row]
            out.write("  " + "  ".join(cells) + "\n")
        out.write(f"|det| = {_f6(abs_det)}\n")
        if args.n % 2 == 0 and omega != 1:
            out.write(
                "note: the even-degree middle row uses the principal square "
                "root of omega (argument in (-pi, pi])\n"
            )
    return 0


def _cmd_classify(args, out):
    coords = np.array([float(x) for x in args.coords.split(",")], dtype=float)
    if coords.size != args.n - 1:
        raise ValueError(
            f"--coords needs {args.n - 1} values for degree {args.n}, "
            f"got {coords.size}"
        )
    tol = default_tolerances()
    if args.tol is not None:
        tol = tol.with_angular_gap(args.tol)
    verdict = classify(coords, tol)
    partition = list(verdict.partition.canonical_form) if verdict.partition else None
    if args.json:
        doc = {
            "n": args.n,
            "status": verdict.status,
            "unit_residual": verdict.unit_residual,
            "disc_magnitude": verdict.disc_magnitude,
            "partition": partition,
        }
        out.write(_json_dumps(doc) + "\n")
    else:
        out.write(f"status: {verdict.status}\n")
        out.write(f"unit residual: {_f6(verdict.unit_residual)}\n")
        out.write(f"|disc|: {_f6(verdict.disc_magnitude)}\n")
        if partition is not None:
            out.write("partition: (" + ",".join(map(str, partition)) + ")\n")
    return 0


def _cmd_sample(args, out):
    rng = np.random.default_rng(args.seed)
    thetas, roots = sample_root_vectors(args.n, args.count, rng)
    coords = real_coords_from_roots_batch(roots)
    if args.format == "json":
        doc = {
            "n": args.n,
            "seed": args.seed,
            "count": args.count,
            "samples": [
                {"theta": list(map(float, t)), "coords": list(map(float, a))}
                for t, a in zip(thetas, coords)
            ],
        }
        out.write(_json_dumps(doc) + "\n")
    else:
        head = [f"theta_{i}" for i in range(1, args.n + 1)]
        head += [f"a_{i}" for i in range(1, args.n)]
        out.write(",".join(head) + "\n")
        for t, a in zip(thetas, coords):
            out.write(",".join(_f17(v) for v in list(t) + list(a)) + "\n")
    return 0


def _cmd_volume(args, out):
    t0 = time.perf_counter()
    if args.method == "closed-form":
        est = volume_closed_form(args.n)
    elif args.method == "mc-jacobian":
        est = volume_mc_jacobian(args.n, args.samples, args.seed, args.streams)
    else:
        est = volume_mc_hit(args.n, args.samples, args.seed, args.streams)
    seconds = time.perf_counter() - t0
    doc = {
        "n": est.degree,
        "method": est.method,
        "value": est.value,
        "std_error": est.std_error,
        "samples": est.samples,
        "seed": est.seed,
        "streams": est.streams,
    }
    if args.json:
        out.write(_json_dumps(doc) + "\n")
    else:
        for k, v in doc.items():
            out.write(f"{k}: {_f6(v) if isinstance(v, float) else v}\n")
    print(f"seconds: {seconds:.3f}", file=sys.stderr)
    return 0


def _cmd_boundary(args, out):
    curve = boundary_curve(args.n, args.points)
    phi = np.linspace(0.0, 2.0 * np.pi, args.points, endpoint=False)
    if args.format == "svg":
        text = svg_curve(boundary_projection(curve), circumscribed_radius(args.n))
    else:
        head = ["phi"] + [f"a_{i}" for i in range(1, args.n)]
        lines = [",".join(head)]
        for p, row in zip(phi, curve):
            lines.append(",".join(_f17(v) for v in [p] + list(row)))
        text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    if args.fig:
        save_curve_figure(
            boundary_projection(curve),
            args.fig,
            circumscribed_radius(args.n),
            label=f"boundary family, degree {args.n}",
        )
        print(f"figure written to {args.fig}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# verification suite


def _verification_rows(n, seed):
    """(name, observed, tolerance, passed) rows for the invariant suite."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    rows = []

    def check(name, observed, tolerance):
        rows.append((name, float(observed), tolerance, bool(observed <= tolerance)))

    def check_flag(name, flag):
        rows.append((name, 0.0 if flag else 1.0, 0.5, bool(flag)))

    # coefficient basis
    dets, units, rel, rt, norm = [], [], [], [], []
    for omega in (1.0, 1j, np.exp(2.7j)):
        b = build_basis(n, omega)
        dets.append(abs(abs(np.linalg.det(b.entries)) - 1.0))
        units.append(
            np.abs(b.entries.conj().T @ b.entries - np.eye(n - 1)).max()
        )
        for _ in range(30):
            a = rng.normal(size=n - 1)
            c = real_to_cr(a, b)
            rel.append(cr_relation_residual(c, omega))
            rt.append(np.abs(cr_to_real(c, b) - a).max())
            norm.append(abs(np.linalg.norm(c) - np.linalg.norm(a)))
    check("basis |det| = 1", max(dets), 1e-10)
    check("basis unitarity", max(units), 1e-12)
    check("cr relation", max(rel), 1e-12)
    check("real<->complex roundtrip", max(rt), 1e-12)
    check("norm preservation", max(norm), 1e-10)

    # vertices
    vs = vertices(n)
    target = math.comb(2 * n, n) - 2
    check("vertex norms", np.abs((vs**2).sum(axis=1) - target).max(), 1e-8)
    check("vertex sum zero", np.abs(vs.sum(axis=0)).max(), 1e-9)

    # dihedral actions
    rot = rotation_action(n)
    conj = conjugation_action(n)
    eye = np.eye(n - 1)
    check("rotation order N", np.abs(np.linalg.matrix_power(rot, n) - eye).max(), 1e-10)
    check("conjugation involution", np.abs(conj @ conj - eye).max(), 1e-10)
    check("dihedral relation", np.abs(conj @ rot @ conj - rot.T).max(), 1e-10)
    group = dihedral_group(n)
    check_flag(f"dihedral closure = {2 * n}", len(group) == 2 * n)

    from .membership import sample_points

    pairs = sample_points(n, 200, rng).reshape(100, 2, n - 1)
    rep_r = verify_isometry(rot, pairs)
    rep_c = verify_isometry(conj, pairs)
    check("isometry distortion", max(rep_r.max_distortion, rep_c.max_distortion), 1e-10)
    check_flag("isometry images inside", rep_r.images_inside and rep_c.images_inside)

    span = vertex_span_determinant(n)
    check("vertex span det", abs(span.direct - span.formula) / span.formula, 1e-6)

    dists = [vertex_distance_squared(n, k) for k in range(1, n)]
    rel_route = max(abs(d.direct - d.convolution) / d.direct for d in dists)
    check("vertex distance routes", rel_route, 1e-6)

    sep = 2.0 * math.comb(2 * n, n)
    even = [dists[k - 1].direct for k in range(2, n // 2 + 1, 2)]
    odd = [dists[k - 1].direct for k in range(1, n // 2 + 1, 2)]
    chains_ok = all(x < y for x, y in zip(even, even[1:])) and all(
        x > y for x, y in zip(odd, odd[1:])
    )
    chains_ok &= all(x < sep for x in even) and all(x > sep for x in odd)
    check_flag("distance chains ordered", chains_ok)

    ts = np.linspace(0.3, 2.8, 5)
    conv_sym = max(
        abs(binomial_kernel_selfconv(n, t) - binomial_kernel_selfconv(n, -t))
        for t in ts
    )
    check("convolution symmetry", conv_sym, 1e-9)
    grid = np.linspace(0.0, np.pi, 27)[1:-1]
    vals = [binomial_kernel_selfconv(n, t) for t in grid]
    check_flag("convolution decreasing", all(a > b for a, b in zip(vals, vals[1:])))

    pres = []
    for _ in range(20):
        a1 = sample_points(n, 1, rng)[0]
        a2 = sample_points(n, 1, rng)[0]
        pd = parseval_distance(a1, a2, 4 * n + 1)
        pres.append(abs(pd - float(((a1 - a2) ** 2).sum())))
    check("parseval identity", max(pres), 1e-9)

    return rows


def _cmd_verify(args, out):
    rows = _verification_rows(args.n, args.seed)
    width = max(len(r[0]) for r in rows)
    ok = True
    for name, observed, tolerance, passed in rows:
        ok &= passed
        out.write(
            f"{name:<{width}}  {observed:>12.3e}  (tol {tolerance:>8.1e})  "
            f"{'PASS' if passed else 'FAIL'}\n"
        )
    out.write(("all checks passed" if ok else "FAILURES present") + "\n")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# entry point


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="crpoly",
        description="Geometry of conjugate-reciprocal polynomials with "
        "unit-circle roots.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="print the coefficient basis matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--omega-arg", type=float, default=0.0, metavar="RADIANS")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="Interior/Boundary/Exterior of a point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coords", type=str, required=True, metavar="a1,a2,...")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sample", help="sample region points from root angles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("volume", help="region volume, exact or Monte Carlo")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--method",
        choices=("closed-form", "mc-jacobian", "mc-hit"),
        default="closed-form",
    )
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--streams", type=int, default=1)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("boundary", help="sample a boundary curve")
    p.add_argument("--n", type=int, choices=(3, 4), required=True)
    p.add_argument("--points", type=int, default=1000)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--output", type=str, default=None, metavar="FILE")
    p.add_argument("--fig", type=str, default=None, metavar="FILE.png")

    return parser


_DISPATCH = {
    "basis": _cmd_basis,
    "classify": _cmd_classify,
    "sample": _cmd_sample,
    "verify": _cmd_verify,
    "volume": _cmd_volume,
    "boundary": _cmd_boundary,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args, sys.stdout)
    except NumericFailure as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
