"""Command-line front end: curve/surface export, parameter sweeps, the
verification suite and family info.

Exit codes: 0 success, 1 usage error, 2 numeric failure (no sign bracket,
non-finite samples), 3 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import fields2d, fields3d, mesh_io, oracle
from .contour2d import Domain2D, frantz_polyline, marching_squares, sample_grid2d
from .fields2d import ShapeSpec2D, make_field2d
from .fields3d import ShapeSpec3D, make_field3d
from .polygonize3d import Domain3D, marching_cubes, sample_grid3d

CURVE_FORMATS = ("svg", "csv")
SURFACE_FORMATS = ("obj", "stl")
SWEEP_PARAMS = {"squareness": "s", "s": "s", "exponent": "p", "p": "p", "overshoot": "h", "h": "h"}
EMPTY_NOTICE = "empty level set"

_PI_RE = re.compile(r"^(-?\d*\.?\d*)\s*pi\s*(?:/\s*(\d+\.?\d*))?$")


class UsageError(ValueError):
    pass


def pi_float(text: str) -> float:
    """Parse a float flag, accepting pi tokens like 'pi', '2pi', 'pi/2'."""
    text = text.strip().lower()
    m = _PI_RE.match(text)
    if m:
        mult = m.group(1)
        mult = float(mult) if mult not in ("", "-") else (-1.0 if mult == "-" else 1.0)
        div = float(m.group(2)) if m.group(2) else 1.0
        return mult * math.pi / div
    if text in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


@dataclass
class Command:
    subcommand: str
    spec: object = None
    domain: tuple | None = None
    grid: int = 96
    tiles: int = 1
    fmt: str = "svg"
    out: str = ""
    suite: str = "all"
    samples: int = 512
    workers: int | None = None
    sweep_param: str = ""
    sweep_values: tuple = ()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _shape_flags(p, three_d):
    p.add_argument("--family", required=True)
    p.add_argument("--exponent", "-p", type=pi_float, default=2.0, help="Lame exponent (accepts inf)")
    p.add_argument("--squareness", "-s", type=pi_float, default=0.0)
    p.add_argument("--radius", "--r", dest="radius", type=pi_float, default=1.0,
                   help="scale (tube radius for the toroid)")
    p.add_argument("--overshoot", type=pi_float, default=0.0)
    if three_d:
        p.add_argument("--R", dest="hole_R", type=pi_float, default=2.0, help="toroid center distance")
        p.add_argument("--a", type=pi_float, default=1.0)
        p.add_argument("--b", type=pi_float, default=1.0)
        p.add_argument("--c", type=pi_float, default=1.0)
        p.add_argument("--k", type=pi_float, default=1.0)
        p.add_argument("--cc", type=pi_float, default=2.0)


def _output_flags(p, grid, formats):
    p.add_argument("--grid", type=int, default=grid)
    p.add_argument("--tiles", type=int, default=1)
    p.add_argument("--format", dest="fmt", choices=formats, default=formats[0])
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--domain", type=float, nargs="*", default=None,
                   help="explicit bounds: xmin xmax ymin ymax [zmin zmax]")


def _build_parser():
    parser = _Parser(prog="squircles", allow_abbrev=False,
                     description="squircle curve and surface toolkit")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    curve = sub.add_parser("curve", allow_abbrev=False, help="export a 2D squircle")
    _shape_flags(curve, three_d=False)
    _output_flags(curve, grid=512, formats=CURVE_FORMATS)
    curve.add_argument("--samples", type=int, default=512, help="point count for the frantz family")

    surface = sub.add_parser("surface", allow_abbrev=False, help="export a 3D squircular surface")
    _shape_flags(surface, three_d=True)
    _output_flags(surface, grid=96, formats=SURFACE_FORMATS)

    sweep = sub.add_parser("sweep", allow_abbrev=False, help="export one file per parameter step")
    _shape_flags(sweep, three_d=True)
    _output_flags(sweep, grid=96, formats=CURVE_FORMATS + SURFACE_FORMATS)
    sweep.add_argument("--samples", type=int, default=512)
    sweep.add_argument("--param", required=True, choices=sorted(SWEEP_PARAMS))
    sweep.add_argument("--from", dest="start", type=pi_float, required=True)
    sweep.add_argument("--to", dest="stop", type=pi_float, required=True)
    sweep.add_argument("--steps", type=int, required=True)

    verify = sub.add_parser("verify", allow_abbrev=False, help="run the numerical checks")
    verify.add_argument("--suite", choices=("all", "limits", "equivalence", "mesh", "square"),
                        default="all")
    verify.add_argument("--grid", type=int, default=64, help="mesh-suite resolution")

    info = sub.add_parser("info", allow_abbrev=False, help="describe a shape family")
    info.add_argument("--family", required=True)
    return parser


def _make_spec(ns, three_d):
    if three_d:
        if ns.family not in fields3d.FAMILIES_3D:
            raise UsageError(f"unknown 3D family {ns.family!r}")
        return ShapeSpec3D(family=ns.family, p=ns.exponent, s=ns.squareness, r=ns.radius,
                           h=ns.overshoot, R=ns.hole_R, a=ns.a, b=ns.b, c=ns.c, k=ns.k, cc=ns.cc)
    if ns.family not in fields2d.FAMILIES_2D:
        raise UsageError(f"unknown 2D family {ns.family!r}")
    return ShapeSpec2D(family=ns.family, p=ns.exponent, s=ns.squareness, r=ns.radius,
                       h=ns.overshoot)


def parse_args(argv) -> Command:
    ns = _build_parser().parse_args(argv)
    cmd = Command(subcommand=ns.subcommand)
    if ns.subcommand == "info":
        cmd.suite = ns.family
        return cmd
    if ns.subcommand == "verify":
        cmd.suite = ns.suite
        cmd.grid = ns.grid
        return cmd

    three_d = ns.subcommand == "surface" or (
        ns.subcommand == "sweep" and ns.fmt in SURFACE_FORMATS
    )
    try:
        cmd.spec = _make_spec(ns, three_d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    cmd.grid, cmd.tiles, cmd.fmt, cmd.out = ns.grid, ns.tiles, ns.fmt, ns.out
    cmd.workers = ns.workers
    cmd.samples = getattr(ns, "samples", 512)
    if cmd.grid < 8:
        raise UsageError("--grid must be >= 8")
    if cmd.tiles < 1:
        raise UsageError("--tiles must be >= 1")
    if ns.domain is not None:
        want = 6 if three_d else 4
        if len(ns.domain) != want:
            raise UsageError(f"--domain takes {want} values for this subcommand")
        cmd.domain = tuple(ns.domain)
    if ns.subcommand == "sweep":
        if ns.steps < 1:
            raise UsageError("--steps must be >= 1")
        cmd.sweep_param = SWEEP_PARAMS[ns.param]
        cmd.sweep_values = tuple(np.linspace(ns.start, ns.stop, ns.steps))
    return cmd


def default_domain2d(spec: ShapeSpec2D, grid: int, tiles: int) -> Domain2D:
    ext = 2.5 * tiles if spec.family == "phase_grid" else 1.2 * spec.r * tiles
    return Domain2D(-ext, ext, -ext, ext, grid, grid)


def default_domain3d(spec: ShapeSpec3D, grid: int, tiles: int) -> Domain3D:
    f = spec.family
    if f in ("sphube", "periodic3d", "oblique3d"):
        # unit cell: the periodic families grow far sheets past |x| = r
        ext = spec.r * tiles
        bounds = (-ext, ext, -ext, ext, -ext, ext)
    elif f in ("toroid", "toroid_octic"):
        ext = 1.15 * (spec.R + spec.r) * tiles
        zext = 1.5 * spec.r
        bounds = (-ext, ext, -ext, ext, -zext, zext)
    elif f == "cone_fg":
        bounds = (-1.2, 1.2, -1.2, 1.2, -0.1 * spec.c, 1.1 * spec.c)
    elif f == "cone_lame":
        ext = 1.2 * max(spec.a, spec.b)
        bounds = (-ext, ext, -ext, ext, -0.1 * spec.c, 1.1 * spec.c)
    elif f == "cuboctahedron":
        ext = 1.25 * spec.k * tiles
        bounds = (-ext, ext, -ext, ext, -ext, ext)
    else:
        ext = 1.2 * spec.r * tiles
        bounds = (-ext, ext, -ext, ext, -ext, ext)
    nx = ny = grid
    xext, zspan = bounds[1] - bounds[0], bounds[5] - bounds[4]
    nz = max(8, int(round(grid * zspan / xext / 2.0)) * 2)
    return Domain3D(*bounds, nx, ny, nz)


def _write(path, writer):
    try:
        with open(path, "wb") as sink:
            writer(sink)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        raise


def _run_curve(cmd: Command) -> int:
    spec = cmd.spec
    if spec.family == "frantz":
        polylines = [frantz_polyline(spec.s, spec.r, cmd.samples)]
        ext = 1.2 * spec.r
        domain = Domain2D(-ext, ext, -ext, ext, cmd.grid, cmd.grid)
    else:
        field = make_field2d(spec)
        if cmd.domain:
            domain = Domain2D(*cmd.domain, cmd.grid, cmd.grid)
        else:
            domain = default_domain2d(spec, cmd.grid, cmd.tiles)
        grid = sample_grid2d(field, domain, workers=cmd.workers)
        polylines = marching_squares(grid)
        length = sum(
            float(np.linalg.norm(np.diff(pl.points, axis=0), axis=1).sum()) for pl in polylines
        )
        if not polylines or length < 1e-9 * (domain.dx + domain.dy):
            print(EMPTY_NOTICE)
    if cmd.fmt == "svg":
        _write(cmd.out, lambda sink: mesh_io.write_svg(polylines, domain, sink))
    else:
        _write(cmd.out, lambda sink: mesh_io.write_csv(polylines, sink))
    return 0


def _run_surface(cmd: Command) -> int:
    spec = cmd.spec
    field = make_field3d(spec)
    if cmd.domain:
        domain = Domain3D(*cmd.domain, cmd.grid, cmd.grid, cmd.grid)
    else:
        domain = default_domain3d(spec, cmd.grid, cmd.tiles)
    grid = sample_grid3d(field, domain, workers=cmd.workers)
    mesh = marching_cubes(grid)
    # a zero set of isolated points (full overshoot recession) leaves only
    # sub-cell slivers around nudged samples; report it as empty
    floor_area = 1e-9 * domain.dx * domain.dy
    if mesh.empty or mesh_io.mesh_stats(mesh).total_area < floor_area:
        print(EMPTY_NOTICE)
    comment = _describe_spec(spec)
    writer = mesh_io.write_obj if cmd.fmt == "obj" else mesh_io.write_stl
    _write(cmd.out, lambda sink: writer(mesh, sink, comment=comment))
    return 0


def _describe_spec(spec) -> str:
    if isinstance(spec, ShapeSpec3D):
        return (f"{spec.family} p={spec.p} s={spec.s} r={spec.r} h={spec.h} "
                f"R={spec.R} a={spec.a} b={spec.b} c={spec.c} k={spec.k} cc={spec.cc}")
    return f"{spec.family} p={spec.p} s={spec.s} r={spec.r} h={spec.h}"


def _run_sweep(cmd: Command) -> int:
    root, dot, ext = cmd.out.rpartition(".")
    if not dot:
        root, ext = cmd.out, ""
    width = max(2, len(str(len(cmd.sweep_values) - 1)))
    rc = 0
    for idx, value in enumerate(cmd.sweep_values):
        step = replace(cmd, spec=replace(cmd.spec, **{cmd.sweep_param: float(value)}),
                       out=f"{root}_{idx:0{width}d}{dot}{ext}")
        rc = _run_surface(step) if cmd.fmt in SURFACE_FORMATS else _run_curve(step)
        if rc:
            return rc
    return rc


FAMILY_INFO = {
    "lame": "superellipse |x|^p + |y|^p = r^p; p in [1, inf], p=2 circle, p=inf axis square, p=1 tilted square",
    "fg": "Fernandez-Guasti quartic x^2 + y^2 - (s^2/r^2) x^2 y^2 = r^2; s in [0, 1]",
    "periodic": "doubly-periodic cos(s pi x/2r) cos(s pi y/2r) = cos(s pi/2); s in (0, 1], square grid at s=1",
    "oblique": "doubly-periodic cos(s pi x/r) + cos(s pi y/r) = 1 + cos(s pi) - floor(s) h; tilted square at s=1, overshoot h in [0, 2]",
    "frantz": "parametric x = r tanh(s cos t)/tanh s, y = r tanh(s sin t)/tanh s; s > 0, square as s -> inf",
    "phase_grid": "sin(pi x) sin(pi y) = 0; grid lines through every integer coordinate",
    "lame3d": "superellipsoid |x|^p + |y|^p + |z|^p = r^p; sphere to cube (or octahedron for p in [1, 2])",
    "sphube": "sphube: sphere-cube blend with squareness s in [0, 1]",
    "periodic3d": "triply-periodic cosine product; cube with side 2r at s=1",
    "oblique3d": "triply-periodic cosine sum; sham octahedron at s=1, overshoot h in [0, 4], sham Schwarz at s=1 r=pi h=1",
    "toroid": "squircular toroid (sqrt form), R > r > 0, cross-section squareness s",
    "toroid_octic": "squircular toroid, equivalent octic polynomial form",
    "cone_fg": "squircular cone over a Fernandez-Guasti base, height c, clipped to 0 <= z <= c",
    "cone_lame": "squircular cone over a Lame lower base, exponent p in [1, 2], semi-axes a, b, height c",
    "cuboctahedron": "sham cuboctahedron sextic with scale k and cross-term constant cc in [1.5, 4]",
}


def _run_info(family: str) -> int:
    if family not in FAMILY_INFO:
        raise UsageError(f"unknown family {family!r}")
    print(f"{family}: {FAMILY_INFO[family]}")
    return 0


def _check_line(name, value, bound_desc, ok):
    status = "PASS" if ok else "FAIL"
    print(f"{name:<36} value={value:.6e} bound={bound_desc:<10} {status}")
    return ok


def _verify_limits(results):
    from .fields2d import frantz_point

    angles = 2.0 * np.pi * (np.arange(360) + 0.5) / 360

    exact = [
        ("circle_limit_lame_p2", ShapeSpec2D("lame", p=2.0), 1e-12),
        ("circle_limit_fg_s0", ShapeSpec2D("fg", s=0.0), 1e-12),
        ("circle_limit_periodic", ShapeSpec2D("periodic", s=1e-3), 1e-3),
        ("circle_limit_oblique", ShapeSpec2D("oblique", s=1e-3), 1e-3),
    ]
    for name, spec, bound in exact:
        rep = oracle.radial_profile_report(make_field2d(spec), 1.5, lambda th: 1.0)
        results.append(_check_line(name, rep.max_abs_error, f"{bound:.0e}", rep.max_abs_error <= bound))

    x, y = frantz_point(angles, 1e-3, 1.0)
    err = float(np.max(np.abs(np.hypot(x, y) - 1.0)))
    results.append(_check_line("circle_limit_frantz", err, "1e-03", err <= 1e-3))

    y_grid = np.linspace(-0.94, 0.94, 50)
    for family in ("periodic", "oblique"):
        rep = oracle.limit_convergence_check(family, y_grid, [0.2, 0.1, 0.05])
        dev = float(np.max(np.abs(rep.ratios - 4.0)))
        results.append(_check_line(f"convergence_{family}", dev, "0.5", dev <= 0.5))

    per = [
        ("periodicity_periodic_2d", make_field2d(ShapeSpec2D("periodic", s=0.5)), 8.0, 2),
        ("periodicity_oblique_2d", make_field2d(ShapeSpec2D("oblique", s=0.5)), 4.0, 2),
        ("periodicity_periodic_3d", make_field3d(ShapeSpec3D("periodic3d", s=0.5)), 8.0, 3),
        ("periodicity_oblique_3d", make_field3d(ShapeSpec3D("oblique3d", s=0.5)), 4.0, 3),
    ]
    for name, field, period, ndim in per:
        v = oracle.periodicity_check(field, period, ndim=ndim)
        results.append(_check_line(name, v, "1e-09", v <= 1e-9))
    for name, spec in (("nonperiodic_fg", ShapeSpec2D("fg", s=0.5)),
                       ("nonperiodic_lame", ShapeSpec2D("lame", p=3.0))):
        v = oracle.periodicity_check(make_field2d(spec), 4.0, ndim=2)
        results.append(_check_line(name, v, "> 0.1", v > 0.1))


def _verify_square(results):
    for name, family in (("square_case_periodic", "periodic"), ("square_case_oblique", "oblique")):
        v = oracle.square_case_check(family, r=1.0)
        results.append(_check_line(name, v, "1e-12", v <= 1e-12))
    v = oracle.square_case_check("periodic", r=3.0)
    results.append(_check_line("square_case_periodic_r3", v, "1e-12", v <= 1e-12))

    cases = [
        ("square_metric_lame_inf", ShapeSpec2D("lame", p=math.inf), oracle.square_metric_axis(1.0)),
        ("square_metric_lame_p1", ShapeSpec2D("lame", p=1.0), oracle.square_metric_tilted(1.0)),
        ("square_metric_fg", ShapeSpec2D("fg", s=1.0), oracle.square_metric_axis(1.0)),
        ("square_metric_periodic", ShapeSpec2D("periodic", s=1.0), oracle.square_metric_axis(1.0)),
        ("square_metric_oblique", ShapeSpec2D("oblique", s=1.0), oracle.square_metric_tilted(1.0)),
    ]
    for name, spec, ref in cases:
        rep = oracle.radial_profile_report(make_field2d(spec), 1.6, ref)
        results.append(_check_line(name, rep.max_abs_error, "1e-09", rep.max_abs_error <= 1e-9))


def _verify_equivalence(results):
    from .fields3d import eval_toroid, eval_toroid_octic

    R, r = 2.0, 0.5
    for s in (0.0, 0.5, 1.0):
        ref = lambda x, y, z, s=s: eval_toroid(x, y, z, s, R, r)
        alt = lambda x, y, z, s=s: eval_toroid_octic(x, y, z, s, R, r)
        v = oracle.zero_set_residual(ref, alt, 1000, seed_point=(R, 0.0, 0.0), r_max=2.0)
        bound = 1e-9 * R**4
        results.append(_check_line(f"toroid_octic_s{s}", v, f"{bound:.1e}", v <= bound))

    rng = np.random.default_rng(3)
    pts = rng.uniform(-2 * np.pi, 2 * np.pi, size=(10000, 3))
    sham = make_field3d(ShapeSpec3D("oblique3d", s=1.0, r=math.pi, h=1.0))
    v = float(np.max(np.abs(sham(*pts.T) + np.cos(pts[:, 0]) + np.cos(pts[:, 1]) + np.cos(pts[:, 2]))))
    results.append(_check_line("sham_schwarz_reduction", v, "1e-12", v <= 1e-12))

    pts2 = rng.uniform(-2, 2, size=(10000, 2))
    v = float(np.max(np.abs(
        fields3d.eval_sphube(pts2[:, 0], pts2[:, 1], 0.0, 0.7, 1.0)
        - fields2d.eval_fg(pts2[:, 0], pts2[:, 1], 0.7, 1.0))))
    results.append(_check_line("sphube_fg_z0", v, "0", v == 0.0))
    v = float(np.max(np.abs(
        fields3d.eval_periodic3d(pts2[:, 0], pts2[:, 1], 0.0, 0.7, 1.0)
        - fields2d.eval_periodic(pts2[:, 0], pts2[:, 1], 0.7, 1.0))))
    results.append(_check_line("periodic3d_periodic_z0", v, "0", v == 0.0))


def _verify_mesh(results, grid):
    cases = [
        ("mesh_sphere", ShapeSpec3D("lame3d", p=2.0), 2),
        ("mesh_torus", ShapeSpec3D("toroid", s=0.0, R=2.0, r=0.5), 0),
        ("mesh_cone_fg", ShapeSpec3D("cone_fg", s=1.0, c=3.0), 2),
        ("mesh_cuboctahedron", ShapeSpec3D("cuboctahedron"), 2),
    ]
    for name, spec, chi in cases:
        g = sample_grid3d(make_field3d(spec), default_domain3d(spec, grid, 1))
        stats = mesh_io.mesh_stats(marching_cubes(g))
        ok = stats.watertight and stats.euler_characteristic == chi
        results.append(_check_line(name, float(stats.euler_characteristic), f"chi={chi}", ok))
        if name == "mesh_sphere":
            err = abs(stats.total_area / (4 * math.pi) - 1.0)
            results.append(_check_line("mesh_sphere_area", err, "1e-02", err <= 1e-2))


def _run_verify(cmd: Command) -> int:
    results: list[bool] = []
    suite = cmd.suite
    if suite in ("all", "limits"):
        _verify_limits(results)
    if suite in ("all", "square"):
        _verify_square(results)
    if suite in ("all", "equivalence"):
        _verify_equivalence(results)
    if suite in ("all", "mesh"):
        _verify_mesh(results, cmd.grid)
    return 0 if all(results) else 2


def run(cmd: Command) -> int:
    if cmd.subcommand == "info":
        return _run_info(cmd.suite)
    if cmd.subcommand == "verify":
        return _run_verify(cmd)
    if cmd.subcommand == "sweep":
        return _run_sweep(cmd)
    if cmd.subcommand == "surface":
        return _run_surface(cmd)
    return _run_curve(cmd)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cmd = parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return 0 if not exc.code else 1
    try:
        return run(cmd)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (oracle.NoSignChangeError, oracle.InverseDomainError, ValueError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 2
    except OSError:
        return 3


if __name__ == "__main__":
    sys.exit(main())
