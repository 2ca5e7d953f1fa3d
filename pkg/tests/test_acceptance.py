"""Acceptance gate: one test per shipping criterion, each printing a single
PASS/FAIL line. Tolerances are fixed here and must not be loosened.
"""

import math
import os
import time

import numpy as np
import pytest

from squircles import cli, oracle
from squircles.cli import default_domain3d
from squircles.fields2d import ShapeSpec2D, eval_fg, eval_periodic, frantz_point, make_field2d
from squircles.fields3d import (
    ShapeSpec3D,
    eval_oblique3d,
    eval_periodic3d,
    eval_sphube,
    eval_toroid,
    eval_toroid_octic,
    make_field3d,
)
from squircles.mesh_io import mesh_stats
from squircles.polygonize3d import marching_cubes, sample_grid3d
from squircles.recipes import FIGURE_RECIPES, run_recipe


def _report(number, name, ok, detail=""):
    print(f"[ACCEPTANCE] criterion {number} ({name}): {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"criterion {number} ({name}) failed: {detail}"


def test_criterion_1_circle_limits():
    t0 = time.perf_counter()
    failures = []

    circle = lambda th: 1.0
    for name, spec, bound in [
        ("lame p=2", ShapeSpec2D("lame", p=2.0), 1e-12),
        ("fg s=0", ShapeSpec2D("fg", s=0.0), 1e-12),
        ("periodic s=1e-3", ShapeSpec2D("periodic", s=1e-3), 1e-3),
        ("oblique s=1e-3", ShapeSpec2D("oblique", s=1e-3), 1e-3),
    ]:
        err = oracle.radial_profile_report(make_field2d(spec), 1.5, circle).max_abs_error
        if err > bound:
            failures.append(f"{name}: {err:.3e}")

    angles = 2 * np.pi * (np.arange(360) + 0.5) / 360
    x, y = frantz_point(angles, 1e-3, 1.0)
    err = float(np.max(np.abs(np.hypot(x, y) - 1.0)))
    if err > 1e-3:
        failures.append(f"frantz s=1e-3: {err:.3e}")

    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.2f}s >= 1s")
    _report(1, "circle limits", not failures, "; ".join(failures))


def test_criterion_2_square_cases():
    t0 = time.perf_counter()
    failures = []

    for name, spec, ref in [
        ("lame p=inf", ShapeSpec2D("lame", p=math.inf), oracle.square_metric_axis(1.0)),
        ("lame p=1", ShapeSpec2D("lame", p=1.0), oracle.square_metric_tilted(1.0)),
        ("fg s=1", ShapeSpec2D("fg", s=1.0), oracle.square_metric_axis(1.0)),
        ("periodic s=1", ShapeSpec2D("periodic", s=1.0), oracle.square_metric_axis(1.0)),
        ("oblique s=1", ShapeSpec2D("oblique", s=1.0), oracle.square_metric_tilted(1.0)),
    ]:
        err = oracle.radial_profile_report(make_field2d(spec), 1.6, ref).max_abs_error
        if err > 1e-9:
            failures.append(f"{name}: {err:.3e}")

    for name, family, r in [
        ("periodic r=1", "periodic", 1.0),
        ("oblique r=1", "oblique", 1.0),
        ("periodic r=3", "periodic", 3.0),
    ]:
        res = oracle.square_case_check(family, r=r)
        if res > 1e-12:
            failures.append(f"line {name}: {res:.3e}")

    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.2f}s >= 1s")
    _report(2, "square cases", not failures, "; ".join(failures))


def test_criterion_3_limit_convergence():
    t0 = time.perf_counter()
    failures = []
    y_grid = np.linspace(-0.94, 0.94, 50)
    for family in ("periodic", "oblique"):
        rep = oracle.limit_convergence_check(family, y_grid, [0.2, 0.1, 0.05])
        if not (np.all(rep.ratios >= 3.5) and np.all(rep.ratios <= 4.5)):
            failures.append(f"{family} ratios {rep.ratios}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.2f}s >= 1s")
    _report(3, "limit convergence", not failures, "; ".join(failures))


def test_criterion_4_equivalences():
    t0 = time.perf_counter()
    failures = []

    R, r = 2.0, 0.5
    for s in (0.0, 0.5, 1.0):
        ref = lambda x, y, z, s=s: eval_toroid(x, y, z, s, R, r)
        alt = lambda x, y, z, s=s: eval_toroid_octic(x, y, z, s, R, r)
        res = oracle.zero_set_residual(ref, alt, 1000, seed_point=(R, 0.0, 0.0), r_max=2.0)
        if res > 1e-9 * R**4:
            failures.append(f"toroid octic s={s}: {res:.3e}")

    rng = np.random.default_rng(17)
    pts = rng.uniform(-2 * np.pi, 2 * np.pi, size=(10000, 3))
    res = float(np.max(np.abs(
        eval_oblique3d(pts[:, 0], pts[:, 1], pts[:, 2], 1.0, math.pi, 1.0)
        + np.cos(pts[:, 0]) + np.cos(pts[:, 1]) + np.cos(pts[:, 2])
    )))
    if res > 1e-12:
        failures.append(f"sham Schwarz: {res:.3e}")

    xy = rng.uniform(-2, 2, size=(10000, 2))
    if not np.array_equal(eval_sphube(xy[:, 0], xy[:, 1], 0.0, 0.7, 1.0),
                          eval_fg(xy[:, 0], xy[:, 1], 0.7, 1.0)):
        failures.append("sphube z=0 restriction not exact")
    if not np.array_equal(eval_periodic3d(xy[:, 0], xy[:, 1], 0.0, 0.7, 1.0),
                          eval_periodic(xy[:, 0], xy[:, 1], 0.7, 1.0)):
        failures.append("periodic3d z=0 restriction not exact")

    elapsed = time.perf_counter() - t0
    if elapsed >= 5.0:
        failures.append(f"runtime {elapsed:.2f}s >= 5s")
    _report(4, "equivalences", not failures, "; ".join(failures))


MESH_CASES = [
    ("lame3d p=1", ShapeSpec3D("lame3d", p=1.0), 2),
    ("lame3d p=2", ShapeSpec3D("lame3d", p=2.0), 2),
    ("lame3d p=4", ShapeSpec3D("lame3d", p=4.0), 2),
    ("lame3d p=inf", ShapeSpec3D("lame3d", p=math.inf), 2),
    ("sphube s=0", ShapeSpec3D("sphube", s=0.0), 2),
    ("sphube s=1", ShapeSpec3D("sphube", s=1.0), 2),
    ("periodic3d s=0.5", ShapeSpec3D("periodic3d", s=0.5), 2),
    ("periodic3d s=1", ShapeSpec3D("periodic3d", s=1.0), 2),
    ("oblique3d s=0.5", ShapeSpec3D("oblique3d", s=0.5), 2),
    ("oblique3d s=1", ShapeSpec3D("oblique3d", s=1.0), 2),
    ("toroid s=0", ShapeSpec3D("toroid", s=0.0, R=2.0, r=0.5), 0),
    ("toroid s=1", ShapeSpec3D("toroid", s=1.0, R=2.0, r=0.5), 0),
    ("cone_fg", ShapeSpec3D("cone_fg", s=0.8, c=3.0), 2),
    ("cone_lame", ShapeSpec3D("cone_lame", p=1.5, c=2.0), 2),
    ("cuboctahedron", ShapeSpec3D("cuboctahedron"), 2),
]


def test_criterion_5_mesh_topology():
    t0 = time.perf_counter()
    failures = []
    for name, spec, chi in MESH_CASES:
        dom = default_domain3d(spec, 96, 1)
        stats = mesh_stats(marching_cubes(sample_grid3d(make_field3d(spec), dom)))
        if not stats.watertight or stats.euler_characteristic != chi:
            failures.append(
                f"{name}: chi={stats.euler_characteristic} "
                f"boundary={stats.boundary_edge_count}"
            )
        if name == "lame3d p=2":
            rel = abs(stats.total_area / (4 * math.pi) - 1.0)
            if rel > 1e-2:
                failures.append(f"sphere area off by {rel:.2%}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 60.0:
        failures.append(f"runtime {elapsed:.2f}s >= 60s")
    _report(5, "mesh topology", not failures, "; ".join(failures) or f"{elapsed:.1f}s")


DETERMINISM_COMMANDS = [
    ["curve", "--family", "lame", "-p", "3", "--grid", "128", "--out", "lame.svg"],
    ["curve", "--family", "fg", "-s", "0.7", "--grid", "128", "--format", "csv", "--out", "fg.csv"],
    ["curve", "--family", "periodic", "-s", "0.7", "--grid", "128", "--out", "periodic.svg"],
    ["curve", "--family", "oblique", "-s", "0.7", "--grid", "128", "--out", "oblique.svg"],
    ["curve", "--family", "frantz", "-s", "2", "--samples", "128", "--out", "frantz.svg"],
    ["curve", "--family", "phase_grid", "--grid", "128", "--out", "phase.svg"],
    ["surface", "--family", "lame3d", "-p", "4", "--grid", "32", "--out", "lame3d.obj"],
    ["surface", "--family", "sphube", "-s", "0.5", "--grid", "32", "--format", "stl", "--out", "sphube.stl"],
    ["surface", "--family", "periodic3d", "-s", "0.5", "--grid", "32", "--out", "periodic3d.obj"],
    ["surface", "--family", "oblique3d", "-s", "0.5", "--grid", "32", "--out", "oblique3d.obj"],
    ["surface", "--family", "toroid", "--R", "2", "--r", "0.5", "-s", "0.5", "--grid", "32", "--out", "toroid.obj"],
    ["surface", "--family", "toroid_octic", "--R", "2", "--r", "0.5", "-s", "0.5", "--grid", "32", "--out", "octic.obj"],
    ["surface", "--family", "cone_fg", "-s", "0.8", "--c", "3", "--grid", "32", "--out", "cone_fg.obj"],
    ["surface", "--family", "cone_lame", "-p", "1.5", "--c", "2", "--grid", "32", "--out", "cone_lame.obj"],
    ["surface", "--family", "cuboctahedron", "--grid", "32", "--format", "stl", "--out", "cubocta.stl"],
]


def test_criterion_6_determinism(tmp_path):
    failures = []
    outputs = {}
    for label, workers in [("run1_w1", "1"), ("run2_w1", "1"), ("run3_w4", "4")]:
        outdir = tmp_path / label
        outdir.mkdir()
        os.environ["SQUIRCLES_WORKERS"] = workers
        try:
            for argv in DETERMINISM_COMMANDS:
                argv = list(argv)
                argv[argv.index("--out") + 1] = str(outdir / argv[argv.index("--out") + 1])
                rc = cli.main(argv)
                if rc != 0:
                    failures.append(f"{label} {argv[2]}: exit {rc}")
        finally:
            del os.environ["SQUIRCLES_WORKERS"]
        outputs[label] = {p.name: p.read_bytes() for p in outdir.iterdir()}
    if outputs["run1_w1"] != outputs["run2_w1"]:
        failures.append("repeat run differs")
    if outputs["run1_w1"] != outputs["run3_w4"]:
        failures.append("worker count changes bytes")
    _report(6, "determinism", not failures, "; ".join(failures))


def test_criterion_7_figure_recipes(tmp_path, capsys):
    failures = []
    for name in sorted(FIGURE_RECIPES, key=lambda n: int(n[3:])):
        outdir = tmp_path / name
        outdir.mkdir()
        rc = run_recipe(name, str(outdir))
        notices = capsys.readouterr().out.count("empty level set")
        files = list(outdir.iterdir())
        if rc != 0:
            failures.append(f"{name}: exit {rc}")
        if not files or any(p.stat().st_size == 0 for p in files):
            failures.append(f"{name}: empty output file")
        if name in ("fig20", "fig22") and notices == 0:
            failures.append(f"{name}: missing recession notice")
        if name not in ("fig20", "fig22") and notices:
            failures.append(f"{name}: unexpected recession notice")
    with capsys.disabled():
        _report(7, "figure recipes", not failures, "; ".join(failures))


def test_criterion_8_periodicity():
    failures = []
    probes = [
        ("periodic 2d", make_field2d(ShapeSpec2D("periodic", s=0.5)), 8.0, 2),
        ("oblique 2d", make_field2d(ShapeSpec2D("oblique", s=0.5)), 4.0, 2),
        ("periodic 3d", make_field3d(ShapeSpec3D("periodic3d", s=0.5)), 8.0, 3),
        ("oblique 3d", make_field3d(ShapeSpec3D("oblique3d", s=0.5)), 4.0, 3),
    ]
    for name, field, period, ndim in probes:
        res = oracle.periodicity_check(field, period, ndim=ndim)
        if res > 1e-9:
            failures.append(f"{name}: {res:.3e}")
    for name, spec in [
        ("fg control", ShapeSpec2D("fg", s=0.5)),
        ("lame control", ShapeSpec2D("lame", p=3.0)),
    ]:
        res = oracle.periodicity_check(make_field2d(spec), 4.0, ndim=2)
        if res <= 0.1:
            failures.append(f"{name} unexpectedly periodic: {res:.3e}")
    _report(8, "periodicity", not failures, "; ".join(failures))
