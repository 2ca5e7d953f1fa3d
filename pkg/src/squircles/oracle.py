"""Independent numerical verification: radial profiles by bisection,
limit-replication convergence rates, periodicity probes and cross-form
zero-set equivalences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields2d import eval_oblique, eval_periodic


class NoSignChangeError(RuntimeError):
    """Raised when a ray carries no sign bracket (empty or non-star-shaped set)."""


class InverseDomainError(ValueError):
    """Raised when an isolated-coordinate expression leaves the arccos domain."""


@dataclass(frozen=True)
class RadialProfileReport:
    angles: np.ndarray
    radii: np.ndarray
    reference: np.ndarray
    max_abs_error: float


@dataclass(frozen=True)
class ConvergenceReport:
    omegas: np.ndarray
    errors: np.ndarray
    ratios: np.ndarray


def _bisect_ray(field_on_ray, lo, hi, tol):
    flo = field_on_ray(lo)
    if flo == 0.0:
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = field_on_ray(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def radial_profile(field, theta, r_max, tol=1e-12, scan=1024):
    """First zero crossing of a 2D field along the ray at angle theta.

    The ray is scanned for the first sign change, then bisected to tol in
    radius; scanning (rather than a single end bracket) keeps thin positive
    windows near tangential zero sets detectable.
    """
    ct, st = np.cos(theta), np.sin(theta)
    if not field(0.0, 0.0) < 0:
        raise NoSignChangeError("field is not negative at the origin")
    ts = np.linspace(0.0, r_max, scan + 1)
    vals = np.asarray(field(ts * ct, ts * st))
    pos = np.nonzero(vals > 0)[0]
    if len(pos) == 0:
        raise NoSignChangeError(f"no sign change along theta={theta}")
    k = pos[0]
    return _bisect_ray(lambda t: field(t * ct, t * st), ts[k - 1], ts[k], tol)


def radial_profile_report(field, r_max, reference, n_angles=360) -> RadialProfileReport:
    """Profile at n half-offset angles against a reference radius function."""
    angles = 2.0 * np.pi * (np.arange(n_angles) + 0.5) / n_angles
    radii = np.array([radial_profile(field, t, r_max) for t in angles])
    ref = np.asarray(reference(angles), dtype=float)
    ref = np.broadcast_to(ref, radii.shape)
    return RadialProfileReport(angles, radii, ref, float(np.max(np.abs(radii - ref))))


def square_metric_axis(r):
    """Radius of the axis-aligned square of half-side r at each angle."""
    return lambda th: r / np.maximum(np.abs(np.cos(th)), np.abs(np.sin(th)))


def square_metric_tilted(r):
    """Radius of the 45-degree tilted square through (+-r, 0) at each angle."""
    return lambda th: r / (np.abs(np.cos(th)) + np.abs(np.sin(th)))


def _isolated_x(family, omega, y):
    if family == "periodic":
        arg = np.cos(omega / 2.0) / np.cos(omega * y / 2.0)
        scale = 2.0 / omega
    elif family == "oblique":
        arg = 1.0 + np.cos(omega) - np.cos(omega * y)
        scale = 1.0 / omega
    else:
        raise ValueError(f"unknown limit family {family!r}")
    bad = np.nonzero((arg < -1) | (arg > 1))[0]
    if len(bad):
        raise InverseDomainError(
            f"arccos argument out of range for omega={omega}, y={np.asarray(y)[bad[0]]}"
        )
    return scale * np.arccos(arg)


def limit_convergence_check(family, y_grid, omegas) -> ConvergenceReport:
    """Convergence of the isolated-x expression to the circle as omega halves.

    The expected rate is quadratic: each halving should shrink the maximum
    error by a factor near 4.
    """
    omegas = np.asarray(omegas, dtype=float)
    if not (omegas > 0).all():
        raise ValueError("omegas must be positive")
    if omegas.max() > 0.5:
        raise ValueError("omegas must not exceed 0.5")
    if not np.allclose(omegas[1:], omegas[:-1] / 2.0, rtol=1e-9):
        raise ValueError("omegas must form a strict halving sequence")
    y = np.asarray(y_grid, dtype=float)
    if len(y) == 0 or np.abs(y).max() >= 0.95:
        raise ValueError("y grid must lie inside (-0.95, 0.95)")
    circle = np.sqrt(1.0 - y * y)
    errors = np.array([np.max(np.abs(_isolated_x(family, w, y) - circle)) for w in omegas])
    return ConvergenceReport(omegas, errors, errors[:-1] / errors[1:])


def periodicity_check(field, period, probes=1000, ndim=2, box=5.0, seed=7):
    """Max |f(p + period*axis) - f(p)| over random probe points."""
    if not period > 0:
        raise ValueError("period must be positive")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(-box, box, size=(probes, ndim))
    worst = 0.0
    for axis in range(ndim):
        shifted = pts.copy()
        shifted[:, axis] += period
        base = field(*pts.T)
        moved = field(*shifted.T)
        worst = max(worst, float(np.max(np.abs(moved - base))))
    return worst


def square_case_check(family, r=1.0, probes=1000, seed=11):
    """Max |field| at s=1 over random points on the family's grid lines."""
    if probes < 1:
        raise ValueError("probes must be >= 1")
    rng = np.random.default_rng(seed)
    ns = rng.integers(-2, 3, size=probes)
    span = rng.uniform(-5.0 * r, 5.0 * r, size=probes)
    if family == "periodic":
        line = (2 * ns + 1) * r
        worst = np.abs(eval_periodic(line, span, 1.0, r))
        worst = np.maximum(worst, np.abs(eval_periodic(span, line, 1.0, r)))
    elif family == "oblique":
        sign = np.where(rng.random(probes) < 0.5, 1.0, -1.0)
        x = span
        y = sign * x + (2 * ns + 1) * r
        worst = np.abs(eval_oblique(x, y, 1.0, r))
    else:
        raise ValueError(f"unknown square-case family {family!r}")
    return float(np.max(worst))


def zero_set_residual(reference, alternate, sample_count, seed_point=(0.0, 0.0, 0.0), r_max=2.0, seed=13):
    """Max |alternate| over reference zeros found by ray bisection from a seed.

    Directions without a sign bracket inside r_max are skipped; if fewer than
    sample_count zeros can be collected the seeding is considered failed.
    """
    seed_point = np.asarray(seed_point, dtype=float)
    if not reference(*seed_point) < 0:
        raise NoSignChangeError("seed point is not inside the reference zero set")
    rng = np.random.default_rng(seed)
    worst = 0.0
    found = 0
    attempts = 0
    ts = np.linspace(0.0, r_max, 1025)
    while found < sample_count:
        if attempts >= 20 * sample_count:
            raise NoSignChangeError("could not bracket enough reference zeros")
        attempts += 1
        d = rng.normal(size=3)
        d /= np.linalg.norm(d)
        pts = seed_point[None, :] + ts[:, None] * d[None, :]
        vals = np.asarray(reference(pts[:, 0], pts[:, 1], pts[:, 2]))
        pos = np.nonzero(vals > 0)[0]
        if len(pos) == 0:
            continue
        k = pos[0]
        root = _bisect_ray(
            lambda t: reference(*(seed_point + t * d)), ts[k - 1], ts[k], 1e-13 * r_max
        )
        p = seed_point + root * d
        worst = max(worst, float(np.abs(alternate(p[0], p[1], p[2]))))
        found += 1
    return worst
