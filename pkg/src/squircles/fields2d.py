"""2D squircle families as inside-negative scalar fields.

Every closed family is exposed as a field f(x, y) whose zero level set is the
curve and whose value at the origin is negative. All evaluators accept scalars
or numpy arrays and are pure, so they are safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

FAMILIES_2D = ("lame", "fg", "periodic", "oblique", "frantz", "phase_grid")

# Below this squareness the Frantz ratio tanh(s*cos t)/tanh(s) loses precision,
# so the exact circle limit is substituted instead.
FRANTZ_CIRCLE_CUTOFF = 1e-6


class ParametricOnlyError(ValueError):
    """Raised when an implicit field is requested for a parametric-only family."""


@dataclass(frozen=True)
class ShapeSpec2D:
    """Parameters of one 2D squircle family.

    p is the Lame exponent (math.inf selects the exact square), s the
    squareness, r the scale, h the overshoot (oblique only, active at s = 1).
    """

    family: str
    p: float = 2.0
    s: float = 0.0
    r: float = 1.0
    h: float = 0.0

    def __post_init__(self):
        if self.family not in FAMILIES_2D:
            raise ValueError(f"unknown 2D family {self.family!r}")
        if not self.r > 0:
            raise ValueError(f"scale r must be positive, got {self.r}")
        if self.family == "lame" and not self.p >= 1:
            raise ValueError(f"lame exponent p must be >= 1, got {self.p}")
        if self.family in ("fg", "periodic", "oblique") and not 0 <= self.s <= 1:
            raise ValueError(f"squareness must be in [0, 1], got {self.s}")
        if self.family == "frantz" and not self.s >= 0:
            raise ValueError(f"frantz squareness must be >= 0, got {self.s}")
        if self.family == "oblique" and not 0 <= self.h <= 2:
            raise ValueError(f"2D overshoot h must be in [0, 2], got {self.h}")


def _scaled_pnorm(ax, ay, p):
    # (ax^p + ay^p)^(1/p) with the larger component factored out, so large
    # exponents cannot overflow. ax, ay must be non-negative.
    m = np.maximum(ax, ay)
    safe = np.where(m > 0, m, 1.0)
    return m * ((ax / safe) ** p + (ay / safe) ** p) ** (1.0 / p)


def eval_lame(x, y, p, r):
    """Superellipse |x|^p + |y|^p = r^p in normalized p-norm form."""
    ax, ay = np.abs(x), np.abs(y)
    if math.isinf(p):
        return np.maximum(ax, ay) - r
    return _scaled_pnorm(ax, ay, p) - r


def eval_fg(x, y, s, r):
    """Fernandez-Guasti quartic squircle."""
    x2, y2 = np.square(x), np.square(y)
    return x2 + y2 - (s * s) / (r * r) * (x2 * y2) - r * r


def eval_periodic(x, y, s, r):
    """Doubly-periodic cosine-product squircle.

    The constant term is cos(s*pi/2), which puts (+-r, 0) and (0, +-r) on the
    curve for every s and r.
    """
    c = s * np.pi / (2.0 * r)
    return np.cos(s * np.pi / 2.0) - np.cos(c * x) * np.cos(c * y)


def eval_oblique(x, y, s, r, h=0.0):
    """Doubly-periodic cosine-sum squircle (45-degree tilted square at s = 1).

    The floor(s) factor keeps the overshoot h inert until s reaches 1.
    """
    c = s * np.pi / r
    return 1.0 + np.cos(s * np.pi) - math.floor(s) * h - np.cos(c * x) - np.cos(c * y)


def eval_phase_grid(x, y):
    """Grid variant whose zero set is every line with an integer x or y."""
    return np.sin(np.pi * np.asarray(x, dtype=float)) * np.sin(np.pi * np.asarray(y, dtype=float))


def frantz_point(t, s, r):
    """Point on the Frantz parametric squircle at angle parameter t."""
    if s <= FRANTZ_CIRCLE_CUTOFF:
        return r * np.cos(t), r * np.sin(t)
    d = math.tanh(s)
    return r * np.tanh(s * np.cos(t)) / d, r * np.tanh(s * np.sin(t)) / d


def make_field2d(spec: ShapeSpec2D):
    """Build the canonical inside-negative field for a 2D shape spec.

    The degenerate s = 0 periodic/oblique equations are mapped to the exact
    circle field x^2 + y^2 - r^2, matching their proven limits.
    """
    family, p, s, r, h = spec.family, spec.p, spec.s, spec.r, spec.h
    if family == "frantz":
        raise ParametricOnlyError("frantz squircle is parametric-only; it has no implicit field")
    if family == "lame":
        return lambda x, y: eval_lame(x, y, p, r)
    if family == "fg":
        return lambda x, y: eval_fg(x, y, s, r)
    if family == "phase_grid":
        return eval_phase_grid
    if s == 0:  # periodic/oblique reduce to 0 = 0; substitute the circle limit
        return lambda x, y: np.square(x) + np.square(y) - r * r
    if family == "periodic":
        return lambda x, y: eval_periodic(x, y, s, r)
    return lambda x, y: eval_oblique(x, y, s, r, h)
