"""3D squircular implicit surfaces as inside-negative scalar fields.

Closed solids (cones, cuboctahedron) are built with pointwise-max CSG so the
bounding inequalities become capping surfaces and the meshes come out
watertight. Evaluators accept scalars or numpy arrays and are pure.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

FAMILIES_3D = (
    "lame3d",
    "sphube",
    "periodic3d",
    "oblique3d",
    "toroid",
    "toroid_octic",
    "cone_fg",
    "cone_lame",
    "cuboctahedron",
)


@dataclass(frozen=True)
class ShapeSpec3D:
    """Parameters of one 3D squircular family.

    R is the toroid hole-to-tube-center distance, a/b/c the cone semi-axes and
    height, k the cuboctahedron scale and cc its cross-term constant.
    """

    family: str
    p: float = 2.0
    s: float = 0.0
    r: float = 1.0
    h: float = 0.0
    R: float = 2.0
    a: float = 1.0
    b: float = 1.0
    c: float = 1.0
    k: float = 1.0
    cc: float = 2.0

    def __post_init__(self):
        if self.family not in FAMILIES_3D:
            raise ValueError(f"unknown 3D family {self.family!r}")
        if not self.r > 0:
            raise ValueError(f"scale r must be positive, got {self.r}")
        if self.family == "lame3d" and not self.p >= 1:
            raise ValueError(f"lame3d exponent p must be >= 1, got {self.p}")
        if self.family in ("sphube", "periodic3d", "oblique3d", "toroid", "toroid_octic", "cone_fg"):
            if not 0 <= self.s <= 1:
                raise ValueError(f"squareness must be in [0, 1], got {self.s}")
        if self.family == "oblique3d" and not 0 <= self.h <= 4:
            raise ValueError(f"3D overshoot h must be in [0, 4], got {self.h}")
        if self.family in ("toroid", "toroid_octic") and not self.R > self.r:
            raise ValueError(f"ring torus requires R > r, got R={self.R}, r={self.r}")
        if self.family in ("cone_fg", "cone_lame") and not self.c > 0:
            raise ValueError(f"cone height c must be positive, got {self.c}")
        if self.family == "cone_lame":
            if not (self.a > 0 and self.b > 0):
                raise ValueError("cone semi-axes a, b must be positive")
            if not 1 <= self.p <= 2:
                raise ValueError(f"cone_lame exponent p must be in [1, 2], got {self.p}")
        if self.family == "cuboctahedron":
            if not self.k > 0:
                raise ValueError(f"cuboctahedron scale k must be positive, got {self.k}")
            if not 1.5 <= self.cc <= 4:
                # heuristic quality range, not a hard constraint
                warnings.warn(
                    f"cuboctahedron constant cc={self.cc} outside the recommended [1.5, 4]",
                    stacklevel=2,
                )


def _scaled_pnorm2(ax, ay, p):
    m = np.maximum(ax, ay)
    safe = np.where(m > 0, m, 1.0)
    return m * ((ax / safe) ** p + (ay / safe) ** p) ** (1.0 / p)


def _scaled_pnorm3(ax, ay, az, p):
    m = np.maximum(np.maximum(ax, ay), az)
    safe = np.where(m > 0, m, 1.0)
    return m * ((ax / safe) ** p + (ay / safe) ** p + (az / safe) ** p) ** (1.0 / p)


def eval_lame3d(x, y, z, p, r):
    """Superellipsoid |x|^p + |y|^p + |z|^p = r^p in normalized p-norm form."""
    ax, ay, az = np.abs(x), np.abs(y), np.abs(z)
    if math.isinf(p):
        return np.maximum(np.maximum(ax, ay), az) - r
    return _scaled_pnorm3(ax, ay, az, p) - r


def eval_sphube(x, y, z, s, r):
    """Sphere-cube blend generalizing the Fernandez-Guasti squircle."""
    x2, y2, z2 = np.square(x), np.square(y), np.square(z)
    c2 = (s * s) / (r * r)
    return x2 + y2 + z2 - c2 * (x2 * y2 + y2 * z2 + x2 * z2) + (c2 * c2) * (x2 * y2 * z2) - r * r


def eval_periodic3d(x, y, z, s, r):
    """Triply-periodic cosine-product counterpart of the periodic squircle."""
    c = s * np.pi / (2.0 * r)
    return np.cos(s * np.pi / 2.0) - np.cos(c * x) * np.cos(c * y) * np.cos(c * z)


def eval_oblique3d(x, y, z, s, r, h=0.0):
    """Triply-periodic cosine-sum field 2 + cos(s pi) - floor(s) h - sum of
    cosines (sham octahedron at s = 1).

    The terms are paired so that the six face centers (+-r,0,0), (0,+-r,0),
    (0,0,+-r) evaluate to exactly 0 at h = 0 instead of picking up a stray
    ulp. At s=1, r=pi, h=1 the field is -(cos x + cos y + cos z) to rounding,
    the sham Schwarz surface.
    """
    c = s * np.pi / r
    paired = (
        (np.cos(s * np.pi) - np.cos(c * x))
        + (1.0 - np.cos(c * y))
        + (1.0 - np.cos(c * z))
    )
    return paired - math.floor(s) * h


def eval_toroid(x, y, z, s, R, r):
    """Squircular toroid, sqrt form: squareness-deformed torus of radii R, r."""
    u = np.sqrt(np.square(x) + np.square(y)) - R
    u2, z2 = np.square(u), np.square(z)
    return u2 + z2 - (s * s) / (r * r) * (z2 * u2) - r * r


def eval_toroid_octic(x, y, z, s, R, r):
    """Squircular toroid, equivalent octic polynomial form (LHS - RHS)."""
    q2 = np.square(x) + np.square(y)
    z2 = np.square(z)
    w = (s * s) / (r * r) * z2
    lhs = np.square(q2 + z2 + R * R - r * r - w * (q2 + R * R))
    rhs = 4.0 * R * R * q2 * np.square(1.0 - w)
    return lhs - rhs


def eval_cone_fg(x, y, z, s, c):
    """Squircular cone over a Fernandez-Guasti base, closed as a CSG solid.

    The quartic sheet is intersected with the height caps 0 <= z <= c and the
    pruning slabs |x| <= z/c, |y| <= z/c that remove its extraneous parts.
    """
    x2, y2, z2 = np.square(x), np.square(y), np.square(z)
    quartic = x2 * z2 + y2 * z2 - (s * s) * (c * c) * (x2 * y2) - z2 * z2 / (c * c)
    f = np.maximum(quartic, -np.asarray(z, dtype=float))
    f = np.maximum(f, z - c)
    f = np.maximum(f, (c * c) * x2 - z2)
    return np.maximum(f, (c * c) * y2 - z2)


def eval_cone_lame(x, y, z, p, a, b, c):
    """Squircular cone over a Lame lower-squircle base, closed by height caps."""
    z = np.asarray(z, dtype=float)
    lateral = _scaled_pnorm2(np.abs(np.divide(x, a)), np.abs(np.divide(y, b)), p) - z / c
    f = np.maximum(lateral, -z)
    return np.maximum(f, z - c)


def eval_sham_cuboctahedron(x, y, z, k=1.0, cc=2.0):
    """Sextic cuboctahedron approximation, clipped to its bounding box."""
    x2, y2, z2 = np.square(x), np.square(y), np.square(z)
    k2 = k * k
    sextic = (
        (x2 + y2 + z2) / k2
        - (x2 * y2 + y2 * z2 + x2 * z2) / (k2 * k2)
        + cc * (x2 * y2 * z2) / (k2 * k2 * k2)
        - 1.0
    )
    f = np.maximum(sextic, np.abs(x) - k)
    f = np.maximum(f, np.abs(y) - k)
    return np.maximum(f, np.abs(z) - k)


def _box_clip(raw, ext):
    # Intersect with the cube |x|,|y|,|z| <= ext. On the cube surface the clip
    # term is exactly 0, which overrides the raw field's rounding noise there
    # (it can be a few ulps of either sign where the true value is 0), and
    # beyond it the extra far sheets of the equation are cut away.
    def field(x, y, z):
        f = np.maximum(raw(x, y, z), np.abs(x) - ext)
        f = np.maximum(f, np.abs(y) - ext)
        return np.maximum(f, np.abs(z) - ext)

    return field


def make_field3d(spec: ShapeSpec3D):
    """Build the canonical inside-negative field for a 3D shape spec.

    Degenerate s = 0 periodic3d/oblique3d map to the exact sphere field. The
    sphube is clipped to the cube |x|,|y|,|z| <= r (its equation grows extra
    sheets past |x| = r for every s > 0, meeting the cube only at the six face
    centers); the toroid is clipped to the slab |z| <= r, which at s = 1
    removes the far sheets (|q - R| > r with |z| > r) without touching the
    toroid itself.
    """
    f = spec.family
    if f == "lame3d":
        return lambda x, y, z: eval_lame3d(x, y, z, spec.p, spec.r)
    if f == "sphube":
        return _box_clip(lambda x, y, z: eval_sphube(x, y, z, spec.s, spec.r), spec.r)
    if f in ("periodic3d", "oblique3d") and spec.s == 0:
        return lambda x, y, z: np.square(x) + np.square(y) + np.square(z) - spec.r * spec.r
    if f == "periodic3d":
        return lambda x, y, z: eval_periodic3d(x, y, z, spec.s, spec.r)
    if f == "oblique3d":
        return lambda x, y, z: eval_oblique3d(x, y, z, spec.s, spec.r, spec.h)
    if f == "toroid":
        return lambda x, y, z: np.maximum(
            eval_toroid(x, y, z, spec.s, spec.R, spec.r), np.abs(z) - spec.r
        )
    if f == "toroid_octic":
        return lambda x, y, z: eval_toroid_octic(x, y, z, spec.s, spec.R, spec.r)
    if f == "cone_fg":
        return lambda x, y, z: eval_cone_fg(x, y, z, spec.s, spec.c)
    if f == "cone_lame":
        return lambda x, y, z: eval_cone_lame(x, y, z, spec.p, spec.a, spec.b, spec.c)
    return lambda x, y, z: eval_sham_cuboctahedron(x, y, z, spec.k, spec.cc)
