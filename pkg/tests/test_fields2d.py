import math

import numpy as np
import pytest

from squircles.fields2d import (
    ParametricOnlyError,
    ShapeSpec2D,
    eval_fg,
    eval_lame,
    eval_oblique,
    eval_periodic,
    eval_phase_grid,
    frantz_point,
    make_field2d,
)

# tanh(2 cos(pi/4)) / tanh(2), frozen from a 50-digit evaluation
FRANTZ_PI4_S2 = 0.92153542071461544794


class TestShapeSpec2D:
    def test_valid(self):
        spec = ShapeSpec2D("lame", p=3.0, r=2.0)
        assert spec.p == 3.0

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            ShapeSpec2D("blob")

    @pytest.mark.parametrize("kwargs", [
        dict(family="lame", p=0.5),
        dict(family="fg", s=1.5),
        dict(family="periodic", s=-0.1),
        dict(family="oblique", s=1.0, h=2.5),
        dict(family="frantz", s=-1.0),
        dict(family="fg", r=0.0),
        dict(family="fg", r=-1.0),
    ])
    def test_rejects_out_of_range(self, kwargs):
        with pytest.raises(ValueError):
            ShapeSpec2D(**kwargs)


class TestLame:
    def test_circle_point(self):
        assert eval_lame(1.0, 0.0, 2.0, 1.0) == 0.0

    def test_square_corner_at_inf(self):
        assert eval_lame(1.0, 1.0, math.inf, 1.0) == 0.0

    def test_tilted_edge_midpoint_p1(self):
        assert eval_lame(0.5, 0.5, 1.0, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_inside_negative(self):
        assert eval_lame(0.0, 0.0, 2.0, 1.0) == -1.0

    def test_large_exponent_no_overflow(self):
        # normalized form must survive huge p and huge coordinates
        v = eval_lame(1e8, 1e8, 512.0, 1.0)
        assert np.isfinite(v) and v > 0

    def test_vectorized(self):
        x = np.array([1.0, 0.0, 0.5])
        y = np.array([0.0, 1.0, 0.5])
        out = eval_lame(x, y, 2.0, 1.0)
        assert out.shape == (3,)
        assert out[0] == 0.0


class TestFg:
    def test_corner_s1(self):
        assert eval_fg(1.0, 1.0, 1.0, 1.0) == 0.0

    def test_axis_point_any_s(self):
        assert eval_fg(1.0, 0.0, 0.7, 1.0) == 0.0

    def test_circle_case(self):
        assert eval_fg(0.5, 0.5, 0.0, 1.0) == -0.5


class TestPeriodic:
    def test_corner_s1(self):
        assert eval_periodic(1.0, 1.0, 1.0, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_axis_point(self):
        assert eval_periodic(1.0, 0.0, 0.5, 1.0) == 0.0

    def test_origin_value(self):
        assert eval_periodic(0.0, 0.0, 0.5, 1.0) == pytest.approx(math.sqrt(2) / 2 - 1)


class TestOblique:
    def test_axis_point(self):
        assert eval_oblique(1.0, 0.0, 0.6, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_diagonal_line_point_s1(self):
        # lies on y = -x + 1
        assert eval_oblique(0.3, 0.7, 1.0, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_full_overshoot_origin(self):
        assert eval_oblique(0.0, 0.0, 1.0, 1.0, h=2.0) == -4.0

    def test_overshoot_inert_below_s1(self):
        x = np.linspace(-2, 2, 17)
        assert np.array_equal(
            eval_oblique(x, x, 0.9, 1.0, h=0.0), eval_oblique(x, x, 0.9, 1.0, h=2.0)
        )


class TestPhaseGrid:
    def test_lattice_zeros(self):
        assert eval_phase_grid(0.0, 0.5) == 0.0
        assert eval_phase_grid(1.5, 3.0) == pytest.approx(0.0, abs=1e-15)

    def test_cell_center(self):
        assert eval_phase_grid(0.5, 0.5) == pytest.approx(1.0)


class TestFrantzPoint:
    def test_axis_points(self):
        x, y = frantz_point(0.0, 2.0, 1.0)
        assert (x, y) == (1.0, 0.0)
        x, y = frantz_point(math.pi / 2, 2.0, 1.0)
        assert abs(x) < 1e-15 and y == pytest.approx(1.0)

    def test_diagonal_frozen_value(self):
        x, y = frantz_point(math.pi / 4, 2.0, 1.0)
        assert x == pytest.approx(FRANTZ_PI4_S2, abs=1e-14)
        assert y == pytest.approx(FRANTZ_PI4_S2, abs=1e-14)

    def test_circle_substitution_below_cutoff(self):
        t = np.linspace(0, 2 * math.pi, 64)
        x, y = frantz_point(t, 1e-9, 1.0)
        assert np.allclose(np.hypot(x, y), 1.0, atol=1e-15)

    def test_scaling_in_r(self):
        t = 2 * math.pi * np.arange(64) / 64
        x1, y1 = frantz_point(t, 2.0, 1.0)
        x3, y3 = frantz_point(t, 2.0, 3.0)
        assert np.max(np.abs(x3 - 3.0 * x1)) <= 1e-14
        assert np.max(np.abs(y3 - 3.0 * y1)) <= 1e-14

    def test_bounded_by_square(self):
        t = 2 * math.pi * np.arange(4096) / 4096
        x, y = frantz_point(t, 4.0, 1.0)
        assert max(np.abs(x).max(), np.abs(y).max()) <= 1.0
        k = np.argmin(np.abs(t - math.pi / 4))
        assert x[k] > 0.99 and y[k] > 0.99


class TestMakeField2d:
    def test_fg_s0_is_circle(self):
        field = make_field2d(ShapeSpec2D("fg", s=0.0))
        pts = np.linspace(-2, 2, 41)
        assert np.array_equal(field(pts, pts[::-1]), pts**2 + pts[::-1] ** 2 - 1.0)

    def test_periodic_s0_limit(self):
        field = make_field2d(ShapeSpec2D("periodic", s=0.0, r=2.0))
        assert field(1.0, 1.0) == -2.0
        assert field(2.0, 0.0) == 0.0

    def test_frantz_is_parametric_only(self):
        with pytest.raises(ParametricOnlyError):
            make_field2d(ShapeSpec2D("frantz", s=1.0))

    @pytest.mark.parametrize("spec", [
        ShapeSpec2D("lame", p=2.5),
        ShapeSpec2D("fg", s=0.6),
        ShapeSpec2D("periodic", s=0.6),
        ShapeSpec2D("oblique", s=0.6),
    ])
    def test_inside_negative_at_origin(self, spec):
        assert make_field2d(spec)(0.0, 0.0) < 0
