import math

import numpy as np
import pytest

from motionlab import harmonic as hm
from motionlab.errors import (
    InvalidC,
    NegativeValue,
    NonPositiveHarmonic,
    PointOutsideDisk,
    UnsupportedForm,
)

SAMPLE_FORMS = [
    hm.Affine(1.0, 0.0, 1.0),
    hm.Affine(0.3, -0.7, 2.0),
    hm.TrigPoly(2.0, (1.0,)),
    hm.TrigPoly(1.5, (0.4, -0.2), (0.3, 0.1)),
    hm.Scaled(2.5, hm.Affine(0.0, 0.5, 1.0)),
    hm.Sum((hm.Affine(0.2, 0.0, 0.5), hm.TrigPoly(1.0, (0.3,)))),
]


def circle_mean(f, center, radius, samples=360):
    total = 0.0
    for j in range(samples):
        t = 2 * math.pi * j / samples
        total += hm.eval_harmonic(f, center + radius * complex(math.cos(t), math.sin(t)))
    return total / samples


class TestEval:
    def test_affine_at_origin(self):
        assert hm.eval_harmonic(hm.Affine(1, 0, 1), 0) == 1.0

    def test_affine_real_shift(self):
        assert hm.eval_harmonic(hm.Affine(1, 0, 1), 0.5) == 1.5

    def test_trigpoly(self):
        # 2 + 0.5 * cos(0)
        assert hm.eval_harmonic(hm.TrigPoly(2.0, (1.0,)), 0.5) == pytest.approx(2.5, abs=1e-15)

    def test_scaled_and_sum_linear(self):
        f = hm.Affine(0.3, -0.7, 2.0)
        z = 0.2 + 0.4j
        assert hm.eval_harmonic(hm.Scaled(2.0, f), z) == pytest.approx(
            2.0 * hm.eval_harmonic(f, z), abs=1e-15
        )
        assert hm.eval_harmonic(hm.Sum((f, f)), z) == pytest.approx(
            2.0 * hm.eval_harmonic(f, z), abs=1e-15
        )

    @pytest.mark.parametrize("bad", [1.0, -1.0, 2.0 + 0j, 0.8 + 0.7j])
    def test_outside_disk(self, bad):
        with pytest.raises(PointOutsideDisk):
            hm.eval_harmonic(hm.Affine(1, 0, 1), bad)

    def test_nonfinite_rejected(self):
        with pytest.raises(PointOutsideDisk):
            hm.eval_harmonic(hm.Affine(1, 0, 1), complex(float("nan"), 0))

    def test_unsupported_form(self):
        with pytest.raises(UnsupportedForm):
            hm.eval_harmonic(3.14, 0)  # type: ignore[arg-type]


class TestConjugate:
    def test_affine_conjugate_value(self):
        # h = 1 + x has conjugate y by the Cauchy-Riemann equations
        g = hm.conjugate(hm.Affine(1, 0, 1))
        assert hm.eval_harmonic(g, 0.5j) == pytest.approx(0.5, abs=1e-15)

    def test_vanishes_at_origin(self):
        for f in SAMPLE_FORMS:
            assert hm.eval_harmonic(hm.conjugate(f), 0) == 0.0

    def test_trigpoly_conjugate_value(self):
        # h = r cos t is Re(z); the completion is z itself, so h~ = Im(z)
        g = hm.conjugate(hm.TrigPoly(0.0, (1.0,)))
        assert hm.eval_harmonic(g, 0.5j) == pytest.approx(0.5, abs=1e-15)

    def test_unsupported(self):
        with pytest.raises(UnsupportedForm):
            hm.conjugate("not a harmonic fn")  # type: ignore[arg-type]

    def test_cauchy_riemann_residual(self):
        # finite differences: dh/dx = dg/dy and dh/dy = -dg/dx
        step = 1e-5
        rng = np.random.Generator(np.random.Philox(5))
        for f in SAMPLE_FORMS:
            g = hm.conjugate(f)
            for _ in range(100):
                z = complex(*rng.uniform(-0.6, 0.6, size=2))
                hx = (hm.eval_harmonic(f, z + step) - hm.eval_harmonic(f, z - step)) / (2 * step)
                hy = (hm.eval_harmonic(f, z + step * 1j) - hm.eval_harmonic(f, z - step * 1j)) / (2 * step)
                gx = (hm.eval_harmonic(g, z + step) - hm.eval_harmonic(g, z - step)) / (2 * step)
                gy = (hm.eval_harmonic(g, z + step * 1j) - hm.eval_harmonic(g, z - step * 1j)) / (2 * step)
                assert abs(hx - gy) <= 1e-6
                assert abs(hy + gx) <= 1e-6


class TestMeanValue:
    def test_mean_value_property(self):
        rng = np.random.Generator(np.random.Philox(11))
        for f in SAMPLE_FORMS:
            for _ in range(5):
                r = rng.uniform(0.05, 0.3)
                while True:
                    z0 = complex(*rng.uniform(-0.65, 0.65, size=2))
                    if abs(z0) + r < 1.0:
                        break
                mean = circle_mean(f, z0, r)
                f0 = hm.eval_harmonic(f, z0)
                assert abs(mean - f0) <= 1e-9 * (1.0 + abs(f0))

    def test_envelope_super_mean_value(self):
        u = hm.InfHarmonicFn((hm.Affine(1, 0, 1), hm.Affine(-1, 0, 1)))
        for z0, r in [(0j, 0.5), (0.2 + 0.1j, 0.3), (-0.4j, 0.25)]:
            total = 0.0
            for j in range(360):
                t = 2 * math.pi * j / 360
                total += hm.eval_inf_harmonic(u, z0 + r * complex(math.cos(t), math.sin(t)))
            assert total / 360 <= hm.eval_inf_harmonic(u, z0) + 1e-9


class TestEnvelope:
    def test_single_constant(self):
        u = hm.InfHarmonicFn((hm.Affine(0, 0, 2),))
        assert hm.eval_inf_harmonic(u, 0.3 - 0.2j) == 2.0

    def test_two_member_min(self):
        u = hm.InfHarmonicFn((hm.Affine(1, 0, 1), hm.Affine(-1, 0, 1)))
        assert hm.eval_inf_harmonic(u, 0.3) == pytest.approx(0.7, abs=1e-15)
        assert hm.eval_inf_harmonic(u, 0) == 1.0

    def test_empty_rejected(self):
        with pytest.raises(NonPositiveHarmonic):
            hm.InfHarmonicFn(())

    def test_nonpositive_member_rejected(self):
        with pytest.raises(NonPositiveHarmonic):
            hm.InfHarmonicFn((hm.Affine(2, 0, 1),))  # dips to -1 on the closure

    def test_harnack_property(self):
        u = hm.InfHarmonicFn((hm.Affine(1, 0, 1.5), hm.TrigPoly(2.0, (1.0,))))
        rng = np.random.Generator(np.random.Philox(3))
        for _ in range(200):
            pts = []
            while len(pts) < 2:
                z = complex(*rng.uniform(-0.9, 0.9, size=2))
                if abs(z) <= 0.9:
                    pts.append(z)
            tau = hm.harnack_distance(pts[0], pts[1])
            ratio = hm.eval_inf_harmonic(u, pts[0]) / hm.eval_inf_harmonic(u, pts[1])
            assert 1.0 / tau - 1e-12 <= ratio <= tau + 1e-12


class TestPositivity:
    def test_strictly_positive(self):
        assert hm.is_positive(hm.Affine(0, 0, 1))
        assert hm.is_positive(hm.TrigPoly(2.0, (1.0,)))

    def test_boundary_zero_is_accepted(self):
        # positive on the open disk even though the boundary infimum is 0
        assert hm.is_positive(hm.Affine(1, 0, 1))

    def test_dipping_negative_rejected(self):
        assert not hm.is_positive(hm.Affine(2, 0, 1))

    def test_margin_at_center(self):
        assert not hm.is_positive(hm.Affine(0, 0, 1e-9))
        with pytest.raises(NonPositiveHarmonic):
            hm.require_positive(hm.Affine(0, 0, 0))

    def test_affine_boundary_minimum_exact(self):
        assert hm.boundary_minimum(hm.Affine(3, 4, 10)) == pytest.approx(5.0, abs=1e-15)


class TestHarnackDistance:
    def test_center_formula(self):
        assert hm.harnack_distance(0, 0.5) == pytest.approx(3.0, abs=1e-15)

    def test_coincident(self):
        assert hm.harnack_distance(0.3 + 0.2j, 0.3 + 0.2j) == 1.0

    def test_imaginary_point(self):
        assert hm.harnack_distance(0, 0.8j) == pytest.approx(9.0, abs=1e-12)

    def test_symmetry_and_lower_bound(self):
        rng = np.random.Generator(np.random.Philox(17))
        for _ in range(100):
            z1 = complex(*rng.uniform(-0.65, 0.65, size=2))
            z2 = complex(*rng.uniform(-0.65, 0.65, size=2))
            t12 = hm.harnack_distance(z1, z2)
            t21 = hm.harnack_distance(z2, z1)
            assert t12 == pytest.approx(t21, rel=1e-13)
            assert t12 >= 1.0
            if z1 != z2:
                assert t12 > 1.0


class TestHarnackIntervals:
    def test_center_interval(self):
        lo, hi = hm.harnack_interval(1.0, 0, 0.5)
        assert (lo, hi) == (pytest.approx(1 / 3, abs=1e-15), pytest.approx(3.0, abs=1e-15))

    def test_zero_value(self):
        assert hm.harnack_interval(0.0, 0.1, 0.5 + 0.2j) == (0.0, 0.0)

    def test_scaled(self):
        lo, hi = hm.harnack_interval(2.0, 0, 0.8j)
        assert lo == pytest.approx(2 / 9, abs=1e-12)
        assert hi == pytest.approx(18.0, abs=1e-10)

    def test_negative_rejected(self):
        with pytest.raises(NegativeValue):
            hm.harnack_interval(-1.0, 0, 0.5)

    def test_sym_center(self):
        assert hm.sym_harnack_interval(1.0, 0.0) == (1.0, 1.0)

    def test_sym_values(self):
        lo, hi = hm.sym_harnack_interval(0.5, 0.5)
        assert lo == pytest.approx(0.3, abs=1e-15)
        assert hi == pytest.approx(5.0 / 6.0, abs=1e-15)

    def test_sym_boundary_degeneracy(self):
        lo, hi = hm.sym_harnack_interval(1.0, 1.0 - 1e-9)
        assert lo < 1e-8 and hi > 1e8

    def test_sym_errors(self):
        with pytest.raises(NegativeValue):
            hm.sym_harnack_interval(-0.1, 0.5)
        with pytest.raises(PointOutsideDisk):
            hm.sym_harnack_interval(1.0, 1.0)


class TestInfconeSolver:
    def test_two_halves(self):
        assert hm.infcone_envelope_solve([math.log(2)] * 2, 1.0) == pytest.approx(1.0, rel=1e-11)

    def test_cantor_reciprocal(self):
        v = hm.infcone_envelope_solve([math.log(3)] * 2, 1.0)
        assert v == pytest.approx(math.log(3) / math.log(2), rel=1e-11)

    def test_empty_is_infinite(self):
        assert hm.infcone_envelope_solve([], 1.0) == math.inf
        assert hm.infcone_envelope_solve([], 7.5) == math.inf

    def test_few_entries_large_c_is_infinite(self):
        assert hm.infcone_envelope_solve([5.0, 4.0], 2.0) == math.inf
        assert hm.infcone_envelope_solve([0.0], 2.0) == math.inf

    def test_zero_entries_make_it_infeasible(self):
        # three entries stuck at exp(0) = 1 each can never sum below c = 2
        assert hm.infcone_envelope_solve([0.0, 0.0, 0.0], 2.0) == 0.0

    def test_invalid_c(self):
        with pytest.raises(InvalidC):
            hm.infcone_envelope_solve([1.0], 0.0)

    def test_negative_entry(self):
        with pytest.raises(NegativeValue):
            hm.infcone_envelope_solve([-0.1], 1.0)

    def test_reciprocal_of_similarity_dimension(self):
        # cross-module oracle: t* and the root of sum a^s = c are reciprocal
        from motionlab.ifs import similarity_dimension

        rng = np.random.Generator(np.random.Philox(23))
        for _ in range(50):
            size = int(rng.integers(2, 21))
            u = rng.uniform(0.1, 5.0, size=size)
            c = float(rng.uniform(1e-3, size - 1e-3))
            t = hm.infcone_envelope_solve(u, c)
            s = similarity_dimension(np.exp(-u), c)
            assert t * s == pytest.approx(1.0, abs=1e-9)
