"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run `pytest tests/test_acceptance.py -s -q` to see the per-criterion lines;
tolerances are pinned here and nowhere else.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest
from click.testing import CliRunner

from motionlab import bounds as bd
from motionlab import dimest
from motionlab import harmonic as hm
from motionlab import motion as mo
from motionlab import verify as vf
from motionlab.cli import main as cli_main
from motionlab.ifs import ChaosGame, cloud_to_csv, render_limit_set, similarity_dimension

LOG2 = math.log(2.0)
CANTOR_DIM = 0.6309297535714574


@contextmanager
def criterion(number, description):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number}: FAIL - {description}")
        raise
    print(f"ACCEPTANCE {number}: PASS - {description}")


def reciprocal_constant(n):
    return 0.5 + LOG2 / (2.0 * math.log(n))


# shared heavy artifacts for criteria 3 and 10
ESTIMATOR_LAMBDAS = (0.0, 0.5, -0.5)
ESTIMATOR_SEED = 42
ESTIMATOR_POINTS = 200_000
BOX_RANGE = (2, 20)
PACK_RANGE = (2, 14)


@pytest.fixture(scope="module")
def estimator_run(motion_hre):
    t0 = time.perf_counter()
    out = {}
    for lam in ESTIMATOR_LAMBDAS:
        cloud = render_limit_set(
            motion_hre.ifs_at(lam), ChaosGame(ESTIMATOR_POINTS, ESTIMATOR_SEED)
        )
        box = dimest.minkowski_estimate(
            dimest.dyadic_box_counts(cloud, *BOX_RANGE), "auto"
        )
        pack = dimest.packing_estimate(
            dimest.packing_counts(
                cloud, [2.0**-k for k in range(PACK_RANGE[0], PACK_RANGE[1] + 1)]
            ),
            "auto",
        )
        out[lam] = (cloud, box.value, pack.value)
    out["elapsed"] = time.perf_counter() - t0
    return out


class TestCriterion1:
    def test_cantor_similarity_dimension(self):
        with criterion(1, "simdim on (1/3, 1/3) hits log2/log3 to 1e-12 in < 1 ms"):
            res = CliRunner().invoke(
                cli_main, ["simdim", "--ratios", f"{1/3!r},{1/3!r}"]
            )
            assert res.exit_code == 0
            assert abs(float(res.output) - CANTOR_DIM) <= 1e-12
            best = math.inf
            for _ in range(5):
                t0 = time.perf_counter()
                s = similarity_dimension([1 / 3, 1 / 3])
                best = min(best, time.perf_counter() - t0)
            assert abs(s - CANTOR_DIM) <= 1e-12
            assert best < 1e-3, f"solver took {best * 1e3:.3f} ms"


class TestCriterion2:
    def test_astala_closed_form_and_placement(self, motion_h1):
        with criterion(2, "Astala closed form matches the root solver; placement grid validates in < 10 s"):
            t0 = time.perf_counter()
            expected = 1.0 / (1.0 + reciprocal_constant(10))
            assert abs(motion_h1.dimension(0.0) - expected) <= 1e-12
            root = similarity_dimension(motion_h1.ifs_at(0.0).ratios)
            assert abs(motion_h1.dimension(0.0) - root) <= 1e-12
            for n in (10, 11, 12, 13, 16, 19, 20, 50, 200, 2000):
                centers = mo.place_disks(n)
                r_pad = mo.block_radius(n) * (1.0 + mo.PLACEMENT_MARGIN)
                pts = np.asarray(centers)
                assert len(centers) == n
                assert np.max(np.abs(pts)) <= 1.0 - r_pad + 1e-12
                diff = np.abs(pts[:, None] - pts[None, :])
                diff[np.diag_indices(n)] = np.inf
                assert diff.min() >= 2.0 * r_pad - 1e-12
            assert time.perf_counter() - t0 < 10.0


class TestCriterion3:
    def test_estimators_track_theory(self, motion_hre, estimator_run):
        with criterion(3, "box estimates within 0.07 of closed forms; packing agrees within 0.07; < 30 s"):
            frozen = {0.0: 0.605870, 0.5: 0.465005, -0.5: 0.869175}
            for lam in ESTIMATOR_LAMBDAS:
                _, box, pack = estimator_run[lam]
                assert abs(box - motion_hre.dimension(lam)) <= 0.07
                assert abs(box - frozen[lam]) <= 0.07
                assert abs(box - pack) <= 0.07
            assert estimator_run["elapsed"] < 30.0


class TestCriterion4:
    def test_truncated_prescribed_motion(self, composite_single):
        with criterion(4, "d = 2/3 target at n = 1000 reports the exact truncation excess"):
            achieved = composite_single.reciprocal_dimension(0.0)
            excess = composite_single.excess(0.0)
            assert abs(excess - LOG2 / (2.0 * math.log(1000.0))) <= 1e-9
            assert abs(achieved - (1.5 + LOG2 / (2.0 * math.log(1000.0)))) <= 1e-9
            assert abs(achieved - 1.550171) <= 1e-6
            assert abs(excess - 0.050171) <= 1e-6


class TestCriterion5:
    def test_harnack_and_sandwich_suite(self, test_motions, motion_h1):
        with criterion(5, "Harnack pairs, distortion sandwich, and diameter checks all behave"):
            for m in test_motions:
                rep = vf.check_harnack_ratio(
                    lambda z: 1.0 / m.dimension(z), n_pairs=100, seed=7, tol=1e-9
                )
                assert rep.passed, rep.to_text()
            k_grid = [0.1 * i for i in range(10)]
            for m in test_motions:
                rep = vf.check_distortion_sandwich(m, k_grid, slack=1e-9)
                assert rep.passed, rep.to_text()
            lams = vf.disk_mesh(5, 0.5)
            good = vf.check_diameter_harnack(motion_h1, [[0], [1]], lams, rho=0.9)
            assert good.passed, good.to_text()
            control = vf.check_diameter_harnack(motion_h1, [[0], [1]], lams, rho=0.25)
            assert not control.passed


class TestCriterion6:
    def test_bound_identities(self):
        with criterion(6, "closed-form bound identities are exact"):
            for i in range(50):
                k = 0.95 * i / 49
                assert bd.quasisymmetric_spectrum(1.0, k).lower == 1.0 - k * k
            for i in range(50):
                delta = (i + 1) / 50
                spec = bd.quasisymmetric_spectrum(delta, 0.0)
                assert spec.lower == delta
                assert spec.upper == delta or (delta == 1.0 and spec.upper == 1.0)
            for i in range(50):
                delta = (i + 1) / 50
                for j in range(50):
                    k = 0.95 * j / 49
                    spec = bd.quasisymmetric_spectrum(delta, k)
                    assert spec.lower <= delta <= spec.upper
            area = bd.area_distortion_bound(math.pi / 4.0, 1.0 / 3.0, bd.GENERAL)
            assert abs(area - math.pi) <= 1e-12
            assert bd.smirnov_quasicircle_bound(0.5) == 1.25
            for i in range(50):
                k = 0.95 * i / 49
                assert abs(bd.big_k_to_k(bd.k_to_big_k(k)) - k) <= 1e-15


class TestCriterion7:
    def test_envelope_solver_reciprocity(self):
        with criterion(7, "inf-cone solver x similarity dimension = 1 on 1000 random systems"):
            rng = np.random.Generator(np.random.Philox(202306))
            for _ in range(1000):
                size = int(rng.integers(2, 21))
                ratios = rng.uniform(math.exp(-5.0), 0.9, size=size)
                c = float(rng.uniform(0.0, size))
                t = hm.infcone_envelope_solve(-np.log(ratios), c)
                s = similarity_dimension(ratios, c)
                assert math.isfinite(t)
                assert abs(t * s - 1.0) <= 1e-9


class TestCriterion8:
    def test_mean_value_residuals(self, test_motions):
        with criterion(8, "harmonic means exact to 1e-9; envelopes super; log-dimension sub"):
            radius = 0.25
            centers = vf.disk_mesh(11, 0.9 - radius)  # 81 mesh points in the disk
            assert len(centers) >= 50
            for m in test_motions:
                blocks = (
                    [c.motion for c in m.components]
                    if isinstance(m, mo.CompositeMotion)
                    else [m]
                )
                for block in blocks:
                    rep = vf.mean_value_grid(
                        lambda z: hm.eval_harmonic(block.h, z),
                        centers, radius, "harmonic", tol=1e-9,
                    )
                    assert rep.passed, rep.to_text()
                rep = vf.mean_value_grid(
                    lambda z: 1.0 / m.dimension(z), centers, radius, "super", tol=1e-9
                )
                assert rep.passed, rep.to_text()
                rep = vf.mean_value_grid(
                    lambda z: math.log(m.dimension(z)), centers, radius, "sub", tol=1e-9
                )
                assert rep.passed, rep.to_text()


class TestCriterion9:
    def test_qsh_consistency(self, test_motions, motion_hre):
        with criterion(9, "dim(A_0) <= max over |lam| = 1/2 on every motion; margin matches"):
            for m in test_motions:
                rep = vf.run_qsh_experiment(m, circle_samples=16)
                assert rep.passed, rep.to_text()
            margin = vf.run_qsh_experiment(motion_hre, 16).extra["margin"]
            assert abs(margin - 0.263305) <= 1e-6


class TestCriterion10:
    def test_determinism_byte_identical(self, motion_hre, motion_h1, estimator_run):
        with criterion(10, "criterion 3 clouds and criterion 5 reports reproduce byte-identically"):
            for lam in ESTIMATOR_LAMBDAS:
                cloud, _, _ = estimator_run[lam]
                again = render_limit_set(
                    motion_hre.ifs_at(lam), ChaosGame(ESTIMATOR_POINTS, ESTIMATOR_SEED)
                )
                assert cloud_to_csv(again) == cloud_to_csv(cloud)
            u = lambda z: 1.0 / motion_hre.dimension(z)
            assert (
                vf.check_harnack_ratio(u, 100, seed=7, tol=1e-9).to_csv()
                == vf.check_harnack_ratio(u, 100, seed=7, tol=1e-9).to_csv()
            )
            k_grid = [0.1 * i for i in range(10)]
            assert (
                vf.check_distortion_sandwich(motion_hre, k_grid).to_csv()
                == vf.check_distortion_sandwich(motion_hre, k_grid).to_csv()
            )
            lams = vf.disk_mesh(5, 0.5)
            assert (
                vf.check_diameter_harnack(motion_h1, [[0], [1]], lams, 0.9).to_csv()
                == vf.check_diameter_harnack(motion_h1, [[0], [1]], lams, 0.9).to_csv()
            )
