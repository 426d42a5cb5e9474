import pytest

from motionlab import harmonic as hm
from motionlab import motion as mo
from motionlab.ifs import Disk, Similarity, SimilarityIFS


@pytest.fixture(scope="session")
def cantor_ifs():
    third = 1.0 / 3.0
    return SimilarityIFS(
        (Similarity(third, 0.0), Similarity(third, 2.0 / 3.0)),
        Disk(0.5 + 0j, 0.5),
        osc_verified=True,
    )


@pytest.fixture(scope="session")
def motion_h1():
    return mo.build_astala_motion(hm.Affine(0.0, 0.0, 1.0), 10)


@pytest.fixture(scope="session")
def motion_hre():
    return mo.build_astala_motion(hm.Affine(1.0, 0.0, 1.0), 10)


@pytest.fixture(scope="session")
def motion_trig():
    return mo.build_astala_motion(hm.TrigPoly(1.2, (0.5,), (0.2,)), 12)


@pytest.fixture(scope="session")
def composite_single():
    # constant target d = 2/3, i.e. reciprocal 3/2, one block of 1000 maps
    target = hm.InfHarmonicFn((hm.Affine(0.0, 0.0, 1.5),))
    return mo.build_prescribed_motion(target, [1000])


@pytest.fixture(scope="session")
def composite_two():
    target = hm.InfHarmonicFn((hm.Affine(0.0, 0.0, 1.5), hm.Affine(0.5, 0.0, 2.0)))
    return mo.build_prescribed_motion(target, [10, 20])


@pytest.fixture(scope="session")
def test_motions(motion_h1, motion_hre, motion_trig, composite_single, composite_two):
    return [motion_h1, motion_hre, motion_trig, composite_single, composite_two]
