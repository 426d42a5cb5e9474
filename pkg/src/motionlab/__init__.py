"""motionlab: holomorphic motions of self-similar sets with prescribed
dimension functions, numerical dimension estimators, and closed-form
quasiconformal distortion bounds."""

from .bounds import (
    area_distortion_bound,
    dim_distortion_interval,
    quasisymmetric_spectrum,
    smirnov_quasicircle_bound,
)
from .harmonic import (
    Affine,
    InfHarmonicFn,
    Scaled,
    Sum,
    TrigPoly,
    conjugate,
    eval_harmonic,
    eval_inf_harmonic,
    harnack_distance,
    harnack_interval,
    infcone_envelope_solve,
    sym_harnack_interval,
)
from .ifs import (
    ChaosGame,
    Deterministic,
    Disk,
    PointCloud,
    Similarity,
    SimilarityIFS,
    cell_diameter,
    check_open_set_disks,
    render_limit_set,
    similarity_dimension,
)
from .motion import (
    AstalaMotion,
    CompositeMotion,
    build_astala_motion,
    build_prescribed_motion,
    place_disks,
)

__version__ = "0.1.0"

__all__ = [
    "Affine",
    "AstalaMotion",
    "ChaosGame",
    "CompositeMotion",
    "Deterministic",
    "Disk",
    "InfHarmonicFn",
    "PointCloud",
    "Scaled",
    "Similarity",
    "SimilarityIFS",
    "Sum",
    "TrigPoly",
    "area_distortion_bound",
    "build_astala_motion",
    "build_prescribed_motion",
    "cell_diameter",
    "check_open_set_disks",
    "conjugate",
    "dim_distortion_interval",
    "eval_harmonic",
    "eval_inf_harmonic",
    "harnack_distance",
    "harnack_interval",
    "infcone_envelope_solve",
    "place_disks",
    "quasisymmetric_spectrum",
    "render_limit_set",
    "similarity_dimension",
    "smirnov_quasicircle_bound",
    "sym_harnack_interval",
]
