"""Zak-transform tools for quantitative Balian-Low estimates on Gabor Riesz bases."""
from .argument import find_jump, jump_set_measure
from .blt import main_estimate_lhs, pq_lhs, prop41_check, sharpness_bound, sweep
from .estimators import RieszBoundEstimator, SpectralSmoother, TailSweepTransformer, ZakTransformer
from .fourier import fourier, inverse_fourier
from .riesz import bounds_from_zak, gram_bounds
from .signals import CATALOG, make_generator, sample
from .zak import inverse_zak, zak_extend, zak_transform

__version__ = "0.1.0"
__all__ = [
    "CATALOG",
    "RieszBoundEstimator",
    "SpectralSmoother",
    "TailSweepTransformer",
    "ZakTransformer",
    "bounds_from_zak",
    "find_jump",
    "fourier",
    "gram_bounds",
    "inverse_fourier",
    "inverse_zak",
    "jump_set_measure",
    "main_estimate_lhs",
    "make_generator",
    "pq_lhs",
    "prop41_check",
    "sample",
    "sharpness_bound",
    "sweep",
    "zak_extend",
    "zak_transform",
]
