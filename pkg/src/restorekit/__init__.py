"""Decision-based restoration of impulse noise and scanline artifacts in
8-bit grayscale images, with baselines, metrics, homomorphic filtering and
temporal video denoising."""

from .baselines import (
    AdaptiveMedianFilter,
    CenterWeightedMedianFilter,
    MedianFilter,
    TriStateMedianFilter,
    adaptive_median,
    cwmf,
    smf,
    tsmf,
)
from .degrade import DegradationSpec, degrade
from .freqdomain import HomomorphicFilter, homomorphic_enhance
from .imagecore import load_pgm, read_pgm, save_pgm, write_pgm
from .metrics import evaluate, mse, pona, posp, psnr, snri
from .restore import DecisionMedianFilter, RestoreConfig, ndb_restore
from .rng import Rng64

__all__ = [
    "AdaptiveMedianFilter",
    "CenterWeightedMedianFilter",
    "DecisionMedianFilter",
    "DegradationSpec",
    "HomomorphicFilter",
    "MedianFilter",
    "RestoreConfig",
    "Rng64",
    "TriStateMedianFilter",
    "adaptive_median",
    "cwmf",
    "degrade",
    "evaluate",
    "homomorphic_enhance",
    "load_pgm",
    "mse",
    "ndb_restore",
    "pona",
    "posp",
    "psnr",
    "read_pgm",
    "save_pgm",
    "smf",
    "snri",
    "tsmf",
    "write_pgm",
]

__version__ = "0.1.0"
