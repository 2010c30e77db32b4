"""Image reconstruction from partial Fourier samples by alternating projections."""
__version__ = "0.1.0"

from ._accel import backend_name
from .filters import AnnealSchedule, FilterSpec, apply_filter
from .fourier import (Observation, back_projection_init, data_projection, dft2, idft2,
                      measure, radial_mask)
from .grid import QualityReport, l2_norm, mse, psnr
from .phantom import modified_shepp_logan_spec, rasterize, shepp_logan
from .recon import DivergenceError, ReconConfig, ReconResult, TraceRow, reconstruct, trace_to_csv


__all__ = [
    "__version__", "backend_name",
    "AnnealSchedule", "FilterSpec", "apply_filter",
    "Observation", "back_projection_init", "data_projection", "dft2", "idft2", "measure",
    "radial_mask",
    "QualityReport", "l2_norm", "mse", "psnr",
    "modified_shepp_logan_spec", "rasterize", "shepp_logan",
    "DivergenceError", "ReconConfig", "ReconResult", "TraceRow", "reconstruct", "trace_to_csv",
]
