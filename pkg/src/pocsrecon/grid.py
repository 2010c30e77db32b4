"""Grid conventions, norms and image-quality metrics.

Images are square ``float64`` arrays of shape ``(n, n)`` and spectra are
square ``complex128`` arrays with the DC term at index ``(0, 0)``.
"""
import math
from dataclasses import dataclass

import numpy as np

PEAK = 1.0


class DimensionError(ValueError):
    """Raised when two grids that must share a side length do not."""


def as_image(img, name="image"):
    """Validate and return ``img`` as a square finite float64 array."""
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square 2D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite samples")
    return arr


def as_spectrum(spec, name="spectrum"):
    arr = np.asarray(spec, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square 2D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite coefficients")
    return arr


def check_same_size(a, b, what="arrays"):
    if a.shape != b.shape:
        raise DimensionError(f"{what} differ in size: {a.shape} vs {b.shape}")


@dataclass(frozen=True)
class QualityReport:
    """MSE and PSNR of a candidate against a reference.

    ``psnr_db`` is ``math.inf`` when the two images are identical.
    """

    mse: float
    psnr_db: float

    @property
    def is_exact(self):
        return math.isinf(self.psnr_db)


def l2_norm(img):
    arr = as_image(img)
    scale = float(np.max(np.abs(arr)))
    if scale == 0.0:
        return 0.0
    # rescaled so tiny (subnormal) samples do not underflow when squared
    return scale * float(np.sqrt(np.sum(np.square(arr / scale))))


def mse(a, b):
    a = as_image(a, "a")
    b = as_image(b, "b")
    check_same_size(a, b, "images")
    return float(np.mean(np.square(a - b)))


def psnr(reference, candidate):
    """PSNR with the peak fixed at 1.0."""
    err = mse(reference, candidate)
    if err == 0.0:
        return QualityReport(mse=0.0, psnr_db=math.inf)
    return QualityReport(mse=err, psnr_db=10.0 * math.log10(PEAK * PEAK / err))


def format_psnr(value):
    """Render a PSNR for CSV: ``inf`` for exact recovery, empty when absent."""
    if value is None:
        return ""
    if math.isinf(value):
        return "inf"
    return repr(float(value))


MAX_SIDE = 1 << 15


def validate_size_header(n):
    if not 1 <= n <= MAX_SIDE:
        raise ValueError(f"grid side length {n} outside [1, {MAX_SIDE}]")
