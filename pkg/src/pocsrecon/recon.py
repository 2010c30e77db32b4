"""Reconstruction by alternating projections.

Starting from the zero-filled back-projection, each iteration applies the
prior filter and then restores the measured Fourier coefficients.
"""
import io
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .filters import FilterSpec, apply_filter
from .fourier import back_projection_init, data_projection, dft2, idft2, masked_residual
from .grid import DimensionError, as_image, format_psnr, psnr

log = logging.getLogger(__name__)

CSV_HEADER = "k,psnr_db,data_residual,param_value"


class DivergenceError(RuntimeError):
    """An iterate became non-finite; usually the filter parameters are unstable."""

    def __init__(self, k, stage):
        super().__init__(f"non-finite values in iterate at k={k} ({stage}); "
                         "check the filter parameters")
        self.k = k
        self.stage = stage


@dataclass(frozen=True)
class ReconConfig:
    k_max: int
    filter: FilterSpec
    trace_reference: np.ndarray = None
    stop_psnr_db: float = None
    log_every: int = 0

    def __post_init__(self):
        if int(self.k_max) != self.k_max or self.k_max < 1:
            raise ValueError(f"k_max must be a positive integer, got {self.k_max}")
        if self.trace_reference is not None:
            object.__setattr__(self, "trace_reference", as_image(self.trace_reference, "trace reference"))


@dataclass(frozen=True)
class TraceRow:
    k: int
    psnr_db: float  # None without a reference
    data_residual: float
    param_value: float


@dataclass(frozen=True, eq=False)
class ReconResult:
    image: np.ndarray
    spectrum: np.ndarray  # data-projected spectrum whose inverse is ``image``
    trace: tuple = field(default_factory=tuple)
    iterations_run: int = 0

    @property
    def final_psnr_db(self):
        return self.trace[-1].psnr_db if self.trace else None


def _check_finite(arr, k, stage):
    if not np.all(np.isfinite(arr)):
        raise DivergenceError(k, stage)


def reconstruct(obs, cfg):
    """Run the alternating-projection loop for at most ``cfg.k_max`` iterations.

    Row ``k`` of the trace records the parameter used at ``k``, the masked
    residual of the filtered iterate before the data projection, and the PSNR
    of the data-projected iterate against ``cfg.trace_reference``.
    """
    ref = cfg.trace_reference
    if ref is not None and ref.shape != obs.mask.shape:
        raise DimensionError(f"trace reference {ref.shape} does not match observation {obs.mask.shape}")

    current = back_projection_init(obs)
    spectrum = obs.values
    rows = []
    for k in range(cfg.k_max):
        param = cfg.filter.param_at(k)
        filtered = apply_filter(current, cfg.filter, k)
        _check_finite(filtered, k, "after filter")
        spec = dft2(filtered)
        residual = masked_residual(spec, obs)
        spectrum = data_projection(spec, obs)
        current = idft2(spectrum)
        _check_finite(current, k, "after data projection")

        quality = psnr(ref, current).psnr_db if ref is not None else None
        rows.append(TraceRow(k, quality, residual, param))
        if cfg.log_every and k % cfg.log_every == 0:
            log.info("k=%d psnr=%s residual=%.6g param=%.6g", k, format_psnr(quality), residual, param)
        if quality is not None and cfg.stop_psnr_db is not None and quality >= cfg.stop_psnr_db:
            break

    return ReconResult(image=current, spectrum=spectrum, trace=tuple(rows), iterations_run=len(rows))


def trace_to_csv(result):
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for row in result.trace:
        buf.write(f"{row.k},{format_psnr(row.psnr_db)},{row.data_residual!r},{float(row.param_value)!r}\n")
    return buf.getvalue()


def iterations_to(result, target_db):
    """Index of the first iteration reaching ``target_db``, or ``None``."""
    for row in result.trace:
        if row.psnr_db is not None and row.psnr_db >= target_db:
            return row.k
    return None


def best_psnr(result):
    vals = [r.psnr_db for r in result.trace if r.psnr_db is not None]
    return max(vals) if vals else -math.inf
