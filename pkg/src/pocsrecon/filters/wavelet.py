"""Translation-invariant Haar soft thresholding.

The undecimated Haar transform used here is normalized so that each detail
coefficient has the scale of an orthonormal Haar coefficient, and the
synthesis averages the two polyphase reconstructions at each level. The
whole filter is therefore the average, over all ``2**levels`` by
``2**levels`` circular shifts, of orthonormal Haar soft thresholding
(cycle spinning), which makes it nonexpansive.
"""
from dataclasses import dataclass

import numpy as np

from ..grid import as_image
from . import _kernels


@dataclass(frozen=True)
class TIHaarParams:
    threshold: float = 0.1
    levels: int = 4
    mode: str = "soft"

    def __post_init__(self):
        if not self.threshold >= 0:
            raise ValueError(f"threshold must be nonnegative, got {self.threshold}")
        if int(self.levels) != self.levels or self.levels < 1:
            raise ValueError(f"levels must be a positive integer, got {self.levels}")
        if self.mode != "soft":
            raise ValueError(f"only soft thresholding is supported, got {self.mode!r}")


def soft_threshold(x, t):
    """``sign(x) * max(|x| - t, 0)`` for scalars or arrays."""
    if t < 0:
        raise ValueError(f"threshold must be nonnegative, got {t}")
    if np.isscalar(x):
        return float(np.sign(x) * max(abs(x) - t, 0.0))
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


def _log2_exact(n):
    if n < 1 or n & (n - 1):
        return None
    return n.bit_length() - 1


def ti_haar_filter(img, params, threshold=None):
    img = as_image(img)
    n = img.shape[0]
    depth = _log2_exact(n)
    if depth is None:
        raise ValueError(f"TI Haar filtering needs a power-of-two side length, got {n}")
    if params.levels > depth:
        raise ValueError(f"levels={params.levels} exceeds log2(n)={depth}")
    t = params.threshold if threshold is None else threshold
    if t < 0:
        raise ValueError(f"threshold must be nonnegative, got {t}")
    return _kernels.ti_haar_soft(np.ascontiguousarray(img), int(params.levels), float(t))
