"""Sliding block-DCT soft thresholding.

A generic overlapped-transform denoiser: every block of a regular lattice of
origins (wrapping around the image borders) is transformed with an
orthonormal 2D DCT-II, all but its DC coefficient are soft-thresholded, and
the overlapping reconstructions are averaged with equal weights. Each
lattice offset is one orthonormal tiling of the image, so the filter is an
average of nonexpansive maps.
"""
from dataclasses import dataclass

import numpy as np
from scipy.fft import dctn, idctn

from ..grid import as_image


@dataclass(frozen=True)
class BlockDCTParams:
    threshold: float = 0.5
    block: int = 8
    step: int = 4

    def __post_init__(self):
        if not self.threshold >= 0:
            raise ValueError(f"threshold must be nonnegative, got {self.threshold}")
        if int(self.block) != self.block or self.block < 1 or self.block & (self.block - 1):
            raise ValueError(f"block must be a power of two, got {self.block}")
        if int(self.step) != self.step or not 1 <= self.step <= self.block or self.block % self.step:
            raise ValueError(f"step must divide block and lie in [1, block], got {self.step}")


def block_dct_filter(img, params, threshold=None):
    img = as_image(img)
    n = img.shape[0]
    b, step = int(params.block), int(params.step)
    if n % b:
        raise ValueError(f"block size {b} does not tile an image of side {n}")
    t = params.threshold if threshold is None else threshold
    if t < 0:
        raise ValueError(f"threshold must be nonnegative, got {t}")

    nb = n // b
    acc = np.zeros_like(img)
    count = 0
    for oy in range(0, b, step):
        for ox in range(0, b, step):
            tiles = np.roll(img, (-oy, -ox), axis=(0, 1)).reshape(nb, b, nb, b)
            coef = dctn(tiles, axes=(1, 3), norm="ortho")
            dc = coef[:, 0, :, 0].copy()
            coef = np.sign(coef) * np.maximum(np.abs(coef) - t, 0.0)
            coef[:, 0, :, 0] = dc
            est = idctn(coef, axes=(1, 3), norm="ortho").reshape(n, n)
            acc += np.roll(est, (oy, ox), axis=(0, 1))
            count += 1
    return acc / count
