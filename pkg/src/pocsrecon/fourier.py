"""DFT conventions, radial sampling masks and the observation projection.

Forward transforms are unnormalized and inverse transforms carry the
``1/n**2`` factor, so that ``sum(|F|**2) == n**2 * sum(|f|**2)``.
"""
from dataclasses import dataclass

import numpy as np

from .grid import DimensionError, as_image, as_spectrum, check_same_size


def dft2(img):
    """Unnormalized forward DFT of a real image.

    The result is made exactly Hermitian: pairs of mirrored coefficients are
    replaced by their conjugate average, which only moves them by rounding
    error but makes ``F[m, k] == conj(F[-m, -k])`` hold bit for bit.
    """
    spec = np.fft.fft2(as_image(img))
    return 0.5 * (spec + np.conj(conjugate_mirror(spec)))


def idft2(spec):
    """Inverse DFT followed by discarding the imaginary part."""
    return np.ascontiguousarray(np.fft.ifft2(as_spectrum(spec)).real)


def _round_half_away(x):
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def conjugate_mirror(arr):
    """Return ``a[(-m) % n, (-k) % n]`` for every ``(m, k)``."""
    return np.roll(arr[::-1, ::-1], 1, axis=(0, 1))


def is_conjugate_symmetric(mask):
    return bool(np.array_equal(mask, conjugate_mirror(mask)))


def radial_mask(n, lines):
    """Boolean sampling pattern made of ``lines`` radial lines through DC.

    Line ``l`` has angle ``pi * l / lines``; integer radii ``-n/2 .. n/2-1``
    are rounded to the nearest lattice point, with column frequency
    ``round(r cos)`` and row frequency ``round(r sin)``.
    """
    if n < 2 or n % 2:
        raise ValueError(f"radial_mask needs an even n >= 2, got {n}")
    if lines < 1:
        raise ValueError(f"need at least one radial line, got {lines}")
    theta = np.pi * np.arange(lines) / lines
    r = np.arange(-n // 2, n // 2, dtype=np.float64)
    kx = _round_half_away(np.outer(np.cos(theta), r)).astype(np.int64) % n
    ky = _round_half_away(np.outer(np.sin(theta), r)).astype(np.int64) % n
    mask = np.zeros((n, n), dtype=bool)
    mask[ky.ravel(), kx.ravel()] = True
    mask |= conjugate_mirror(mask)
    mask[0, 0] = True
    return mask


def full_mask(n):
    return np.ones((n, n), dtype=bool)


def dc_mask(n):
    mask = np.zeros((n, n), dtype=bool)
    mask[0, 0] = True
    return mask


def validate_mask(mask):
    mask = np.asarray(mask)
    if mask.dtype != np.bool_:
        raise TypeError("sampling mask must be boolean")
    if mask.ndim != 2 or mask.shape[0] != mask.shape[1]:
        raise DimensionError(f"sampling mask must be square, got shape {mask.shape}")
    if not mask[0, 0]:
        raise ValueError("sampling mask must include the DC coefficient")
    if not is_conjugate_symmetric(mask):
        raise ValueError("sampling mask must be conjugate symmetric")
    return mask


@dataclass(frozen=True, eq=False)
class Observation:
    """Measured Fourier coefficients ``values`` on ``mask``, zero elsewhere."""

    mask: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        mask = validate_mask(self.mask)
        values = as_spectrum(self.values, "observation values")
        check_same_size(mask, values, "mask and observation values")
        if np.any(values[~mask] != 0):
            raise ValueError("observation values must be zero off the mask")
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "values", values)

    @property
    def n(self):
        return self.mask.shape[0]

    @property
    def sampling_ratio(self):
        return float(np.count_nonzero(self.mask)) / self.mask.size


def measure(img, mask):
    img = as_image(img)
    mask = validate_mask(mask)
    check_same_size(img, mask, "image and mask")
    return Observation(mask, np.where(mask, dft2(img), 0.0 + 0.0j))


def data_projection(spec, obs):
    """Overwrite the sampled coefficients of ``spec`` with the observation."""
    spec = as_spectrum(spec)
    check_same_size(spec, obs.mask, "spectrum and observation")
    return np.where(obs.mask, obs.values, spec)


def back_projection_init(obs):
    """Zero-filled inverse transform of the observation."""
    return idft2(obs.values)


def masked_residual(spec, obs):
    """l2 distance between ``spec`` and the observation on the mask."""
    diff = spec[obs.mask] - obs.values[obs.mask]
    return float(np.sqrt(np.sum(diff.real * diff.real + diff.imag * diff.imag)))
