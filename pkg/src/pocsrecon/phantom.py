"""Analytic Shepp-Logan phantom and its pixel-center rasterization."""
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Ellipse:
    additive_intensity: float
    semi_axis_a: float
    semi_axis_b: float
    center_x: float
    center_y: float
    rotation_deg: float = 0.0

    def __post_init__(self):
        if not (self.semi_axis_a > 0 and self.semi_axis_b > 0):
            raise ValueError("ellipse semi-axes must be strictly positive")

    def contains(self, x, y):
        """Inside-or-boundary test for a point (or arrays of points).

        Uses exactly the same sequence of floating point operations for
        scalars and arrays, so a scalar oracle reproduces array results
        bit for bit.
        """
        rad = math.radians(self.rotation_deg)
        c = math.cos(rad)
        s = math.sin(rad)
        dx = x - self.center_x
        dy = y - self.center_y
        u = (dx * c + dy * s) / self.semi_axis_a
        v = (dy * c - dx * s) / self.semi_axis_b
        return u * u + v * v <= 1.0


@dataclass(frozen=True)
class PhantomSpec:
    ellipses: tuple

    def __post_init__(self):
        if len(self.ellipses) == 0:
            raise ValueError("a phantom needs at least one ellipse")

    def value_at(self, x, y):
        """Sum of intensities of the ellipses containing ``(x, y)``."""
        total = 0.0
        for e in self.ellipses:
            if e.contains(x, y):
                total += e.additive_intensity
        return snap_gray(total)


# intensity, a, b, x0, y0, rotation (deg); Toft's modified contrast table
_MODIFIED_SHEPP_LOGAN = (
    (1.0, 0.69, 0.92, 0.0, 0.0, 0.0),
    (-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0),
    (-0.2, 0.11, 0.31, 0.22, 0.0, -18.0),
    (-0.2, 0.16, 0.41, -0.22, 0.0, 18.0),
    (0.1, 0.21, 0.25, 0.0, 0.35, 0.0),
    (0.1, 0.046, 0.046, 0.0, 0.1, 0.0),
    (0.1, 0.046, 0.046, 0.0, -0.1, 0.0),
    (0.1, 0.046, 0.023, -0.08, -0.605, 0.0),
    (0.1, 0.023, 0.023, 0.0, -0.606, 0.0),
    (0.1, 0.023, 0.046, 0.06, -0.605, 0.0),
)

_ORIGINAL_INTENSITIES = (2.0, -0.98, -0.02, -0.02, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01)


def modified_shepp_logan_spec():
    return PhantomSpec(tuple(Ellipse(*row) for row in _MODIFIED_SHEPP_LOGAN))


def shepp_logan_spec():
    """Same geometry with the original (low-contrast) intensities."""
    return PhantomSpec(tuple(
        Ellipse(a, *row[1:]) for a, row in zip(_ORIGINAL_INTENSITIES, _MODIFIED_SHEPP_LOGAN)
    ))


def unit_disk_spec():
    return PhantomSpec((Ellipse(1.0, 1.0, 1.0, 0.0, 0.0, 0.0),))


GRAY_DECIMALS = 12


def snap_gray(values):
    """Round accumulated intensities to ``GRAY_DECIMALS`` places.

    Table intensities are short decimals, so this maps e.g. ``1.0 - 0.8 - 0.2``
    to exactly ``0.0`` instead of ``-5.6e-17``. Adding ``0.0`` clears ``-0.0``.
    """
    return np.round(values, GRAY_DECIMALS) + 0.0


def pixel_centers(n):
    """Continuous coordinates of pixel centers; rows run top to bottom, y up."""
    idx = np.arange(n, dtype=np.float64)
    xs = (2.0 * idx + 1.0) / n - 1.0
    ys = 1.0 - (2.0 * idx + 1.0) / n
    return xs, ys


def rasterize(spec, n):
    if n < 2:
        raise ValueError(f"phantom side length must be >= 2, got {n}")
    xs, ys = pixel_centers(n)
    x = np.broadcast_to(xs[None, :], (n, n))
    y = np.broadcast_to(ys[:, None], (n, n))
    img = np.zeros((n, n), dtype=np.float64)
    for e in spec.ellipses:
        img[e.contains(x, y)] += e.additive_intensity
    return snap_gray(img)


def shepp_logan(n=256):
    return rasterize(modified_shepp_logan_spec(), n)
