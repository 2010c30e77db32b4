"""On-disk formats.

Native containers (all integers little-endian uint32, floats little-endian
float64, row-major):

* ``FPR1``: magic, n, n*n floats (an image)
* ``FPM1``: magic, n, n*n bytes in {0, 1} (a sampling mask)
* ``FPO1``: magic, n, n*n mask bytes, then (re, im) pairs for the masked
  entries in row-major mask order (an observation)

Images are also exported as 8-bit binary PGM for viewing.
"""
import math
import os
import struct
import tempfile

import numpy as np

from . import __version__
from .fourier import Observation
from .grid import as_image, validate_size_header

IMAGE_MAGIC = b"FPR1"
MASK_MAGIC = b"FPM1"
OBS_MAGIC = b"FPO1"
_F64 = np.dtype("<f8")


class FormatError(ValueError):
    pass


def atomic_write(path, data):
    """Write bytes or text to ``path`` via a temporary file and rename."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _header(magic, n):
    return magic + struct.pack("<I", n)


def _read_header(buf, magic):
    if len(buf) < 8 or buf[:4] != magic:
        raise FormatError(f"expected {magic.decode()} container, got {buf[:4]!r}")
    (n,) = struct.unpack("<I", buf[4:8])
    validate_size_header(n)
    return n, buf[8:]


def encode_image(img):
    img = as_image(img)
    return _header(IMAGE_MAGIC, img.shape[0]) + img.astype(_F64).tobytes()


def decode_image(buf):
    n, body = _read_header(buf, IMAGE_MAGIC)
    if len(body) != 8 * n * n:
        raise FormatError(f"image body has {len(body)} bytes, expected {8 * n * n}")
    return np.frombuffer(body, dtype=_F64).reshape(n, n).astype(np.float64)


def encode_mask(mask):
    mask = np.asarray(mask, dtype=bool)
    return _header(MASK_MAGIC, mask.shape[0]) + mask.astype(np.uint8).tobytes()


def _decode_mask_bytes(body, n):
    raw = np.frombuffer(body[:n * n], dtype=np.uint8)
    if raw.size != n * n or np.any(raw > 1):
        raise FormatError("mask bytes must be n*n values in {0, 1}")
    return raw.reshape(n, n).astype(bool)


def decode_mask(buf):
    n, body = _read_header(buf, MASK_MAGIC)
    if len(body) != n * n:
        raise FormatError(f"mask body has {len(body)} bytes, expected {n * n}")
    return _decode_mask_bytes(body, n)


def encode_observation(obs):
    vals = obs.values[obs.mask]
    pairs = np.empty(2 * vals.size, dtype=_F64)
    pairs[0::2] = vals.real
    pairs[1::2] = vals.imag
    return _header(OBS_MAGIC, obs.n) + obs.mask.astype(np.uint8).tobytes() + pairs.tobytes()


def decode_observation(buf):
    n, body = _read_header(buf, OBS_MAGIC)
    mask = _decode_mask_bytes(body, n)
    count = int(mask.sum())
    rest = body[n * n:]
    if len(rest) != 16 * count:
        raise FormatError(f"observation has {len(rest)} value bytes, expected {16 * count}")
    pairs = np.frombuffer(rest, dtype=_F64)
    values = np.zeros((n, n), dtype=np.complex128)
    values[mask] = pairs[0::2] + 1j * pairs[1::2]
    return Observation(mask, values)


def encode_pgm(img):
    """8-bit binary graymap with ``clamp(round(255 * pixel), 0, 255)``."""
    img = as_image(img)
    gray = np.clip(np.floor(255.0 * img + 0.5), 0, 255).astype(np.uint8)
    n0, n1 = gray.shape
    return f"P5\n{n1} {n0}\n255\n".encode("ascii") + gray.tobytes()


def decode_pgm(buf):
    parts = buf.split(maxsplit=4)
    if parts[0] != b"P5" or int(parts[3]) != 255:
        raise FormatError("only 8-bit binary PGM (P5, maxval 255) is supported")
    width, height = int(parts[1]), int(parts[2])
    return np.frombuffer(parts[4][:width * height], dtype=np.uint8).reshape(height, width)


def write_image(path, img):
    atomic_write(path, encode_image(img))


def read_image(path):
    with open(path, "rb") as fh:
        return decode_image(fh.read())


def write_mask(path, mask):
    atomic_write(path, encode_mask(mask))


def read_mask(path):
    with open(path, "rb") as fh:
        return decode_mask(fh.read())


def write_observation(path, obs):
    atomic_write(path, encode_observation(obs))


def read_observation(path):
    with open(path, "rb") as fh:
        return decode_observation(fh.read())


def write_pgm(path, img):
    atomic_write(path, encode_pgm(img))


# --- SVG profile plot ---------------------------------------------------

def _nice_ticks(lo, hi, count=6):
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 10))
        t += step
    return ticks


def psnr_profile_svg(trace, title="PSNR profile", width=640, height=400):
    """Line plot of PSNR against iteration; infinite PSNR rows are skipped."""
    pts = [(r.k, r.psnr_db) for r in trace if r.psnr_db is not None and math.isfinite(r.psnr_db)]
    left, right, top, bottom = 70, 20, 40, 50
    pw, ph = width - left - right, height - top - bottom
    if pts:
        kmax = max(1, max(k for k, _ in pts))
        ylo = math.floor(min(p for _, p in pts) / 5) * 5
        yhi = math.ceil(max(p for _, p in pts) / 5) * 5
        if yhi == ylo:
            yhi = ylo + 5
    else:
        kmax, ylo, yhi = 1, 0, 50

    def sx(k):
        return left + pw * k / kmax

    def sy(p):
        return top + ph * (1 - (p - ylo) / (yhi - ylo))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f"<!-- generator: pocsrecon {__version__} -->",
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14">{_escape(title)}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _nice_ticks(0, kmax):
        x = sx(t)
        out.append(f'<line x1="{x:.2f}" y1="{top + ph}" x2="{x:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.2f}" y="{top + ph + 18}" text-anchor="middle">{t:g}</text>')
    for t in _nice_ticks(ylo, yhi):
        y = sy(t)
        out.append(f'<line x1="{left - 5}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" stroke="#dddddd"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end">{t:g}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle">iteration k</text>')
    out.append(f'<text x="18" y="{top + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {top + ph / 2:.1f})">PSNR (dB)</text>')
    if pts:
        coords = " ".join(f"{sx(k):.2f},{sy(p):.2f}" for k, p in pts)
        out.append(f'<polyline fill="none" stroke="#1f77b4" stroke-width="1.5" points="{coords}"/>')
    if ylo <= 48 <= yhi:
        y = sy(48)
        out.append(f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" '
                   'stroke="#d62728" stroke-dasharray="4,3"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text):
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
