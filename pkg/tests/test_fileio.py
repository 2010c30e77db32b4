import struct

import numpy as np
import pytest

from pocsrecon.fileio import (FormatError, decode_image, decode_mask, decode_observation, decode_pgm,
                              encode_image, encode_mask, encode_observation, encode_pgm, psnr_profile_svg,
                              read_image, write_image)
from pocsrecon.fourier import measure, radial_mask
from pocsrecon.recon import TraceRow


def test_image_container_layout(rng):
    img = rng.standard_normal((4, 4))
    buf = encode_image(img)
    assert buf[:4] == b"FPR1"
    assert struct.unpack("<I", buf[4:8]) == (4,)
    assert len(buf) == 8 + 16 * 8
    assert struct.unpack("<d", buf[8:16])[0] == img[0, 0]
    assert struct.unpack("<d", buf[16:24])[0] == img[0, 1]
    assert np.array_equal(decode_image(buf), img)


def test_mask_container(rng):
    mask = radial_mask(16, 5)
    buf = encode_mask(mask)
    assert buf[:4] == b"FPM1" and set(buf[8:]) <= {0, 1}
    assert np.array_equal(decode_mask(buf), mask)


def test_observation_container(rng):
    obs = measure(rng.random((16, 16)), radial_mask(16, 4))
    buf = encode_observation(obs)
    count = int(obs.mask.sum())
    assert buf[:4] == b"FPO1" and len(buf) == 8 + 256 + 16 * count
    first = np.argwhere(obs.mask)[0]
    re, im = struct.unpack("<dd", buf[8 + 256:8 + 256 + 16])
    assert complex(re, im) == obs.values[tuple(first)]
    back = decode_observation(buf)
    assert np.array_equal(back.mask, obs.mask)
    assert np.array_equal(back.values, obs.values)


def test_bad_containers():
    with pytest.raises(FormatError):
        decode_image(b"XXXX" + bytes(8))
    with pytest.raises(FormatError):
        decode_image(b"FPR1" + struct.pack("<I", 2) + bytes(8))
    with pytest.raises(FormatError):
        decode_mask(b"FPM1" + struct.pack("<I", 2) + bytes([0, 2, 1, 1]))


def test_pgm_quantization():
    img = np.array([[-0.3, 0.0], [0.5, 1.7]])
    buf = encode_pgm(img)
    assert buf.startswith(b"P5\n2 2\n255\n")
    assert decode_pgm(buf).tolist() == [[0, 0], [128, 255]]


def test_atomic_roundtrip(tmp_path, rng):
    img = rng.random((8, 8))
    path = tmp_path / "x.fpr"
    write_image(str(path), img)
    assert np.array_equal(read_image(str(path)), img)
    assert [p.name for p in tmp_path.iterdir()] == ["x.fpr"]


def test_svg_plot():
    rows = [TraceRow(k, 20.0 + k, 1.0, 0.1) for k in range(50)] + [TraceRow(50, float("inf"), 0.0, 0.1)]
    svg = psnr_profile_svg(rows, "demo <PM>")
    assert svg.startswith("<?xml") and "<!-- generator: pocsrecon" in svg
    assert "PSNR (dB)" in svg and "iteration k" in svg and "demo &lt;PM&gt;" in svg
    points = svg.split('points="')[1].split('"')[0].split()
    assert len(points) == 50
    assert svg == psnr_profile_svg(rows, "demo <PM>")
    assert "polyline" not in psnr_profile_svg([], "empty")
