import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pocsrecon.grid import DimensionError, QualityReport, format_psnr, l2_norm, mse, psnr


def test_l2_norm_examples():
    assert l2_norm(np.zeros((4, 4))) == 0.0
    assert l2_norm(np.array([[1.0, 0.0], [0.0, 0.0]])) == 1.0
    assert l2_norm(np.array([[3.0, 4.0], [0.0, 0.0]])) == 5.0


def test_mse_examples():
    a = np.arange(9.0).reshape(3, 3)
    assert mse(a, a) == 0.0
    assert mse(np.array([[0.0]]), np.array([[0.1]])) == pytest.approx(0.01, rel=1e-15)
    assert mse(np.ones((2, 2)), np.zeros((2, 2))) == 1.0


def test_mse_dimension_mismatch():
    with pytest.raises(DimensionError):
        mse(np.zeros((2, 2)), np.zeros((3, 3)))
    with pytest.raises(DimensionError):
        psnr(np.zeros((2, 2)), np.zeros((4, 4)))


def test_psnr_examples():
    ref = np.full((8, 8), 0.3)
    exact = psnr(ref, ref)
    assert exact.psnr_db == math.inf and exact.mse == 0.0 and exact.is_exact
    r = psnr(ref, ref + 0.01)
    assert r.mse == pytest.approx(1e-4, rel=1e-9)
    assert r.psnr_db == pytest.approx(40.0, abs=1e-9)
    assert psnr(ref, ref - 0.1).psnr_db == pytest.approx(20.0, abs=1e-9)


def test_rejects_non_finite():
    bad = np.zeros((2, 2))
    bad[0, 1] = np.nan
    with pytest.raises(ValueError):
        l2_norm(bad)


def test_format_psnr():
    assert format_psnr(math.inf) == "inf"
    assert format_psnr(None) == ""
    assert float(format_psnr(48.123456789012345)) == 48.123456789012345
    assert isinstance(psnr(np.zeros((1, 1)), np.ones((1, 1))), QualityReport)


images = arrays(np.float64, (6, 6), elements=st.floats(-10, 10, allow_nan=False))


@settings(max_examples=200, deadline=None)
@given(images, images, st.floats(-100, 100))
def test_metric_properties(a, b, c):
    assert psnr(a, b).mse == psnr(b, a).mse
    assert (l2_norm(a) == 0) == (not np.any(a))
    base = mse(a, b)
    shifted = mse(a + c, b + c)
    # adding c rounds each sample, so allow an absolute floor at that scale
    assert shifted == pytest.approx(base, rel=1e-12, abs=1e-24 + 1e-13 * abs(c) * math.sqrt(base))
