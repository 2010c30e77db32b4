"""Hot inner loops, each in a numba and a pure-numpy flavour.

Both flavours evaluate the same arithmetic in the same order. Which one
``diffuse`` / ``ti_haar_soft`` resolve to is decided once at import time by
``pocsrecon._accel.USE_NUMBA``.
"""
import math

import numpy as np

from .._accel import USE_NUMBA, njit

SQRT_HALF = math.sqrt(0.5)


# --- explicit 4-neighbour diffusion -------------------------------------

def diffuse_numpy(u, guide, k, dt, exponential):
    """One explicit step; conductances are evaluated on ``guide``.

    Neighbour differences use mirror boundaries, so a difference across the
    image border is zero.
    """
    dv = u[1:, :] - u[:-1, :]
    dh = u[:, 1:] - u[:, :-1]
    if guide is u:
        gv, gh = dv, dh
    else:
        gv = guide[1:, :] - guide[:-1, :]
        gh = guide[:, 1:] - guide[:, :-1]
    cv = _conductance_numpy(np.abs(gv), k, exponential)
    ch = _conductance_numpy(np.abs(gh), k, exponential)

    n0, n1 = u.shape
    flux_n = np.zeros_like(u)
    flux_s = np.zeros_like(u)
    flux_e = np.zeros_like(u)
    flux_w = np.zeros_like(u)
    flux_s[:-1, :] = cv * dv
    flux_n[1:, :] = cv * -dv
    flux_e[:, :-1] = ch * dh
    flux_w[:, 1:] = ch * -dh
    return u + dt * (((flux_n + flux_s) + flux_e) + flux_w)


def _conductance_numpy(s, k, exponential):
    q = s / k
    if exponential:
        return np.exp(-(q * q))
    return 1.0 / (1.0 + q * q)


@njit
def _conductance_scalar(s, k, exponential):
    q = s / k
    if exponential:
        return math.exp(-(q * q))
    return 1.0 / (1.0 + q * q)


@njit
def diffuse_numba(u, guide, k, dt, exponential):
    n0, n1 = u.shape
    out = np.empty_like(u)
    for i in range(n0):
        for j in range(n1):
            c = u[i, j]
            gc = guide[i, j]
            fn = 0.0
            fs = 0.0
            fe = 0.0
            fw = 0.0
            if i > 0:
                fn = _conductance_scalar(abs(gc - guide[i - 1, j]), k, exponential) * (u[i - 1, j] - c)
            if i < n0 - 1:
                fs = _conductance_scalar(abs(guide[i + 1, j] - gc), k, exponential) * (u[i + 1, j] - c)
            if j < n1 - 1:
                fe = _conductance_scalar(abs(guide[i, j + 1] - gc), k, exponential) * (u[i, j + 1] - c)
            if j > 0:
                fw = _conductance_scalar(abs(gc - guide[i, j - 1]), k, exponential) * (u[i, j - 1] - c)
            out[i, j] = c + dt * (((fn + fs) + fe) + fw)
    return out


# --- undecimated Haar with soft thresholding ----------------------------

def _soft_numpy(x, t):
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


def _analysis_1d(x, step, axis):
    shifted = np.roll(x, -step, axis=axis)
    return (x + shifted) * SQRT_HALF, (x - shifted) * SQRT_HALF


def _synthesis_1d(lo, hi, step, axis):
    here = (lo + hi) * SQRT_HALF
    there = np.roll((lo - hi) * SQRT_HALF, step, axis=axis)
    return 0.5 * (here + there)


def ti_haar_soft_numpy(img, levels, t):
    approx = img
    details = []
    for level in range(levels):
        step = 1 << level
        lo, hi = _analysis_1d(approx, step, 1)
        ll, lh = _analysis_1d(lo, step, 0)
        hl, hh = _analysis_1d(hi, step, 0)
        details.append((_soft_numpy(lh, t), _soft_numpy(hl, t), _soft_numpy(hh, t)))
        approx = ll
    for level in range(levels - 1, -1, -1):
        step = 1 << level
        lh, hl, hh = details[level]
        lo = _synthesis_1d(approx, lh, step, 0)
        hi = _synthesis_1d(hl, hh, step, 0)
        approx = _synthesis_1d(lo, hi, step, 1)
    return approx


@njit
def _soft_scalar(x, t):
    a = abs(x) - t
    if a <= 0.0:
        return 0.0
    return a if x > 0.0 else -a


@njit
def ti_haar_soft_numba(img, levels, t):
    n0, n1 = img.shape
    r = SQRT_HALF
    approx = img.copy()
    details = np.empty((levels, 3, n0, n1))
    lo = np.empty((n0, n1))
    hi = np.empty((n0, n1))
    ll = np.empty((n0, n1))
    for level in range(levels):
        step = 1 << level
        for i in range(n0):
            for j in range(n1):
                a = approx[i, j]
                b = approx[i, (j + step) % n1]
                lo[i, j] = (a + b) * r
                hi[i, j] = (a - b) * r
        for i in range(n0):
            ip = (i + step) % n0
            for j in range(n1):
                a = lo[i, j]
                b = lo[ip, j]
                ll[i, j] = (a + b) * r
                details[level, 0, i, j] = _soft_scalar((a - b) * r, t)
                a = hi[i, j]
                b = hi[ip, j]
                details[level, 1, i, j] = _soft_scalar((a + b) * r, t)
                details[level, 2, i, j] = _soft_scalar((a - b) * r, t)
        approx[:, :] = ll
    for level in range(levels - 1, -1, -1):
        step = 1 << level
        for i in range(n0):
            im = (i - step) % n0
            for j in range(n1):
                lo[i, j] = 0.5 * ((approx[i, j] + details[level, 0, i, j]) * r
                                  + (approx[im, j] - details[level, 0, im, j]) * r)
                hi[i, j] = 0.5 * ((details[level, 1, i, j] + details[level, 2, i, j]) * r
                                  + (details[level, 1, im, j] - details[level, 2, im, j]) * r)
        for i in range(n0):
            for j in range(n1):
                jm = (j - step) % n1
                approx[i, j] = 0.5 * ((lo[i, j] + hi[i, j]) * r + (lo[i, jm] - hi[i, jm]) * r)
    return approx


if USE_NUMBA:
    diffuse = diffuse_numba
    ti_haar_soft = ti_haar_soft_numba
else:
    diffuse = diffuse_numpy
    ti_haar_soft = ti_haar_soft_numpy
