"""numba-compiled kernels; same contracts as the numpy backend."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _add(a, b, p):
    if p == 2:
        return a ^ b
    out = np.int64(0)
    mult = np.int64(1)
    while a > 0 or b > 0:
        out += ((a + b) % p) * mult
        a //= p
        b //= p
        mult *= p
    return out


@njit(cache=True, inline="always")
def _neg(a, p):
    if p == 2:
        return a
    out = np.int64(0)
    mult = np.int64(1)
    while a > 0:
        out += ((-a) % p) * mult
        a //= p
        mult *= p
    return out


@njit(cache=True, inline="always")
def _mul(a, b, exp, log, order):
    if a == 0 or b == 0:
        return np.int64(0)
    return exp[(log[a] + log[b]) % order]


@njit(cache=True)
def eval_many_nb(coeffs, xs, exp, log, p, order):
    npts = xs.shape[0]
    out = np.zeros(npts, dtype=np.int64)
    deg = coeffs.shape[0]
    for i in range(npts):
        x = xs[i]
        acc = np.int64(0)
        for k in range(deg - 1, -1, -1):
            acc = _mul(acc, x, exp, log, order)
            c = coeffs[k]
            if c != 0:
                acc = _add(acc, c, p)
        out[i] = acc
    return out


@njit(cache=True)
def newton_interpolate_nb(xs, ys, exp, log, p, order):
    n = xs.shape[0]
    dd = ys.copy()
    for j in range(1, n):
        for k in range(n - 1, j - 1, -1):
            num = _add(dd[k], _neg(dd[k - 1], p), p)
            den = _add(xs[k], _neg(xs[k - j], p), p)
            if den == 0:
                dd[k] = 0
            else:
                deninv = exp[(-log[den]) % order]
                dd[k] = _mul(num, deninv, exp, log, order)
    poly = np.zeros(n, dtype=np.int64)
    length = 0
    for k in range(n - 1, -1, -1):
        if length > 0:
            negx = _neg(xs[k], p)
            prev_top = poly[length - 1]
            for i in range(length - 1, 0, -1):
                poly[i] = _add(poly[i - 1], _mul(poly[i], negx, exp, log, order), p)
            poly[0] = _mul(poly[0], negx, exp, log, order)
            poly[length] = prev_top
            length += 1
        else:
            length = 1
        poly[0] = _add(poly[0], dd[k], p)
    return poly


def eval_many(coeffs, xs, t):
    return eval_many_nb(np.asarray(coeffs, dtype=np.int64),
                        np.asarray(xs, dtype=np.int64),
                        t.exp, t.log, t.p, t.order)


def newton_interpolate(xs, ys, t):
    return newton_interpolate_nb(np.asarray(xs, dtype=np.int64),
                                 np.asarray(ys, dtype=np.int64),
                                 t.exp, t.log, t.p, t.order)
