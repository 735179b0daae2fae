"""Vectorized numpy kernels for bulk field evaluation and interpolation.

All element arrays are int64 codes. The tower argument supplies the
exp/log tables, the base-p digit table and the digit place values.
"""

from __future__ import annotations

import numpy as np


def add_many(a: np.ndarray, b: np.ndarray, t) -> np.ndarray:
    if t.p == 2:
        return a ^ b
    d = (t.pdig[a] + t.pdig[b]) % t.p
    return d @ t.pows


def neg_many(a: np.ndarray, t) -> np.ndarray:
    if t.p == 2:
        return a.copy()
    d = (-t.pdig[a]) % t.p
    return d @ t.pows


def sub_many(a: np.ndarray, b: np.ndarray, t) -> np.ndarray:
    if t.p == 2:
        return a ^ b
    d = (t.pdig[a] - t.pdig[b]) % t.p
    return d @ t.pows


def mul_many(a: np.ndarray, b: np.ndarray, t) -> np.ndarray:
    a, b = np.broadcast_arrays(a, b)
    out = np.zeros(a.shape, dtype=np.int64)
    mask = (a != 0) & (b != 0)
    if mask.any():
        out[mask] = t.exp[(t.log[a[mask]] + t.log[b[mask]]) % t.order]
    return out


def inv_many(a: np.ndarray, t) -> np.ndarray:
    """Elementwise safe inverse (0 maps to 0)."""
    out = np.zeros(a.shape, dtype=np.int64)
    mask = a != 0
    if mask.any():
        out[mask] = t.exp[(-t.log[a[mask]]) % t.order]
    return out


def eval_many(coeffs: np.ndarray, xs: np.ndarray, t) -> np.ndarray:
    """Horner evaluation of one polynomial at many points."""
    acc = np.zeros(len(xs), dtype=np.int64)
    for c in coeffs[::-1]:
        acc = mul_many(acc, xs, t)
        if c != 0:
            acc = add_many(acc, np.full(len(xs), c, dtype=np.int64), t)
    return acc


def newton_interpolate(xs: np.ndarray, ys: np.ndarray, t) -> np.ndarray:
    """Coefficients (ascending) of the unique polynomial of degree < len(xs)
    through the given points, via divided differences."""
    n = len(xs)
    dd = ys.astype(np.int64).copy()
    for j in range(1, n):
        num = sub_many(dd[j:], dd[j - 1:n - 1], t)
        den = sub_many(xs[j:], xs[:n - j], t)
        dd[j:] = mul_many(num, inv_many(den, t), t)
    # expand the Newton form into monomial coefficients
    poly = np.zeros(n, dtype=np.int64)
    length = 0
    for k in range(n - 1, -1, -1):
        if length:
            # poly <- poly * (x - xs[k])
            negx = np.full(length, _neg_scalar(int(xs[k]), t), dtype=np.int64)
            scaled = mul_many(poly[:length], negx, t)
            shifted = np.zeros(length + 1, dtype=np.int64)
            shifted[1:] = poly[:length]
            shifted[:length] = add_many(shifted[:length], scaled, t)
            length += 1
            poly[:length] = shifted
        else:
            length = 1
        poly[0] = _add_scalar(int(poly[0]), int(dd[k]), t)
    return poly


def _neg_scalar(a: int, t) -> int:
    if t.p == 2:
        return a
    out, mult = 0, 1
    while a:
        out += ((-a) % t.p) * mult
        a //= t.p
        mult *= t.p
    return out


def _add_scalar(a: int, b: int, t) -> int:
    if t.p == 2:
        return a ^ b
    out, mult = 0, 1
    while a or b:
        out += ((a + b) % t.p) * mult
        a //= t.p
        b //= t.p
        mult *= t.p
    return out
