"""Truncated power-series arithmetic in a formal scale parameter.

Elements are ndarrays with a leading degree axis: ``a[k]`` is the matrix
coefficient of the k-th power of the scale.  Because every series here has
either an invertible or an identity degree-0 part and nilpotent remainder,
products, inverses, exp and log are all exact polynomial operations.

This is the independent oracle behind the scaling tests: instead of fitting
slopes to floating-point residuals, an identity's order can be certified by
computing its series coefficients and checking which degrees vanish.
"""

from __future__ import annotations

from math import factorial

import numpy as np

DEGREES = 7  # coefficients 0..6


def zero(shape=(2, 2), dtype=complex, degrees: int = DEGREES) -> np.ndarray:
    return np.zeros((degrees,) + tuple(shape), dtype=dtype)


def one(shape=(2, 2), dtype=complex, degrees: int = DEGREES) -> np.ndarray:
    out = zero(shape, dtype, degrees)
    out[0] = np.eye(shape[0], dtype=dtype)
    return out


def embed(matrix, degree: int, degrees: int = DEGREES) -> np.ndarray:
    """A single matrix placed at one degree."""
    matrix = np.asarray(matrix)
    out = zero(matrix.shape, matrix.dtype, degrees)
    out[degree] = matrix
    return out


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cauchy product along the degree axis."""
    K = a.shape[0]
    out = np.zeros((K,) + tuple(np.matmul(a[0], b[0]).shape),
                   dtype=np.result_type(a.dtype, b.dtype))
    for k in range(K):
        for i in range(k + 1):
            out[k] = out[k] + a[i] @ b[k - i]
    return out


def mulv(a: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Series matrix times series vector."""
    K = a.shape[0]
    out = np.zeros((K,) + tuple((a[0] @ v[0]).shape),
                   dtype=np.result_type(a.dtype, v.dtype))
    for k in range(K):
        for i in range(k + 1):
            out[k] = out[k] + a[i] @ v[k - i]
    return out


def inv(a: np.ndarray) -> np.ndarray:
    """Inverse of a series with invertible degree-0 part."""
    K = a.shape[0]
    out = np.zeros_like(a)
    a0inv = np.linalg.inv(a[0])
    out[0] = a0inv
    for k in range(1, K):
        s = np.zeros_like(a[0])
        for i in range(1, k + 1):
            s = s + a[i] @ out[k - i]
        out[k] = -a0inv @ s
    return out


def exp(h: np.ndarray) -> np.ndarray:
    """exp of a series with zero degree-0 part (exact: the series is nilpotent)."""
    K = h.shape[0]
    out = one(h.shape[1:], h.dtype, K)
    term = one(h.shape[1:], h.dtype, K)
    for n in range(1, K):
        term = mul(term, h)
        out = out + term / factorial(n)
    return out


def log(g: np.ndarray) -> np.ndarray:
    """log of a series with identity degree-0 part (exact)."""
    K = g.shape[0]
    h = g.copy()
    h[0] = h[0] - np.eye(g.shape[1], dtype=g.dtype)
    out = np.zeros_like(g)
    term = one(g.shape[1:], g.dtype, K)
    for n in range(1, K):
        term = mul(term, h)
        out = out + ((-1) ** (n + 1)) * term / n
    return out


def leading_degree(a: np.ndarray, tol: float = 1e-12) -> int:
    """Smallest degree with a coefficient above tol (len(a) if none)."""
    for k in range(a.shape[0]):
        if np.linalg.norm(a[k]) > tol:
            return k
    return a.shape[0]


def degree_norms(a: np.ndarray):
    return [float(np.linalg.norm(a[k])) for k in range(a.shape[0])]
