"""
Symmetric Eigenvalue Solver

Self-contained dense solver for real symmetric matrices: Householder reduction to
tridiagonal form followed by implicit-shift QL sweeps. Only eigenvalues are computed.
"""

import math
from typing import Literal

import numpy as np

from src.models.errors import ConvergenceError, InvalidSpecError, NotSymmetricError, ShapeError

MAX_QL_SWEEPS = 60
EPS = float(np.finfo(float).eps)

SolverMethod = Literal["householder_ql", "lapack"]


def check_symmetric(matrix, tol: float) -> np.ndarray:
    """Return the matrix as float64, raising ShapeError / NotSymmetricError."""
    a = np.array(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(tuple(a.shape))
    if a.size == 0:
        raise ShapeError(tuple(a.shape))

    scale = max(1.0, float(np.abs(a).max()))
    deviation = float(np.abs(a - a.T).max())
    if deviation > tol * scale:
        raise NotSymmetricError(deviation, tol * scale)
    return a


def householder_tridiagonalize(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Reduce a symmetric matrix to tridiagonal form in place.

    Returns:
        (d, e): diagonal of length n and super-diagonal of length n-1
    """
    n = len(a)
    for k in range(n - 2):
        u = a[k + 1 : n, k].copy()
        u_mag = math.sqrt(float(np.dot(u, u)))
        if u_mag == 0.0:
            continue
        if u[0] < 0.0:
            u_mag = -u_mag
        u[0] += u_mag
        h = float(np.dot(u, u)) / 2.0
        v = np.dot(a[k + 1 : n, k + 1 : n], u) / h
        g = float(np.dot(u, v)) / (2.0 * h)
        v = v - g * u
        a[k + 1 : n, k + 1 : n] -= np.outer(v, u) + np.outer(u, v)
        a[k, k + 1] = -u_mag
    return np.diagonal(a).copy(), np.diagonal(a, 1).copy()


def tridiagonal_ql(d: np.ndarray, e: np.ndarray) -> np.ndarray:
    """
    Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.

    Args:
        d: diagonal (length n)
        e: off-diagonal (length n-1)
    """
    n = len(d)
    d = [float(x) for x in d]
    e = [float(x) for x in e] + [0.0]

    for l in range(n):  # noqa: E741
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= EPS * dd:
                    break
                m += 1
            if m == l:
                break

            sweeps += 1
            if sweeps > MAX_QL_SWEEPS:
                raise ConvergenceError(l, MAX_QL_SWEEPS)

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # Deflate and restart the sweep
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    return np.asarray(d)


def symmetric_eigenvalues(matrix, tol: float = 1e-9, method: SolverMethod = "householder_ql") -> np.ndarray:
    """
    All eigenvalues of a real symmetric matrix, sorted ascending.

    The default method is fully deterministic: the same input gives bit-identical
    output. 'lapack' delegates to numpy.linalg.eigvalsh for throughput.

    Raises:
        ShapeError: non-square input
        NotSymmetricError: asymmetry above tol * max(1, max|m|)
    """
    a = check_symmetric(matrix, tol)

    if method == "lapack":
        return np.sort(np.linalg.eigvalsh(a))
    if method != "householder_ql":
        raise InvalidSpecError(f"unknown solver method {method!r}")

    if len(a) == 1:
        return a[0].copy()
    d, e = householder_tridiagonalize(a)
    return np.sort(tridiagonal_ql(d, e))
