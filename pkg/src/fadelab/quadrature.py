"""Quadrature helpers on the spectral interval [-1/2, 1/2].

Closed-form densities go through adaptive quadrature with declared
breakpoints; tabulated densities are piecewise linear, so their mass,
squared integral, log integrals and Fourier coefficients all have exact
per-interval expressions which are used instead of sampling.
"""

from __future__ import annotations

import numpy as np
import scipy.integrate

from .errors import QuadratureFailure

HALF = 0.5

#: default absolute tolerance for adaptive quadrature
DEFAULT_TOL = 1e-10


def quad_interval(fn, breakpoints=(), tol: float = DEFAULT_TOL) -> float:
    """Integrate ``fn`` over [-1/2, 1/2] with optional interior breakpoints."""
    pts = sorted({float(p) for p in breakpoints if -HALF < float(p) < HALF})
    out = scipy.integrate.quad(
        fn, -HALF, HALF,
        points=pts or None,
        limit=max(200, 50 + 20 * len(pts)),
        epsabs=tol, epsrel=1e-11,
        full_output=1,
    )
    value, abserr = out[0], out[1]
    if len(out) > 3 and abserr > max(1e-6, 1e-8 * abs(value)):
        raise QuadratureFailure(f"quadrature did not converge: {out[3]}")
    return value


def pl_mass(grid: np.ndarray, vals: np.ndarray) -> float:
    """Exact integral of the piecewise-linear interpolant."""
    return float(np.trapezoid(vals, grid))


def pl_square_integral(grid: np.ndarray, vals: np.ndarray) -> float:
    """Exact integral of the squared piecewise-linear interpolant."""
    w = np.diff(grid)
    f0, f1 = vals[:-1], vals[1:]
    return float(np.sum(w * (f0 * f0 + f0 * f1 + f1 * f1) / 3.0))


def _log_linear_piece(u0: np.ndarray, u1: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Exact ``\\int_0^w log(u0 + (u1-u0) t/w) dt`` element-wise.

    Endpoints may be zero (the integrable ``u log u`` limit); the caller is
    responsible for rejecting negative values and for intervals that are
    identically zero.
    """
    u0 = np.asarray(u0, dtype=float)
    u1 = np.asarray(u1, dtype=float)
    w = np.asarray(w, dtype=float)
    du = u1 - u0
    scale = np.maximum(np.abs(u0), np.abs(u1))
    flat = np.abs(du) <= 1e-12 * np.maximum(scale, 1e-300)

    out = np.empty_like(w)
    # nearly constant pieces: plain midpoint value
    mid = 0.5 * (u0 + u1)
    with np.errstate(divide="ignore"):
        out[flat] = w[flat] * np.log(mid[flat])

    # sloped pieces: primitive of log is u(log u - 1)
    s = ~flat
    with np.errstate(divide="ignore", invalid="ignore"):
        g1 = np.where(u1[s] > 0.0, u1[s] * (np.log(u1[s]) - 1.0), 0.0)
        g0 = np.where(u0[s] > 0.0, u0[s] * (np.log(u0[s]) - 1.0), 0.0)
    out[s] = w[s] * (g1 - g0) / du[s]
    return out


def pl_log_integral(grid: np.ndarray, vals: np.ndarray) -> float:
    """Exact ``\\int log(f)`` for the piecewise-linear interpolant ``f``.

    Returns ``-inf`` when ``f`` vanishes on an interval of positive length.
    """
    vals = np.asarray(vals, dtype=float)
    if np.any(vals < 0):
        raise QuadratureFailure("negative value under a logarithm")
    u0, u1 = vals[:-1], vals[1:]
    if np.any((u0 <= 0.0) & (u1 <= 0.0)):
        return -np.inf
    return float(np.sum(_log_linear_piece(u0, u1, np.diff(grid))))


def pl_fourier(grid: np.ndarray, vals: np.ndarray, m) -> np.ndarray:
    """Exact Fourier coefficients ``\\int e^{i 2 pi m lam} f(lam) dlam`` of the
    piecewise-linear interpolant, vectorized over integer lags ``m``.
    """
    ms = np.atleast_1d(np.asarray(m))
    x0, x1 = grid[:-1], grid[1:]
    f0, f1 = vals[:-1], vals[1:]
    w = x1 - x0
    slope = (f1 - f0) / w

    out = np.empty(ms.shape, dtype=complex)
    zero = ms == 0
    if np.any(zero):
        out[zero] = np.trapezoid(vals, grid)
    nz = ~zero
    if np.any(nz):
        omega = 2.0 * np.pi * ms[nz].astype(float)
        iw = 1j * omega[:, None]
        e1 = np.exp(iw * x1[None, :])
        e0 = np.exp(iw * x0[None, :])
        term = (f1[None, :] * e1 - f0[None, :] * e0) / iw
        term -= slope[None, :] * (e1 - e0) / (iw * iw)
        out[nz] = term.sum(axis=1)
    if np.isscalar(m):
        return out[0]
    return out


def composite_simpson(fn, a: float, b: float, n: int) -> float:
    """Composite Simpson rule with ``n`` (rounded up to even) subintervals."""
    n = int(n) + (int(n) % 2)
    xs = np.linspace(a, b, n + 1)
    return float(scipy.integrate.simpson(fn(xs), x=xs))
