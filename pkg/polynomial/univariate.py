"""Restriction of polynomials to complex lines and univariate root finding."""

import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

import config
from errors import DimensionMismatchError, ZeroPolynomialError
from polynomial.core import Polynomial

logger = logging.getLogger(__name__)


def restrict_to_line(p: Polynomial, base, direction) -> np.ndarray:
    """Coefficients c_0..c_d (lowest first) of s -> p(base + s*direction), d = deg p."""
    base = np.asarray(base, dtype=np.complex128).reshape(-1)
    direction = np.asarray(direction, dtype=np.complex128).reshape(-1)
    if base.size != p.n_vars or direction.size != p.n_vars:
        raise DimensionMismatchError(f"line in C^{base.size} for a polynomial in {p.n_vars} variables")
    d = p.degree
    coeffs = np.zeros(d + 1, dtype=np.complex128)
    powers = [{0: np.ones(1, dtype=np.complex128)} for _ in range(p.n_vars)]
    for m in p.monomials:
        acc = np.array([m.coefficient], dtype=np.complex128)
        for j, e in enumerate(m.exponents):
            if not e:
                continue
            if e not in powers[j]:
                powers[j][e] = npoly.polypow([base[j], direction[j]], e)
            acc = npoly.polymul(acc, powers[j][e])
        coeffs[:acc.size] += acc
    return coeffs


@dataclass(frozen=True)
class UnivariateRoots:
    roots: np.ndarray
    degree: int
    iterations: int = 0
    converged: bool = True

    @property
    def no_roots(self) -> bool:
        return self.degree == 0


def effective_degree(coeffs, tol: float = None) -> int:
    tol = config.LEADING_COEFF_TOL if tol is None else tol
    magnitudes = np.abs(np.asarray(coeffs, dtype=np.complex128))
    scale = magnitudes.max(initial=0.0)
    if scale == 0:
        return -1
    significant = np.nonzero(magnitudes >= tol * scale)[0]
    return int(significant[-1])


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    d = c.size - 1
    ratios = np.abs(c[:-1] / c[-1])
    radius = max((ratios[k] ** (1.0 / (d - k)) for k in range(d) if ratios[k] > 0), default=0.0)
    angles = 2 * np.pi * np.arange(d) / d + 0.4
    return radius * np.exp(1j * angles)


def solve_univariate(coeffs, max_iters: int = None, tol: float = None,
                     leading_tol: float = None) -> UnivariateRoots:
    """All roots of c_0 + c_1 s + ... + c_d s^d by Aberth-Ehrlich iteration.

    Trailing coefficients below leading_tol * max|c_k| are dropped first, so the
    result reports the effective degree. Multiple roots are returned repeatedly.
    """
    max_iters = config.ABERTH_MAX_ITERS if max_iters is None else max_iters
    tol = config.ABERTH_TOL if tol is None else tol
    c = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
    d = effective_degree(c, leading_tol)
    if d < 0:
        raise ZeroPolynomialError("cannot solve the zero polynomial")
    c = c[:d + 1]
    if d == 0:
        return UnivariateRoots(np.zeros(0, dtype=np.complex128), 0)
    if d == 1:
        return UnivariateRoots(np.array([-c[0] / c[1]]), 1)

    dc = npoly.polyder(c)
    z = _initial_guesses(c)
    if not np.any(z):
        return UnivariateRoots(z, d)
    done = np.zeros(d, dtype=bool)
    iteration = 0
    with np.errstate(divide="ignore", invalid="ignore"):
        for iteration in range(1, max_iters + 1):
            p = npoly.polyval(z, c)
            dp = npoly.polyval(z, dc)
            ratio = np.divide(p, dp, out=np.zeros_like(p), where=dp != 0)
            gaps = z[:, None] - z[None, :]
            np.fill_diagonal(gaps, np.inf)
            gaps[gaps == 0] = np.finfo(float).tiny
            repulsion = (1.0 / gaps).sum(axis=1)
            step = ratio / (1.0 - ratio * repulsion)
            step[~np.isfinite(step) | done] = 0
            z = z - step
            done |= np.abs(step) < tol * (1 + np.abs(z))
            if done.all():
                break
    converged = bool(done.all())
    if not converged:
        logger.debug("Aberth iteration stopped after %d sweeps with %d roots unsettled",
                     iteration, int((~done).sum()))
    return UnivariateRoots(z, d, iteration, converged)
