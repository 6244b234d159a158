"""Dense complex linear algebra: Newton solves, Jacobi singular values, random draws."""

import warnings
from functools import lru_cache
from typing import Tuple

import numpy as np
import scipy.linalg
from scipy.linalg import LinAlgWarning

import config
from errors import DimensionMismatchError, SingularMatrixError

ComplexMatrix = np.ndarray

PIVOT_FLOOR = 1e-300


class Rng:
    """Seeded counter-based (Philox) stream; same seed, same draws."""

    def __init__(self, seed: int = 0):
        if not 0 <= int(seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.seed = int(seed)
        self._generator = np.random.Generator(np.random.Philox(self.seed))

    def normal(self, size=None) -> np.ndarray:
        return self._generator.standard_normal(size)

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        return self._generator.uniform(low, high, size)


def random_matrix(rng: Rng, m: int, n: int) -> ComplexMatrix:
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    return rng.normal((m, n)) + 1j * rng.normal((m, n))


def random_vector(rng: Rng, n: int) -> np.ndarray:
    return random_matrix(rng, 1, n)[0]


def random_unit_complex(rng: Rng) -> complex:
    theta = rng.uniform(0.0, 2 * np.pi)
    return complex(np.cos(theta), np.sin(theta))


def lu_solve(A: ComplexMatrix, b) -> np.ndarray:
    """Solve A x = b with partial-pivoted LU."""
    A = np.asarray(A, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"lu_solve needs a square matrix, got {A.shape}")
    if b.shape[0] != A.shape[0]:
        raise DimensionMismatchError(f"right-hand side of length {b.shape[0]} for a {A.shape} matrix")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A, check_finite=True)
    pivots = np.abs(np.diag(lu))
    if pivots.size and pivots.min() < PIVOT_FLOOR:
        raise SingularMatrixError(f"pivot {pivots.min():.3e} below working precision")
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


@lru_cache(maxsize=64)
def _round_robin(n: int) -> Tuple[Tuple[np.ndarray, np.ndarray], ...]:
    """Rounds of disjoint column pairs covering every pair once (circle method)."""
    players = list(range(n + (n % 2)))
    rounds = []
    for _ in range(len(players) - 1):
        half = len(players) // 2
        pairs = [(players[i], players[-1 - i]) for i in range(half)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return tuple(rounds)


def singular_values(A: ComplexMatrix, tol: float = None, max_sweeps: int = None) -> np.ndarray:
    """Singular values in descending order by one-sided (Hestenes) Jacobi rotations."""
    tol = config.JACOBI_TOL if tol is None else tol
    max_sweeps = config.JACOBI_MAX_SWEEPS if max_sweeps is None else max_sweeps
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or min(A.shape) < 1:
        raise DimensionMismatchError(f"singular_values needs a nonempty matrix, got {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("singular_values: matrix has non-finite entries")
    U = A.conj().T.copy() if A.shape[0] < A.shape[1] else A.copy()
    n = U.shape[1]
    for _ in range(max_sweeps):
        rotated = False
        for P, Q in _round_robin(n):
            up, uq = U[:, P], U[:, Q]
            alpha = np.sum(np.abs(up) ** 2, axis=0)
            beta = np.sum(np.abs(uq) ** 2, axis=0)
            gamma = np.sum(up.conj() * uq, axis=0)
            g = np.abs(gamma)
            active = g > tol * np.sqrt(alpha * beta)
            if not active.any():
                continue
            rotated = True
            P, Q, up, uq = P[active], Q[active], up[:, active], uq[:, active]
            alpha, beta, gamma, g = alpha[active], beta[active], gamma[active], g[active]
            phase = gamma / g
            zeta = (beta - alpha) / (2 * g)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.sqrt(1 + zeta ** 2))
            c = 1 / np.sqrt(1 + t ** 2)
            s = c * t
            uq = uq * phase.conj()
            U[:, P] = c * up - s * uq
            U[:, Q] = s * up + c * uq
        if not rotated:
            break
    sigma = np.sqrt(np.sum(np.abs(U) ** 2, axis=0))
    return np.sort(sigma)[::-1][:min(A.shape)]


def numerical_rank(A: ComplexMatrix, tol_rank: float = None) -> int:
    tol_rank = config.TOL_RANK if tol_rank is None else tol_rank
    if not 0 < tol_rank < 1:
        raise ValueError("tol_rank must lie in (0, 1)")
    sigma = singular_values(A)
    if sigma[0] == 0:
        return 0
    return int(np.count_nonzero(sigma > tol_rank * sigma[0]))


def null_space_vector(A: ComplexMatrix) -> np.ndarray:
    """Unit vector spanning the kernel of a full-rank (n-1) x n matrix."""
    basis = scipy.linalg.null_space(np.asarray(A, dtype=np.complex128))
    if basis.shape[1] != 1:
        raise SingularMatrixError(f"expected a one-dimensional kernel, found dimension {basis.shape[1]}")
    return basis[:, 0]


def least_norm_solution(A: ComplexMatrix, b) -> np.ndarray:
    solution, *_ = np.linalg.lstsq(np.asarray(A, dtype=np.complex128),
                                   np.asarray(b, dtype=np.complex128), rcond=None)
    return solution
