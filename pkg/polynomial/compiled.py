"""Vectorized evaluators used inside homotopies and Newton iterations."""

from typing import Optional, Sequence

import numpy as np

from errors import DimensionMismatchError
from polynomial.core import PolySystem, monomial_partials, monomial_values


class CompiledSystem:
    """A PolySystem flattened into one exponent matrix.

    With `randomizer` R the block evaluates R @ f(x). With `offset` the system
    reads x[offset:offset + n_vars] out of a longer vector of length
    `total_vars`; the Jacobian is embedded accordingly.
    """

    def __init__(self, system: PolySystem, randomizer=None, offset: int = 0,
                 total_vars: Optional[int] = None):
        self.system = system
        self.n_local = system.n_vars
        self.offset = offset
        self.n_vars = total_vars if total_vars is not None else offset + system.n_vars
        if offset + self.n_local > self.n_vars:
            raise DimensionMismatchError("embedded block does not fit in the variable vector")
        exps, owner, coeffs = [], [], []
        for i, p in enumerate(system):
            exps.append(p.exponent_matrix)
            coeffs.append(p.coefficient_vector)
            owner.extend([i] * len(p.monomials))
        m = len(system)
        self.exponents = np.vstack(exps) if exps else np.zeros((0, self.n_local), dtype=np.int64)
        coeffs = np.concatenate(coeffs) if coeffs else np.zeros(0, dtype=np.complex128)
        # row i of `gather` carries the coefficients of f_i
        gather = np.zeros((m, coeffs.size), dtype=np.complex128)
        gather[np.asarray(owner, dtype=np.int64), np.arange(coeffs.size)] = coeffs
        if randomizer is not None:
            randomizer = np.atleast_2d(np.asarray(randomizer, dtype=np.complex128))
            if randomizer.shape[1] != m:
                raise DimensionMismatchError(
                    f"randomizer has {randomizer.shape[1]} columns for {m} polynomials")
            gather = randomizer @ gather
        self.gather = gather
        self.n_equations = gather.shape[0]
        # per row: largest coefficient and highest total degree it carries
        present = np.abs(gather) > 0
        term_degrees = self.exponents.sum(axis=1)
        self.row_coeff_norms = np.abs(gather).max(axis=1, initial=0.0)
        self.row_degrees = np.where(present, term_degrees[None, :], 0).max(axis=1, initial=0)

    def _local(self, x: np.ndarray) -> np.ndarray:
        return x[self.offset:self.offset + self.n_local]

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return self.gather @ monomial_values(self.exponents, self._local(x))

    def row_scales(self, x: np.ndarray) -> np.ndarray:
        """max|coefficient| * (1+|x|)^degree for each row."""
        radius = 1 + np.linalg.norm(self._local(x))
        return np.maximum(self.row_coeff_norms, 1e-300) * radius ** self.row_degrees

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        local = self.gather @ monomial_partials(self.exponents, self._local(x))
        if self.offset == 0 and self.n_local == self.n_vars:
            return local
        full = np.zeros((self.n_equations, self.n_vars), dtype=np.complex128)
        full[:, self.offset:self.offset + self.n_local] = local
        return full


class AffineRows:
    """Rows A @ x + b."""

    def __init__(self, matrix, constants=None):
        self.matrix = np.atleast_2d(np.asarray(matrix, dtype=np.complex128))
        rows = self.matrix.shape[0]
        self.constants = (np.zeros(rows, dtype=np.complex128) if constants is None
                          else np.asarray(constants, dtype=np.complex128).reshape(-1))
        if self.constants.size != rows:
            raise DimensionMismatchError("one constant per affine row is required")
        self.n_equations = rows
        self.n_vars = self.matrix.shape[1]

    @classmethod
    def empty(cls, n_vars: int) -> "AffineRows":
        return cls(np.zeros((0, n_vars), dtype=np.complex128))

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ x + self.constants

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        return self.matrix

    def row_scales(self, x: np.ndarray) -> np.ndarray:
        norms = np.abs(np.column_stack([self.matrix, self.constants])).max(axis=1, initial=0.0)
        return np.maximum(norms, 1e-300) * (1 + np.linalg.norm(x))

    def embed(self, offset: int, total_vars: int) -> "AffineRows":
        """Same rows acting on x[offset:offset + n_vars] of a longer vector."""
        wide = np.zeros((self.n_equations, total_vars), dtype=np.complex128)
        wide[:, offset:offset + self.n_vars] = self.matrix
        return AffineRows(wide, self.constants)

    def stack(self, other: "AffineRows") -> "AffineRows":
        return AffineRows(np.vstack([self.matrix, other.matrix]),
                          np.concatenate([self.constants, other.constants]))

    def __len__(self) -> int:
        return self.n_equations


class BlockSystem:
    """Vertical stack of blocks sharing one variable vector."""

    def __init__(self, blocks: Sequence, n_vars: int):
        for block in blocks:
            if block.n_vars != n_vars:
                raise DimensionMismatchError(f"block in {block.n_vars} variables, expected {n_vars}")
        self.blocks = [b for b in blocks if b.n_equations]
        self.n_vars = n_vars
        self.n_equations = sum(b.n_equations for b in self.blocks)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        if not self.blocks:
            return np.zeros(0, dtype=np.complex128)
        return np.concatenate([b.evaluate(x) for b in self.blocks])

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        if not self.blocks:
            return np.zeros((0, self.n_vars), dtype=np.complex128)
        return np.vstack([b.jacobian(x) for b in self.blocks])

    def row_scales(self, x: np.ndarray) -> np.ndarray:
        if not self.blocks:
            return np.zeros(0)
        return np.concatenate([b.row_scales(x) for b in self.blocks])

    def is_square(self) -> bool:
        return self.n_equations == self.n_vars


def compile_system(system: PolySystem, randomizer=None, offset: int = 0,
                   total_vars: Optional[int] = None) -> CompiledSystem:
    return CompiledSystem(system, randomizer, offset, total_vars)
