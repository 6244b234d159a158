"""Sparse multivariate polynomials over the complex numbers."""

import math
from dataclasses import dataclass, field
from functools import cached_property
from numbers import Number
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np

from errors import DimensionMismatchError

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class Monomial:
    coefficient: complex
    exponents: Exponents

    def __post_init__(self):
        c = complex(self.coefficient)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError(f"non-finite coefficient {c!r}")
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents!r}")
        object.__setattr__(self, "coefficient", c)
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))

    @property
    def degree(self) -> int:
        return sum(self.exponents)


def _grlex_key(exponents: Exponents):
    # graded lexicographic, highest first
    return (-sum(exponents), tuple(-e for e in exponents))


def _as_complex(value) -> complex:
    if isinstance(value, Polynomial):
        raise TypeError("expected a scalar")
    return complex(value)


@dataclass(frozen=True)
class Polynomial:
    """Canonical sparse polynomial: merged exponents, no zero terms, grlex order."""

    monomials: Tuple[Monomial, ...]
    n_vars: int

    def __post_init__(self):
        if self.n_vars < 1:
            raise ValueError("a polynomial needs at least one variable")
        for m in self.monomials:
            if len(m.exponents) != self.n_vars:
                raise DimensionMismatchError(
                    f"monomial has {len(m.exponents)} exponents, expected {self.n_vars}")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Mapping[Exponents, complex], n_vars: int) -> "Polynomial":
        merged: Dict[Exponents, complex] = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            merged[exps] = merged.get(exps, 0j) + complex(coeff)
        return cls._canonical(merged, n_vars)

    @classmethod
    def _canonical(cls, merged: Dict[Exponents, complex], n_vars: int) -> "Polynomial":
        monomials = tuple(Monomial(c, e) for e, c in sorted(merged.items(), key=lambda kv: _grlex_key(kv[0]))
                          if c != 0)
        return cls(monomials, n_vars)

    @classmethod
    def zero(cls, n_vars: int) -> "Polynomial":
        return cls((), n_vars)

    @classmethod
    def constant(cls, value, n_vars: int) -> "Polynomial":
        return cls.from_terms({(0,) * n_vars: value}, n_vars)

    @classmethod
    def variable(cls, index: int, n_vars: int) -> "Polynomial":
        if not 0 <= index < n_vars:
            raise IndexError(f"variable index {index} out of range for {n_vars} variables")
        exps = [0] * n_vars
        exps[index] = 1
        return cls.from_terms({tuple(exps): 1.0}, n_vars)

    @classmethod
    def linear(cls, normal: Sequence[complex], constant: complex = 0j) -> "Polynomial":
        n = len(normal)
        terms: Dict[Exponents, complex] = {(0,) * n: constant}
        for i, a in enumerate(normal):
            exps = [0] * n
            exps[i] = 1
            terms[tuple(exps)] = a
        return cls.from_terms(terms, n)

    # -- properties ---------------------------------------------------------

    def terms(self) -> Dict[Exponents, complex]:
        return {m.exponents: m.coefficient for m in self.monomials}

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.monomials), default=0)

    def is_zero(self) -> bool:
        return not self.monomials

    def is_constant(self) -> bool:
        return all(m.degree == 0 for m in self.monomials)

    @property
    def coeff_norm(self) -> float:
        """Largest coefficient magnitude."""
        return max((abs(m.coefficient) for m in self.monomials), default=0.0)

    @cached_property
    def exponent_matrix(self) -> np.ndarray:
        if not self.monomials:
            return np.zeros((0, self.n_vars), dtype=np.int64)
        return np.array([m.exponents for m in self.monomials], dtype=np.int64)

    @cached_property
    def coefficient_vector(self) -> np.ndarray:
        return np.array([m.coefficient for m in self.monomials], dtype=np.complex128)

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if other.n_vars != self.n_vars:
            raise DimensionMismatchError(f"cannot combine polynomials in {self.n_vars} and {other.n_vars} variables")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_compatible(other)
            return other
        if isinstance(other, Number):
            return Polynomial.constant(other, self.n_vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        merged = self.terms()
        for e, c in other.terms().items():
            merged[e] = merged.get(e, 0j) + c
        return Polynomial._canonical(merged, self.n_vars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(Monomial(-m.coefficient, m.exponents) for m in self.monomials), self.n_vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        merged: Dict[Exponents, complex] = {}
        for a in self.monomials:
            for b in other.monomials:
                e = tuple(x + y for x, y in zip(a.exponents, b.exponents))
                merged[e] = merged.get(e, 0j) + a.coefficient * b.coefficient
        return Polynomial._canonical(merged, self.n_vars)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.constant(1.0, self.n_vars)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def scale(self, factor) -> "Polynomial":
        factor = _as_complex(factor)
        return Polynomial._canonical({m.exponents: m.coefficient * factor for m in self.monomials}, self.n_vars)

    def __call__(self, x) -> complex:
        return evaluate(self, x)


@dataclass(frozen=True)
class PolySystem:
    polynomials: Tuple[Polynomial, ...]
    n_vars: int
    names: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "polynomials", tuple(self.polynomials))
        for p in self.polynomials:
            if p.n_vars != self.n_vars:
                raise DimensionMismatchError(
                    f"system in {self.n_vars} variables holds a polynomial in {p.n_vars}")
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(self.n_vars)))
        elif len(self.names) != self.n_vars:
            raise DimensionMismatchError("one name per variable is required")

    def __len__(self) -> int:
        return len(self.polynomials)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polynomials)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return PolySystem(self.polynomials[index], self.n_vars, self.names)
        return self.polynomials[index]

    def append(self, p: Polynomial) -> "PolySystem":
        return PolySystem(self.polynomials + (p,), self.n_vars, self.names)

    def with_polynomials(self, polynomials: Iterable[Polynomial]) -> "PolySystem":
        return PolySystem(tuple(polynomials), self.n_vars, self.names)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(p.degree for p in self.polynomials)


def bezout_number(system: PolySystem) -> int:
    return math.prod(system.degrees)


# -- numerical kernels shared with the compiled evaluators --------------------

def power_table(x: np.ndarray, max_degree: int) -> np.ndarray:
    """P[j, e] = x_j ** e for e = 0..max_degree."""
    table = np.ones((x.size, max_degree + 1), dtype=np.complex128)
    if max_degree > 0:
        table[:, 1:] = np.cumprod(np.repeat(x[:, None], max_degree, axis=1), axis=1)
    return table


def monomial_values(exponents: np.ndarray, x: np.ndarray) -> np.ndarray:
    if exponents.shape[0] == 0:
        return np.zeros(0, dtype=np.complex128)
    table = power_table(x, int(exponents.max(initial=0)))
    cols = np.arange(x.size)[None, :]
    return np.prod(table[cols, exponents], axis=1)


def monomial_partials(exponents: np.ndarray, x: np.ndarray) -> np.ndarray:
    """D[k, j] = d(x**E_k)/dx_j, built from prefix and suffix products."""
    k, n = exponents.shape
    if k == 0:
        return np.zeros((0, n), dtype=np.complex128)
    table = power_table(x, int(exponents.max(initial=0)))
    cols = np.arange(n)[None, :]
    factors = table[cols, exponents]
    lowered = table[cols, np.maximum(exponents - 1, 0)] * exponents
    prefix = np.ones_like(factors)
    suffix = np.ones_like(factors)
    if n > 1:
        prefix[:, 1:] = np.cumprod(factors[:, :-1], axis=1)
        suffix[:, :-1] = np.cumprod(factors[:, :0:-1], axis=1)[:, ::-1]
    return prefix * lowered * suffix


def _as_point(x, n_vars: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    if x.size != n_vars:
        raise DimensionMismatchError(f"point has {x.size} coordinates, expected {n_vars}")
    return x


# -- operations ---------------------------------------------------------------

def evaluate(p: Polynomial, x) -> complex:
    x = _as_point(x, p.n_vars)
    values = p.coefficient_vector * monomial_values(p.exponent_matrix, x)
    total = 0j
    for v in values:  # storage order
        total += v
    return complex(total)


def evaluate_system(system: PolySystem, x) -> np.ndarray:
    x = _as_point(x, system.n_vars)
    return np.array([evaluate(p, x) for p in system], dtype=np.complex128)


def differentiate(p: Polynomial, var_index: int) -> Polynomial:
    if not 0 <= var_index < p.n_vars:
        raise IndexError(f"variable index {var_index} out of range for {p.n_vars} variables")
    terms: Dict[Exponents, complex] = {}
    for m in p.monomials:
        e = m.exponents[var_index]
        if e == 0:
            continue
        lowered = list(m.exponents)
        lowered[var_index] -= 1
        terms[tuple(lowered)] = m.coefficient * e
    return Polynomial.from_terms(terms, p.n_vars)


def gradient(p: Polynomial, x) -> np.ndarray:
    x = _as_point(x, p.n_vars)
    return p.coefficient_vector @ monomial_partials(p.exponent_matrix, x)


def jacobian(system: PolySystem, x) -> np.ndarray:
    x = _as_point(x, system.n_vars)
    if not len(system):
        return np.zeros((0, system.n_vars), dtype=np.complex128)
    return np.vstack([gradient(p, x) for p in system])


def randomize(system: PolySystem, R) -> PolySystem:
    """Row i of the result is sum_j R[i, j] * f_j."""
    R = np.atleast_2d(np.asarray(R, dtype=np.complex128))
    if R.shape[1] != len(system):
        raise DimensionMismatchError(
            f"randomization has {R.shape[1]} columns for {len(system)} polynomials")
    rows = []
    for i in range(R.shape[0]):
        merged: Dict[Exponents, complex] = {}
        for j, f in enumerate(system):
            if R[i, j] == 0:
                continue
            for m in f.monomials:
                merged[m.exponents] = merged.get(m.exponents, 0j) + R[i, j] * m.coefficient
        rows.append(Polynomial._canonical(merged, system.n_vars))
    return system.with_polynomials(rows)
