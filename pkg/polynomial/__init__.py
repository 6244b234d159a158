"""Polynomial package: representation, input language, line restriction, evaluators."""

from .core import (Monomial, Polynomial, PolySystem, bezout_number, differentiate, evaluate,
                   evaluate_system, gradient, jacobian, randomize)
from .parser import format_polynomial, format_system, parse_polynomial, parse_system
from .univariate import UnivariateRoots, effective_degree, restrict_to_line, solve_univariate
from .compiled import AffineRows, BlockSystem, CompiledSystem, compile_system

__all__ = [
    'Monomial', 'Polynomial', 'PolySystem', 'bezout_number', 'differentiate', 'evaluate',
    'evaluate_system', 'gradient', 'jacobian', 'randomize',
    'format_polynomial', 'format_system', 'parse_polynomial', 'parse_system',
    'UnivariateRoots', 'effective_degree', 'restrict_to_line', 'solve_univariate',
    'AffineRows', 'BlockSystem', 'CompiledSystem', 'compile_system',
]
