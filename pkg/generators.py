"""Built-in polynomial systems for experiments and tests."""

import itertools
from typing import Dict, List, Sequence, Union

from errors import InputError, UnknownGeneratorError
from linalg import Rng, random_matrix, random_vector
from polynomial import Polynomial, PolySystem, format_system, parse_system

ILLUSTRATIVE_TEXT = """\
# sphere, four lines, a twisted cubic and the point (0.5, 0.5, 0.5)
vars: x, y, z;
(y - x^2)*(x^2 + y^2 + z^2 - 1)*(x - 0.5);
(z - x^3)*(x^2 + y^2 + z^2 - 1)*(y - 0.5);
(y - x^2)*(z - x^3)*(x^2 + y^2 + z^2 - 1)*(z - 0.5);
"""


def illustrative_system(**_) -> PolySystem:
    return parse_system(ILLUSTRATIVE_TEXT)


def adjacent_minors(rows: int = 2, cols: int = 9, **_) -> PolySystem:
    """All adjacent 2x2 minors of a general rows x cols matrix."""
    if rows < 2 or cols < 2:
        raise ValueError("adjacent minors need at least a 2 x 2 matrix")
    names = tuple(f"x{r + 1}_{c + 1}" for r in range(rows) for c in range(cols))
    n = len(names)

    def entry(r, c):
        return Polynomial.variable(r * cols + c, n)

    minors = [entry(r, c) * entry(r + 1, c + 1) - entry(r, c + 1) * entry(r + 1, c)
              for r in range(rows - 1) for c in range(cols - 1)]
    return PolySystem(tuple(minors), n, names)


def eigenvalue_problem(size: int = 6, seed: int = 0, hyperplane: bool = False, **_) -> PolySystem:
    """lam*x - A*x = 0 for a random complex A; optionally one random linear equation more."""
    if size < 1:
        raise ValueError("eigenvalue problem size must be positive")
    rng = Rng(seed)
    A = random_matrix(rng, size, size)
    n = size + 1
    names = tuple(f"x{i + 1}" for i in range(size)) + ("lam",)
    x = [Polynomial.variable(i, n) for i in range(size)]
    lam = Polynomial.variable(size, n)
    polys = []
    for i in range(size):
        row = Polynomial.zero(n)
        for j in range(size):
            row = row + x[j] * complex(A[i, j])
        polys.append(lam * x[i] - row)
    if hyperplane:
        polys.append(Polynomial.linear(random_vector(rng, n), complex(random_vector(rng, 1)[0])))
    return PolySystem(tuple(polys), n, names)


def _dense(degree: int, n_vars: int, rng: Rng) -> Polynomial:
    exponents = [e for e in itertools.product(range(degree + 1), repeat=n_vars) if sum(e) <= degree]
    coefficients = random_vector(rng, len(exponents))
    return Polynomial.from_terms(dict(zip(exponents, coefficients)), n_vars)


def random_dense(n_equations: int = 2, n_vars: int = 2, degrees: Union[int, Sequence[int]] = 2,
                 seed: int = 0, **_) -> PolySystem:
    """Dense polynomials with every monomial up to the given degree."""
    if isinstance(degrees, int):
        degrees = [degrees] * n_equations
    degrees = list(degrees)
    if len(degrees) != n_equations or n_vars < 1 or any(d < 1 for d in degrees):
        raise ValueError("randomdense needs one positive degree per equation and at least one variable")
    rng = Rng(seed)
    return PolySystem(tuple(_dense(d, n_vars, rng) for d in degrees), n_vars)


GENERATORS = [
    {
        "name": "illustrative",
        "builder": illustrative_system,
        "description": "three equations in x, y, z: sphere, four lines, twisted cubic, one point",
    },
    {
        "name": "minors",
        "builder": adjacent_minors,
        "description": "adjacent 2x2 minors of a general rows x cols matrix",
    },
    {
        "name": "eigen",
        "builder": eigenvalue_problem,
        "description": "lam*x - A*x for a random complex size x size matrix A",
    },
    {
        "name": "randomdense",
        "builder": random_dense,
        "description": "random dense system for comparison runs",
    },
]


def get_all_generators() -> List[Dict]:
    """Return all generator entries."""
    return GENERATORS


def get_generator(name: str) -> Dict:
    for entry in GENERATORS:
        if entry["name"] == name:
            return entry
    known = ", ".join(e["name"] for e in GENERATORS)
    raise UnknownGeneratorError(f"unknown generator {name!r} (known: {known})")


def generate(name: str, **params) -> PolySystem:
    entry = get_generator(name)
    try:
        return entry["builder"](**params)
    except ValueError as e:
        raise InputError(f"{name}: {e}") from e


def generate_text(name: str, **params) -> str:
    system = generate(name, **params)
    described = ", ".join(f"{k}={v}" for k, v in sorted(params.items()) if v is not None)
    return format_system(system, f"{name} {described}".strip())
