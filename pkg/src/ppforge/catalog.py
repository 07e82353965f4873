"""Small worked instances used by the tests, the acceptance suite and the CLI.

Base algebras are given by their nonzero products (1-based).  Doubles use the
block basis ``e_1..e_n, f_1..f_n`` with ``f_i = e_i*``.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from .algebras import (
    PoissonAlgebra,
    PrePoissonAlgebra,
    left_mult,
    pre_poisson_report,
    sub_adjacent,
    table_from_products,
)
from .bialgebra import PrePoissonBialgebra, double_of_bialgebra, dual_bialgebra, zero_bialgebra
from .exact_core import identity, zeros
from .representations import PoissonRep, semidirect_poisson
from .rota_baxter import QuadraticRBPrePoisson, quadratic_rb_from_factorizable
from .yang_baxter import RMatrix, canonical_double_r, coboundary_bialgebra

_BASE = {
    "zero1": (1, {}, {}),
    "zero2": (2, {}, {}),
    "z2": (2, {(1, 1): {2: 1}}, {}),
    "pl2": (2, {}, {(1, 2): {2: 1}}),
    "n3": (3, {(1, 1): {2: 1}}, {(1, 1): {3: 1}}),
    "deep1": (3, {(2, 1): {3: 2}}, {(1, 1): {2: -2, 3: 2}}),
    "deep2": (3, {(2, 3): {1: 2}}, {(2, 2): {1: 2, 2: -1}}),
    "deep3": (3, {(1, 2): {3: 1}}, {(2, 1): {3: 2}, (2, 2): {1: 2, 3: 1}}),
}

ALGEBRAS = tuple(_BASE)
# doubles of the three-dimensional algebras are 6-dimensional; the
# bialgebra checks on their own doubles are kept to the smaller ones
SMALL_ALGEBRAS = ("zero1", "zero2", "z2", "pl2")

# r-matrices on base algebras: name -> (algebra, r)
_R_INSTANCES = {
    "z2-triangular": ("z2", [[0, 1], [1, 0]]),
    "pl2-triangular": ("pl2", [[1, 0], [0, 0]]),
    "n3-quasi": ("n3", [[0, 0, 0], [0, 0, 0], [0, 1, 0]]),
    "deep1-triangular": ("deep1", [[0, 0, 0], [0, 0, -1], [0, -1, 1]]),
    "deep3-triangular": ("deep3", [[-1, 0, 0], [0, 0, 1], [0, 1, -1]]),
    "zero2-factorizable": ("zero2", [[0, 0], [1, 0]]),
}


@lru_cache(maxsize=None)
def algebra(name: str) -> PrePoissonAlgebra:
    dim, star, circ = _BASE[name]
    return PrePoissonAlgebra(table_from_products(dim, star), table_from_products(dim, circ))


def poisson(name: str) -> PoissonAlgebra:
    return sub_adjacent(algebra(name))


@lru_cache(maxsize=None)
def poisson_rb0_pairs() -> dict[str, tuple[PoissonAlgebra, np.ndarray]]:
    """Poisson algebras with weight-zero Rota-Baxter operators.

    Besides B = 0 and a nilpotent example, each base algebra A gives the
    semidirect product of its sub-adjacent algebra with A along left
    multiplications, where (x, a) -> (a, 0) is Rota-Baxter of weight zero.
    """
    dot = table_from_products(2, {(1, 1): {2: 2}})
    pairs = {
        "nilpotent": (PoissonAlgebra(dot, zeros((2, 2, 2))), np.array([[0, 0], [1, 0]], dtype=object)),
        "z2-zero-operator": (poisson("z2"), zeros((2, 2))),
    }
    for name in ALGEBRAS:
        p = algebra(name)
        pc = sub_adjacent(p)
        big = semidirect_poisson(pc, PoissonRep(pc, left_mult(p.circ), left_mult(p.star)))
        n = p.dim
        B = np.zeros((2 * n, 2 * n), dtype=object)
        B[:n, n:] = identity(n)
        pairs[f"{name}-shift"] = (big, B)
    return pairs


BIALGEBRAS = (tuple(f"zero-{n}" for n in ALGEBRAS) + tuple(f"dual-{n}" for n in ALGEBRAS)
              + tuple(f"double-{n}" for n in SMALL_ALGEBRAS) + tuple(_R_INSTANCES))


@lru_cache(maxsize=None)
def bialgebra(name: str) -> PrePoissonBialgebra:
    """Zero bialgebras, their duals, and coboundary bialgebras of r-matrices."""
    kind, _, base = name.partition("-")
    if name in _R_INSTANCES:
        return coboundary_bialgebra(r_instance(name))
    if kind == "zero" and base in _BASE:
        return zero_bialgebra(algebra(base))
    if kind == "dual" and base in _BASE:
        return dual_bialgebra(zero_bialgebra(algebra(base)))
    if kind == "double" and base in _BASE:
        return coboundary_bialgebra(double_r(base))
    raise KeyError(name)


def bialgebras() -> dict[str, PrePoissonBialgebra]:
    return {name: bialgebra(name) for name in BIALGEBRAS}


@lru_cache(maxsize=None)
def double(name: str):
    """(algebra, standard form, split) for the double of the zero bialgebra on ``name``."""
    return double_of_bialgebra(zero_bialgebra(algebra(name)))


@lru_cache(maxsize=None)
def double_r(name: str) -> RMatrix:
    d, _, _ = double(name)
    return RMatrix(d, canonical_double_r(algebra(name).dim))


R_INSTANCES = tuple(_R_INSTANCES)


@lru_cache(maxsize=None)
def r_instance(name: str) -> RMatrix:
    base, r = _R_INSTANCES[name]
    return RMatrix(algebra(base), np.array(r, dtype=object))


def quasi_triangular() -> dict[str, RMatrix]:
    out = {f"double-{name}": double_r(name) for name in ALGEBRAS}
    out.update({name: r_instance(name) for name in _R_INSTANCES})
    return out


def factorizable() -> dict[str, RMatrix]:
    out = {f"double-{name}": double_r(name) for name in ALGEBRAS}
    out["zero2-factorizable"] = r_instance("zero2-factorizable")
    return out


def rb_bundle(name: str, weight=1) -> QuadraticRBPrePoisson:
    """The quadratic Rota-Baxter structure induced by the canonical r on a double."""
    return quadratic_rb_from_factorizable(double_r(name), weight)


def random_table(rng: random.Random, dim: int, entries: int, values=(-2, -1, 1, 2)) -> np.ndarray:
    t = np.zeros((dim,) * 3, dtype=object)
    for _ in range(entries):
        i, j, k = (rng.randrange(dim) for _ in range(3))
        t[i, j, k] = rng.choice(values)
    return t


def random_pre_poisson(seed: int, count: int, max_dim: int = 3, max_entries: int = 3,
                       ) -> list[PrePoissonAlgebra]:
    """``count`` valid pre-Poisson algebras from sparse random tables.

    Candidates failing the axioms are discarded; the stream is reproducible
    for a given seed.
    """
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        dim = rng.randint(1, max_dim)
        star = random_table(rng, dim, rng.randint(0, max_entries))
        circ = random_table(rng, dim, rng.randint(0, max_entries))
        if pre_poisson_report(star, circ, first_only=True):
            found.append(PrePoissonAlgebra(star, circ, check=False))
    return found
