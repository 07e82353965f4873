"""Bilinear forms, symplectic Poisson algebras, quadratic pre-Poisson algebras,
phase spaces and Manin triples.

A form is stored as its Gram matrix ``W`` with ``W[a, b] = w(e_a, e_b)``.
On a space ``P + P*`` the basis is ``(e_1..e_n, f_1..f_n)`` with ``f_i = e_i*``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebras import (
    CheckReport,
    PoissonAlgebra,
    PrePoissonAlgebra,
    Violation,
    compare,
    linear_map,
)
from .errors import DimensionMismatch, NotSymplectic
from .exact_core import common_integer_scale, contract, determinant, freeze, invert_matrix, normalize, qarray, zeros
from .representations import PoissonRep, semidirect_poisson, starred_multiplications


@dataclass(frozen=True)
class SplitDecoration:
    """First ``dim_p`` basis vectors span P, the remaining ``dim_q`` span P'."""

    dim_p: int
    dim_q: int

    @property
    def dim(self) -> int:
        return self.dim_p + self.dim_q

    def blocks(self) -> tuple[slice, slice]:
        return slice(0, self.dim_p), slice(self.dim_p, self.dim)


def bilinear_form(data, dim: int | None = None) -> np.ndarray:
    w = qarray(data)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise DimensionMismatch(f"bilinear form must be square, got shape {w.shape}")
    if dim is not None and w.shape[0] != dim:
        raise DimensionMismatch(f"form has dim {w.shape[0]}, expected {dim}")
    return w


def standard_omega(n: int) -> np.ndarray:
    """w(x + xi, y + eta) = <xi, y> - <eta, x> on P + P*."""
    w = np.empty((2 * n, 2 * n), dtype=object)
    w.fill(Fraction(0))
    for i in range(n):
        w[i, n + i] = Fraction(-1)
        w[n + i, i] = Fraction(1)
    return freeze(w)


def evaluate(w: np.ndarray, u, v) -> Fraction:
    return Fraction(np.asarray(u, dtype=object) @ w @ np.asarray(v, dtype=object))


def is_skew(w, first_only: bool = False) -> CheckReport:
    w = bilinear_form(w)
    n = w.shape[0]
    diag = np.array([w[i, i] for i in range(n)], dtype=object)
    rep = compare("form-alternating", diag, zeros(n), 1, first_only)
    return rep + compare("form-skew", w, normalize(-w.T), 2, first_only)


def is_nondegenerate(w) -> CheckReport:
    det = determinant(bilinear_form(w))
    if det != 0:
        return CheckReport()
    return CheckReport((Violation("form-nondegenerate", (), (det,), ()),))


def _form_report(w) -> CheckReport:
    return is_skew(w) + is_nondegenerate(w)


def _cyclic_sum(t: np.ndarray) -> np.ndarray:
    return normalize(t + np.einsum("jki->ijk", t) + np.einsum("kij->ijk", t))


def _pair_product(c: np.ndarray, w: np.ndarray) -> np.ndarray:
    """w(e_i . e_j, e_k) as an (n, n, n) array."""
    return contract("ijm,mk->ijk", c, w)


def is_symplectic_poisson(p: PoissonAlgebra, w, first_only: bool = False) -> CheckReport:
    w = bilinear_form(w, p.dim)
    rep = _form_report(w)
    zero = zeros((p.dim,) * 3)
    rep += compare("symplectic-bracket", _cyclic_sum(_pair_product(p.bracket, w)), zero, 3, first_only)
    rep += compare("symplectic-dot", _cyclic_sum(_pair_product(p.dot, w)), zero, 3, first_only)
    return rep


def compatible_pre_poisson(p: PoissonAlgebra, w) -> PrePoissonAlgebra:
    """Solve w(x*y, z) = w(y, x.z) and w(x o y, z) = -w(y, {x, z})."""
    w = bilinear_form(w, p.dim)
    rep = is_symplectic_poisson(p, w)
    if not rep:
        raise NotSymplectic("form is not a symplectic structure on the Poisson algebra", rep)
    # coefficient vector s of x*y satisfies W^T s = g with g_k = w(y, x.e_k)
    solve_t = invert_matrix(w.T)
    g_star = contract("jm,ikm->ijk", w, p.dot)
    g_circ = normalize(-contract("jm,ikm->ijk", w, p.bracket))
    star = contract("ijk,lk->ijl", g_star, solve_t)
    circ = contract("ijk,lk->ijl", g_circ, solve_t)
    return PrePoissonAlgebra(star, circ)


def _quadratic_sides(s, b, w, ein=contract):
    # w(x.y, z) against w(y, x.z) indexed (x, y, z): sum_m W[y, m] c[x, z, m]
    right = lambda c: ein("jm,ikm->ijk", w, c)
    left = lambda c: ein("ijm,mk->ijk", c, w)
    return (("quadratic-star", left(s), right(s) + right(s.transpose(1, 0, 2))),
            ("quadratic-circ", left(b), -right(b) + right(b.transpose(1, 0, 2))))


def _quadratic_holds(p: PrePoissonAlgebra, w: np.ndarray) -> bool:
    """Integer screen: both identities are linear in the tables and in w."""
    s, b = (a.astype(object) for a in common_integer_scale(p.star, p.circ))
    iw = common_integer_scale(w)[0].astype(object)
    ein = lambda sub, *ops: np.einsum(sub, *ops, optimize=False)
    return all(not np.any(lhs != rhs) for _, lhs, rhs in _quadratic_sides(s, b, iw, ein))


def is_quadratic_pre_poisson(p: PrePoissonAlgebra, w, first_only: bool = False) -> CheckReport:
    w = bilinear_form(w, p.dim)
    rep = _form_report(w)
    if _quadratic_holds(p, w):
        return rep
    (_, ws, rs), (_, wb, rb) = _quadratic_sides(p.star, p.circ, w)
    rep += compare("quadratic-star", ws, normalize(rs), 3, first_only)
    rep += compare("quadratic-circ", wb, normalize(rb), 3, first_only)
    if rep:
        # consequences that must follow from the two invariance identities
        rep += compare("quadratic-derived-star", ws, np.einsum("kji->ijk", ws), 3, first_only)
        rep += compare("quadratic-derived-circ", wb, normalize(-np.einsum("kji->ijk", wb)),
                       3, first_only)
    return rep


def _closure_report(tables: dict[str, np.ndarray], split: SplitDecoration,
                    first_only: bool) -> CheckReport:
    """Products of two block vectors must stay inside the block."""
    rep = CheckReport()
    bp, bq = split.blocks()
    for label, inside, outside in (("P", bp, bq), ("Q", bq, bp)):
        for name, c in tables.items():
            for i in range(inside.start, inside.stop):
                for j in range(inside.start, inside.stop):
                    if np.all(c[i, j, outside] == 0):
                        continue
                    got = tuple(Fraction(v) for v in c[i, j])
                    want = tuple(Fraction(0) if outside.start <= k < outside.stop else got[k]
                                 for k in range(len(got)))
                    rep += CheckReport((Violation(f"subalgebra-{label}-{name}",
                                                  (i + 1, j + 1), got, want),))
                    if first_only:
                        return rep
    return rep


def _check_split(dim: int, split: SplitDecoration) -> None:
    if split.dim != dim:
        raise DimensionMismatch(f"split {split.dim_p}+{split.dim_q} does not match dim {dim}")


def is_phase_space(big: PoissonAlgebra, split: SplitDecoration, w,
                   first_only: bool = False) -> CheckReport:
    _check_split(big.dim, split)
    w = bilinear_form(w, big.dim)
    rep = CheckReport()
    if split.dim_p == split.dim_q:
        rep += compare("standard-form", w, standard_omega(split.dim_p), 2, first_only)
    else:
        rep += CheckReport((Violation("standard-form", (split.dim_p, split.dim_q), (), ()),))
    rep += is_symplectic_poisson(big, w, first_only)
    return rep + _closure_report({"dot": big.dot, "bracket": big.bracket}, split, first_only)


def is_manin_triple(p: PrePoissonAlgebra, split: SplitDecoration, w,
                    first_only: bool = False) -> CheckReport:
    _check_split(p.dim, split)
    w = bilinear_form(w, p.dim)
    rep = is_quadratic_pre_poisson(p, w, first_only)
    rep += _closure_report({"star": p.star, "circ": p.circ}, split, first_only)
    bp, bq = split.blocks()
    for label, blk in (("P", bp), ("Q", bq)):
        sub = w[blk, blk]
        rep += compare(f"isotropic-{label}", sub, zeros(sub.shape), 2, first_only)
    return rep


def phase_space(p: PrePoissonAlgebra) -> tuple[PoissonAlgebra, np.ndarray]:
    """Semidirect product of the sub-adjacent Poisson algebra with P*.

    P* carries the representation x -> (L*_circ(x), -L*_star(x)), and the
    form is the standard pairing form.
    """
    from .algebras import sub_adjacent

    pc = sub_adjacent(p)
    lstar, _ = starred_multiplications(p.star)
    lcirc, _ = starred_multiplications(p.circ)
    rep = PoissonRep(pc, lcirc, normalize(-lstar))
    return semidirect_poisson(pc, rep), standard_omega(p.dim)


def restrict(p: PrePoissonAlgebra | PoissonAlgebra, block: slice, check: bool = True):
    """Restriction of both products to a coordinate block (assumed closed)."""
    tables = [c[block, block, block] for c in p.products]
    return type(p)(*tables, check=check)


def pullback_form(w: np.ndarray, phi) -> np.ndarray:
    m = linear_map(phi)
    return normalize(m.T @ w @ m)
