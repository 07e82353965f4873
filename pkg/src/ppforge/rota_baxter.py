"""Rota-Baxter operators of weight lambda and their quadratic/symplectic versions.

Operators are matrices whose column j is the image of ``e_j``.  Forms are
Gram matrices ``W[a, b] = omega(e_a, e_b)``.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from fractions import Fraction

import numpy as np

from .algebras import (
    CheckReport,
    flip,
    PoissonAlgebra,
    PrePoissonAlgebra,
    compare,
    linear_map,
    sub_adjacent,
)
from .bialgebra import (
    Cobracket,
    PrePoissonBialgebra,
    double_of_bialgebra,
    dual_bialgebra,
    is_bialgebra_morphism,
)
from .errors import (
    DimensionMismatch,
    NotFactorizable,
    NotInvertible,
    NotQuadraticRB,
    NotRBSymplectic,
    NotRotaBaxter,
    VerificationError,
    ZeroWeight,
)
from .exact_core import common_integer_scale, contract, identity, invert_matrix, matmul, normalize, qarray, scalar
from .geometry import (
    bilinear_form,
    compatible_pre_poisson,
    is_phase_space,
    is_quadratic_pre_poisson,
    is_symplectic_poisson,
)
from .representations import starred_multiplications
from .yang_baxter import (
    RMatrix,
    classify_r,
    coboundary_bialgebra,
    i_map,
    r_minus,
)


def _operator(p, B) -> np.ndarray:
    return linear_map(B, p.dim, p.dim)


def _descendent_table(c: np.ndarray, m: np.ndarray, lam: Fraction) -> np.ndarray:
    """B(x).y + x.B(y) + lam x.y"""
    return normalize(contract("au,avk->uvk", m, c) + contract("bv,ubk->uvk", m, c) + lam * c)


def _rb_holds(tables, m: np.ndarray, lam: Fraction) -> bool:
    """Integer screen: both sides are quadratic in (B, lam) jointly and linear in the table."""
    ints = [a.astype(object) for a in common_integer_scale(m, np.array([lam], dtype=object))]
    im, il = ints[0], ints[1][0]
    for c in (a.astype(object) for a in common_integer_scale(*tables)):
        lhs = np.einsum("au,bv,abl->uvl", im, im, c, optimize=False)
        desc = (np.einsum("au,avk->uvk", im, c, optimize=False)
                + np.einsum("bv,ubk->uvk", im, c, optimize=False) + il * c)
        if np.any(lhs != np.einsum("uvk,lk->uvl", desc, im, optimize=False)):
            return False
    return True


def _rb_report(names, tables, m: np.ndarray, lam: Fraction, first_only: bool) -> CheckReport:
    rep = CheckReport()
    if _rb_holds(tables, m, lam):
        return rep
    for name, c in zip(names, tables):
        lhs = contract("au,bv,abl->uvl", m, m, c)
        rhs = contract("uvk,lk->uvl", _descendent_table(c, m, lam), m)
        rep += compare(f"rb-{name}", lhs, rhs, 2, first_only)
        if first_only and not rep:
            break
    return rep


def is_rb_poisson(p: PoissonAlgebra, B, weight, first_only: bool = False) -> CheckReport:
    """B(x).B(y) = B(B(x).y + x.B(y) + weight x.y) for the product and the bracket."""
    return _rb_report(("dot", "bracket"), p.products, _operator(p, B), scalar(weight), first_only)


def is_rb_pre_poisson(p: PrePoissonAlgebra, B, weight, first_only: bool = False) -> CheckReport:
    """The same identity for both products of a pre-Poisson algebra.

    This is the relative Rota-Baxter condition for the regular action,
    written out directly.
    """
    return _rb_report(("star", "circ"), p.products, _operator(p, B), scalar(weight), first_only)


def is_rb(p, B, weight, first_only: bool = False) -> CheckReport:
    if isinstance(p, PoissonAlgebra):
        return is_rb_poisson(p, B, weight, first_only)
    return is_rb_pre_poisson(p, B, weight, first_only)


def descendent(p: PrePoissonAlgebra, B, weight) -> PrePoissonAlgebra:
    """x *_B y = B(x)*y + x*B(y) + weight x*y, and likewise for o."""
    m, lam = _operator(p, B), scalar(weight)
    rep = is_rb_pre_poisson(p, m, lam, first_only=True)
    if not rep:
        raise NotRotaBaxter(f"not a Rota-Baxter operator of weight {lam}", rep)
    return PrePoissonAlgebra(_descendent_table(p.star, m, lam), _descendent_table(p.circ, m, lam))


def tilde_rb(B, weight) -> np.ndarray:
    """The companion operator -weight Id - B."""
    m = qarray(B)
    return normalize(-scalar(weight) * identity(m.shape[0]) - m)


def form_compatibility(B, w, weight, first_only: bool = False) -> CheckReport:
    """omega(Bx, y) + omega(x, By) + weight omega(x, y) = 0."""
    w = bilinear_form(w)
    m = linear_map(B, w.shape[0], w.shape[0])
    lhs = normalize(matmul(m.T, w) + matmul(w, m) + scalar(weight) * w)
    return compare("rb-form-compatibility", lhs, np.zeros_like(lhs), 2, first_only)


@dataclass(frozen=True, eq=False)
class RBStructure:
    algebra: PoissonAlgebra | PrePoissonAlgebra
    B: np.ndarray
    weight: Fraction
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        object.__setattr__(self, "B", _operator(self.algebra, self.B))
        object.__setattr__(self, "weight", scalar(self.weight))
        if check:
            rep = is_rb(self.algebra, self.B, self.weight, first_only=True)
            if not rep:
                raise NotRotaBaxter(f"not a Rota-Baxter operator of weight {self.weight}", rep)


def _coerce_fields(obj) -> None:
    object.__setattr__(obj, "B", _operator(obj.algebra, obj.B))
    object.__setattr__(obj, "weight", scalar(obj.weight))
    object.__setattr__(obj, "omega", bilinear_form(obj.omega, obj.algebra.dim))


@dataclass(frozen=True, eq=False)
class QuadraticRBPrePoisson:
    algebra: PrePoissonAlgebra
    B: np.ndarray
    weight: Fraction
    omega: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        _coerce_fields(self)
        if check:
            rep = is_quadratic_rb(self, first_only=True)
            if not rep:
                raise NotQuadraticRB("not a quadratic Rota-Baxter pre-Poisson algebra", rep)

    def __eq__(self, other) -> bool:
        return (isinstance(other, QuadraticRBPrePoisson) and self.algebra == other.algebra
                and self.weight == other.weight and np.array_equal(self.B, other.B)
                and np.array_equal(self.omega, other.omega))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class RBSymplecticPoisson:
    algebra: PoissonAlgebra
    B: np.ndarray
    weight: Fraction
    omega: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        _coerce_fields(self)
        if check:
            rep = is_rb_symplectic_poisson(self, first_only=True)
            if not rep:
                raise NotRBSymplectic("not a Rota-Baxter symplectic Poisson algebra", rep)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RBSymplecticPoisson) and self.algebra == other.algebra
                and self.weight == other.weight and np.array_equal(self.B, other.B)
                and np.array_equal(self.omega, other.omega))

    __hash__ = None


def _families(parts, first_only: bool) -> CheckReport:
    rep = CheckReport()
    for tag, run in parts:
        rep += run().tagged(tag)
        if first_only and not rep:
            break
    return rep


def is_quadratic_rb(q: QuadraticRBPrePoisson, first_only: bool = False) -> CheckReport:
    """Violations are tagged quadratic/, rota-baxter/ or compatibility/."""
    return _families((
        ("quadratic", lambda: is_quadratic_pre_poisson(q.algebra, q.omega, first_only)),
        ("rota-baxter", lambda: is_rb_pre_poisson(q.algebra, q.B, q.weight, first_only)),
        ("compatibility", lambda: form_compatibility(q.B, q.omega, q.weight, first_only)),
    ), first_only)


def is_rb_symplectic_poisson(q: RBSymplecticPoisson, first_only: bool = False) -> CheckReport:
    """Violations are tagged symplectic/, rota-baxter/ or compatibility/."""
    return _families((
        ("symplectic", lambda: is_symplectic_poisson(q.algebra, q.omega, first_only)),
        ("rota-baxter", lambda: is_rb_poisson(q.algebra, q.B, q.weight, first_only)),
        ("compatibility", lambda: form_compatibility(q.B, q.omega, q.weight, first_only)),
    ), first_only)


def rb_symplectic_from_quadratic_rb(q: QuadraticRBPrePoisson) -> RBSymplecticPoisson:
    rep = is_quadratic_rb(q, first_only=True)
    if not rep:
        raise NotQuadraticRB("not a quadratic Rota-Baxter pre-Poisson algebra", rep)
    return RBSymplecticPoisson(sub_adjacent(q.algebra), q.B, q.weight, q.omega)


def rb_pre_poisson_from_rb_symplectic(q: RBSymplecticPoisson) -> QuadraticRBPrePoisson:
    """Same operator and form on the compatible pre-Poisson algebra."""
    rep = is_rb_symplectic_poisson(q, first_only=True)
    if not rep:
        raise NotRBSymplectic("not a Rota-Baxter symplectic Poisson algebra", rep)
    p = compatible_pre_poisson(q.algebra, q.omega)
    return QuadraticRBPrePoisson(p, q.B, q.weight, q.omega)


# -- factorizable r-matrices ---------------------------------------------------------

def _nonzero_weight(weight) -> Fraction:
    lam = scalar(weight)
    if lam == 0:
        raise ZeroWeight("the weight must be nonzero")
    return lam


def _inverse_i(rm: RMatrix) -> np.ndarray:
    try:
        return invert_matrix(i_map(rm))
    except NotInvertible as exc:
        raise NotFactorizable("I = r+ - r- is singular") from exc


def quadratic_rb_from_factorizable(rm: RMatrix, weight) -> QuadraticRBPrePoisson:
    """B = weight r- I^-1 and omega(x, y) = <I^-1 x, y>."""
    lam = _nonzero_weight(weight)
    flags = classify_r(rm)
    if not flags.factorizable:
        raise NotFactorizable(f"r is not factorizable: {flags.as_dict()}")
    inv = _inverse_i(rm)
    B = normalize(lam * matmul(r_minus(rm), inv))
    return QuadraticRBPrePoisson(rm.algebra, B, lam, normalize(inv.T))


def form_map(w) -> np.ndarray:
    """The map P* -> P determined by <map^-1 x, y> = omega(x, y)."""
    return invert_matrix(bilinear_form(w).T)


def factorizable_from_quadratic_rb(q: QuadraticRBPrePoisson) -> RMatrix:
    """r with r+ = (1/weight)(B + weight Id) composed with the form map."""
    lam = _nonzero_weight(q.weight)
    rep = is_quadratic_rb(q, first_only=True)
    if not rep:
        raise NotQuadraticRB("not a quadratic Rota-Baxter pre-Poisson algebra", rep)
    n = q.algebra.dim
    plus = matmul(q.B + lam * identity(n), form_map(q.omega)) / lam
    return RMatrix(q.algebra, normalize(plus.T))


def _transported(c: np.ndarray, i: np.ndarray, inv: np.ndarray, lam: Fraction) -> np.ndarray:
    """xi . eta = -lam I^-1((1/lam) I xi . (1/lam) I eta)"""
    return normalize(-contract("ia,jb,ijl,kl->abk", i, i, c, inv) / lam)


def check_descendent_isomorphism(q: QuadraticRBPrePoisson, rm: RMatrix, first_only: bool = False) -> CheckReport:
    """(1/weight) I as a bialgebra isomorphism from the dual of the coboundary
    bialgebra of ``rm`` onto the descendent of ``q`` with transported cobrackets.

    ``q`` is normally ``quadratic_rb_from_factorizable(rm, weight)``; its
    operator may be altered to probe the check.
    """
    lam = _nonzero_weight(q.weight)
    if q.algebra != rm.algebra:
        raise DimensionMismatch("q and rm live on different algebras")
    i = i_map(rm)
    inv = _inverse_i(rm)
    p = rm.algebra
    rep = is_rb_pre_poisson(p, q.B, lam, first_only).tagged("rota-baxter")
    src = dual_bialgebra(coboundary_bialgebra(rm))
    desc = PrePoissonAlgebra(_descendent_table(p.star, q.B, lam),
                             _descendent_table(p.circ, q.B, lam), check=False)
    dst = PrePoissonBialgebra(
        desc,
        Cobracket.from_table(_transported(p.star, i, inv, lam)),
        Cobracket.from_table(_transported(p.circ, i, inv, lam)),
        check=False,
    )
    return rep + is_bialgebra_morphism(normalize(i / lam), src, dst, first_only).tagged("isomorphism")


# -- phase spaces ----------------------------------------------------------------------

def displayed_phase_tables(p: PrePoissonAlgebra, dual: PrePoissonAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """Product and bracket on P + P* written out block by block.

    Only the starred left multiplications of each side enter the mixed blocks.
    """
    n = p.dim
    tables = []
    # sign -1 builds the commutative product, +1 the bracket
    for sign, own, other in ((-1, p.star, dual.star), (1, p.circ, dual.circ)):
        lp, _ = starred_multiplications(own)       # P acting on P*
        ld, _ = starred_multiplications(other)     # P* acting on P
        t = np.zeros((2 * n,) * 3, dtype=object)
        t[:n, :n, :n] = own - sign * flip(own)
        t[n:, n:, n:] = other - sign * flip(other)
        t[:n, n:, :n] = -ld.transpose(2, 0, 1)
        t[:n, n:, n:] = sign * lp.transpose(0, 2, 1)
        t[n:, :n, :n] = sign * ld.transpose(0, 2, 1)
        t[n:, :n, n:] = -lp.transpose(2, 0, 1)
        tables.append(normalize(t))
    return tables[0], tables[1]


def phase_space_from_rb_symplectic(q: RBSymplecticPoisson):
    """Sub-adjacent double of the factorizable bialgebra attached to ``q``.

    Returns the Poisson algebra on P + P*, the standard form and the split.
    """
    _nonzero_weight(q.weight)
    quad = rb_pre_poisson_from_rb_symplectic(q)
    rm = factorizable_from_quadratic_rb(quad)
    b = coboundary_bialgebra(rm, check=False)
    d, w, split = double_of_bialgebra(b)
    big = sub_adjacent(d)
    rep = is_phase_space(big, split, w)
    dot, bracket = displayed_phase_tables(quad.algebra, PrePoissonAlgebra(*b.dual_tables, check=False))
    rep += compare("phase-space-dot", big.dot, dot, 2) + compare("phase-space-bracket", big.bracket, bracket, 2)
    if not rep:
        raise VerificationError("constructed algebra is not the expected phase space", rep)
    return big, w, split
