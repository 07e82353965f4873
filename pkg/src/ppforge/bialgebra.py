"""Cobrackets, pre-Poisson bialgebras, doubles and dual bialgebras.

A cobracket stores ``values[x, a, b]``, the coefficient of ``e_a (x) e_b`` in
the image of ``e_x``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebras import (
    CheckReport,
    PrePoissonAlgebra,
    compare,
    is_homomorphism,
    is_pre_poisson,
    left_mult,
    linear_map,
    right_mult,
)
from .errors import DimensionMismatch, NotABialgebra
from .exact_core import common_integer_scale, contract, normalize, qarray
from .geometry import SplitDecoration, is_manin_triple, standard_omega
from .representations import block_sum, starred_multiplications


@dataclass(frozen=True, eq=False)
class Cobracket:
    values: np.ndarray

    def __post_init__(self) -> None:
        v = qarray(self.values)
        if v.ndim != 3 or not v.shape[0] == v.shape[1] == v.shape[2]:
            raise DimensionMismatch(f"cobracket needs shape (n, n, n), got {v.shape}")
        object.__setattr__(self, "values", v)

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def __call__(self, x) -> np.ndarray:
        return contract("x,xab->ab", qarray(x), self.values)

    def __eq__(self, other) -> bool:
        return isinstance(other, Cobracket) and np.array_equal(self.values, other.values)

    __hash__ = None

    @classmethod
    def zero(cls, dim: int) -> "Cobracket":
        return cls(np.zeros((dim,) * 3, dtype=int))

    @classmethod
    def from_table(cls, t) -> "Cobracket":
        """The cobracket whose dual product has table ``t``."""
        return cls(qarray(t).transpose(2, 0, 1))


def dualize_cobracket(c: Cobracket) -> np.ndarray:
    """Table of the product on P*: e_i* . e_j* = sum_k values[k, i, j] e_k*."""
    return normalize(c.values.transpose(1, 2, 0))


@dataclass(frozen=True, eq=False)
class PrePoissonBialgebra:
    algebra: PrePoissonAlgebra
    delta_star: Cobracket
    delta_circ: Cobracket
    check: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        for name in ("delta_star", "delta_circ"):
            value = getattr(self, name)
            if not isinstance(value, Cobracket):
                value = Cobracket(value)
                object.__setattr__(self, name, value)
            if value.dim != self.algebra.dim:
                raise DimensionMismatch(f"{name} has dim {value.dim}, algebra has {self.algebra.dim}")
        object.__setattr__(self, "_verified", False)
        if self.check:
            _require_bialgebra(self)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def dual_tables(self) -> tuple[np.ndarray, np.ndarray]:
        return dualize_cobracket(self.delta_star), dualize_cobracket(self.delta_circ)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PrePoissonBialgebra) and self.algebra == other.algebra
                and self.delta_star == other.delta_star and self.delta_circ == other.delta_circ)

    __hash__ = None


def zero_bialgebra(p: PrePoissonAlgebra) -> PrePoissonBialgebra:
    return PrePoissonBialgebra(p, Cobracket.zero(p.dim), Cobracket.zero(p.dim))


# Operator families act on 2-tensors t[a, b]:
#   (A(x) (x) Id) t  ->  'xam,mb->xab'      (Id (x) A(x)) t  ->  'xbm,am->xab'

def _tau(t: np.ndarray) -> np.ndarray:
    """Swap the last two legs."""
    return np.swapaxes(t, -1, -2)


def _compat_sides(s, o, big, dlt, ein=contract):
    """(name, lhs, rhs, index axes) for the six compatibility identities."""
    ls, rs, lc, rc = left_mult(s), right_mult(s), left_mult(o), right_mult(o)
    lrs = ls + rs
    sym_big = big + _tau(big)
    skew_dlt = dlt - _tau(dlt)

    def image(c, cob):
        # cob(e_x . e_y) as [x, y, a, b]
        return ein("xyk,kab->xyab", c, cob)

    # operator of the second argument acting on the cobracket of the first
    def left_y(op, cob):     # (op(y) (x) Id) cob(x)
        return ein("yam,xmb->xyab", op, cob)

    def right_y(op, cob):    # (Id (x) op(y)) cob(x)
        return ein("ybm,xam->xyab", op, cob)

    def left_x(op, cob):     # (op(x) (x) Id) cob(y)
        return ein("xam,ymb->xyab", op, cob)

    def right_x(op, cob):    # (Id (x) op(x)) cob(y)
        return ein("xbm,yam->xyab", op, cob)

    sides = []
    rhs1 = right_y(lrs, dlt) + right_x(lrs, dlt) - left_x(lc, big) - left_y(lc, big)
    sides.append(("bialg-1", image(s + s.transpose(1, 0, 2), dlt), rhs1, 2))
    rhs2 = (left_y(ls, dlt) - right_y(lrs, dlt)
            + left_x(lc, big) + right_x(lc - rc, big))
    sides.append(("bialg-2", image(o - o.transpose(1, 0, 2), big), rhs2, 2))
    rhs3 = (-right_y(rs, dlt) - left_y(rs, _tau(dlt))
            + left_x(lc, sym_big) + right_x(lc, sym_big))
    sides.append(("bialg-3", image(o, sym_big), rhs3, 2))
    rhs4 = (right_y(rs, dlt) + right_x(ls, skew_dlt) + left_y(rc, _tau(big))
            - left_x(lc, sym_big))
    sides.append(("bialg-4", image(s, skew_dlt), rhs4, 2))

    # identities 5 and 6 live in P (x) P (x) P, indexed [x, a, b, c]
    d_big = ein("xmc,mab->xabc", big, dlt)        # (delta (x) Id) Delta
    id_big = ein("xam,mbc->xabc", dlt, big)       # (Id (x) Delta) delta
    id_dlt = ein("xam,mbc->xabc", big, dlt)       # (Id (x) delta) Delta
    big_d = ein("xmc,mab->xabc", dlt, big)        # (Delta (x) Id) delta
    swap12 = lambda t: np.swapaxes(t, 1, 2)
    lhs5 = d_big - swap12(d_big) - id_big + swap12(id_dlt)
    lhs6 = big_d + swap12(big_d) - id_dlt - swap12(id_dlt)
    sides.append(("bialg-5", lhs5, np.zeros_like(lhs5), 1))
    sides.append(("bialg-6", lhs6, np.zeros_like(lhs6), 1))
    return sides


def _compat_holds(b: PrePoissonBialgebra) -> bool:
    """Integer screen: bialg-1..4 are bilinear in (tables, cobrackets), 5 and 6
    quadratic in the cobrackets, so one scale per group keeps every identity."""
    p = b.algebra
    s, o = (a.astype(object) for a in common_integer_scale(p.star, p.circ))
    big, dlt = (a.astype(object) for a in
                common_integer_scale(b.delta_star.values, b.delta_circ.values))
    ein = lambda sub, *ops: np.einsum(sub, *ops, optimize=False)
    return all(not np.any(lhs != rhs) for _, lhs, rhs, _ in _compat_sides(s, o, big, dlt, ein))


def check_bialgebra_compat(b: PrePoissonBialgebra, first_only: bool = False) -> CheckReport:
    """The six compatibility identities between the products and the cobrackets."""
    if _compat_holds(b):
        return CheckReport()
    p = b.algebra
    rep = CheckReport()
    for name, lhs, rhs, axes in _compat_sides(p.star, p.circ, b.delta_star.values,
                                              b.delta_circ.values):
        rep += compare(name, normalize(lhs), normalize(rhs), axes, first_only)
    return rep


def coregular_maps(star: np.ndarray, circ: np.ndarray) -> tuple[np.ndarray, ...]:
    """(-L*-R*, R*, L*-R*, -R*) for the given products, as operator families."""
    ls, rs = starred_multiplications(star)
    lc, rc = starred_multiplications(circ)
    return normalize(-ls - rs), rs, normalize(lc - rc), normalize(-rc)


def double_tables(p: PrePoissonAlgebra, dual_star, dual_circ) -> tuple[np.ndarray, np.ndarray]:
    """Products on P + P* where each side acts on the other by its coregular maps."""
    return block_sum(p.products, (dual_star, dual_circ),
                     coregular_maps(p.star, p.circ), coregular_maps(dual_star, dual_circ))


def is_pre_poisson_bialgebra(b: PrePoissonBialgebra, first_only: bool = False) -> CheckReport:
    """Dual products form a pre-Poisson algebra, the six compatibilities hold,
    and P + P* with the standard form is a Manin triple."""
    ds, dc = b.dual_tables
    rep = is_pre_poisson(ds, dc, first_only).tagged("dual")
    if first_only and not rep:
        return rep
    rep += check_bialgebra_compat(b, first_only)
    if first_only and not rep:
        return rep
    n = b.dim
    star, circ = double_tables(b.algebra, ds, dc)
    d = PrePoissonAlgebra(star, circ, check=False)
    inner = is_pre_poisson(star, circ, first_only) + is_manin_triple(
        d, SplitDecoration(n, n), standard_omega(n), first_only)
    return rep + inner.tagged("double")


def _require_bialgebra(b: PrePoissonBialgebra) -> None:
    # instances are immutable, so a passed check stays valid
    if b._verified:
        return
    rep = is_pre_poisson_bialgebra(b, first_only=True)
    if not rep:
        raise NotABialgebra("not a pre-Poisson bialgebra", rep)
    object.__setattr__(b, "_verified", True)


def double_of_bialgebra(b: PrePoissonBialgebra):
    _require_bialgebra(b)
    star, circ = double_tables(b.algebra, *b.dual_tables)
    n = b.dim
    # the bialgebra check already verified the double
    return PrePoissonAlgebra(star, circ, check=False), standard_omega(n), SplitDecoration(n, n)


def dual_bialgebra(b: PrePoissonBialgebra) -> PrePoissonBialgebra:
    _require_bialgebra(b)
    q = PrePoissonAlgebra(*b.dual_tables, check=False)
    out = PrePoissonBialgebra(q, Cobracket.from_table(b.algebra.star),
                              Cobracket.from_table(b.algebra.circ), check=False)
    # the defining conditions are symmetric in a bialgebra and its dual
    object.__setattr__(out, "_verified", True)
    return out


def is_bialgebra_morphism(phi, src: PrePoissonBialgebra, dst: PrePoissonBialgebra,
                          first_only: bool = False) -> CheckReport:
    m = linear_map(phi, dst.dim, src.dim)
    rep = is_homomorphism(m, src.algebra, dst.algebra, first_only)
    for name, a, c in (("star", src.delta_star, dst.delta_star),
                       ("circ", src.delta_circ, dst.delta_circ)):
        # (phi (x) phi) Delta_P(e_x)  versus  Delta_Q(phi e_x)
        lhs = contract("am,bk,xmk->xab", m, m, a.values)
        rhs = contract("yx,yab->xab", m, c.values)
        rep += compare(f"comorphism-{name}", lhs, rhs, 1, first_only)
    return rep
