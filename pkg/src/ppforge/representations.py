"""Representations, dual/coregular representations, semidirect products,
actions and relative Rota-Baxter operators.

A family of operators indexed by a basis of the acting algebra is stored as an
array ``maps`` of shape ``(n, m, m)`` with ``maps[i]`` the matrix of the
operator attached to ``e_i``.  A dual space uses the dual basis, so the dual
of an operator ``A`` is ``-A.T`` (the pairing convention
``<A*(x) xi, v> = -<xi, A(x) v>``).
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from fractions import Fraction

import numpy as np

from .algebras import (
    CheckReport,
    PoissonAlgebra,
    PrePoissonAlgebra,
    compare,
    flip,
    is_pre_poisson,
    left_mult,
    linear_map,
    right_mult,
    swap_xy,
)
from .errors import DimensionMismatch, InvalidInput
from .exact_core import common_integer_scale, contract, freeze, normalize, qarray, scalar, zeros


def operator_family(maps, n: int, m: int | None = None) -> np.ndarray:
    arr = qarray(maps) if np.size(maps) else zeros((n, m or 0, m or 0))
    if arr.ndim != 3 or arr.shape[0] != n or arr.shape[1] != arr.shape[2]:
        raise DimensionMismatch(f"expected {n} square matrices, got shape {arr.shape}")
    if m is not None and arr.shape[1] != m:
        raise DimensionMismatch(f"operators act on dim {arr.shape[1]}, expected {m}")
    return arr


def dual_family(maps: np.ndarray) -> np.ndarray:
    """Starred operators: each matrix replaced by its negative transpose."""
    return normalize(-np.asarray(maps).transpose(0, 2, 1))


def evaluate_at(c: np.ndarray, maps: np.ndarray, ein=contract) -> np.ndarray:
    """A(e_i * e_j) for all pairs, shape (n, n, m, m)."""
    return ein("ijk,kab->ijab", c, maps)


def compose(a: np.ndarray, b: np.ndarray, ein=contract) -> np.ndarray:
    """a(e_i) b(e_j) for all pairs, shape (n, n, m, m)."""
    return ein("iab,jbc->ijac", a, b)


def compose_yx(a: np.ndarray, b: np.ndarray, ein=contract) -> np.ndarray:
    """a(e_j) b(e_i) indexed by (i, j)."""
    return swap_xy(compose(a, b, ein))


def _int_einsum(subscripts, *operands):
    return np.einsum(subscripts, *operands, optimize=False)


def _screen(sides, tables, maps) -> bool:
    """True when every identity from ``sides`` holds on integer-scaled copies.

    Each identity must be homogeneous of degree 2 in the tables and maps
    taken together, so one common scale preserves it.
    """
    scaled = [a.astype(object) for a in common_integer_scale(*tables, *maps)]
    return all(not np.any(lhs != rhs) for _, lhs, rhs in sides(*scaled, ein=_int_einsum))


# -- Poisson representations -------------------------------------------------

def poisson_rep_report(algebra: PoissonAlgebra, varrho, varsigma, first_only=False) -> CheckReport:
    d, br = algebra.dot, algebra.bracket
    lie, assoc = varrho, varsigma
    rep = compare("lie-rep", evaluate_at(br, lie),
                  normalize(compose(lie, lie) - compose_yx(lie, lie)), 2, first_only)
    rep += compare("assoc-rep", evaluate_at(d, assoc), compose(assoc, assoc), 2, first_only)
    rep += compare("poisson-rep-1", evaluate_at(d, lie),
                   normalize(compose_yx(assoc, lie) + compose(assoc, lie)), 2, first_only)
    rep += compare("poisson-rep-2", evaluate_at(br, assoc),
                   normalize(compose(lie, assoc) - compose_yx(assoc, lie)), 2, first_only)
    return rep


@dataclass(frozen=True, eq=False)
class PoissonRep:
    algebra: PoissonAlgebra
    varrho: np.ndarray
    varsigma: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        n = self.algebra.dim
        object.__setattr__(self, "varrho", operator_family(self.varrho, n))
        object.__setattr__(self, "varsigma", operator_family(self.varsigma, n, self.varrho.shape[1]))
        if check:
            rep = poisson_rep_report(self.algebra, self.varrho, self.varsigma, True)
            if not rep:
                raise InvalidInput("not a Poisson representation: " + rep.violations[0].describe())

    @property
    def dim_v(self) -> int:
        return self.varrho.shape[1]


def is_poisson_rep(r: PoissonRep, first_only: bool = False) -> CheckReport:
    return poisson_rep_report(r.algebra, r.varrho, r.varsigma, first_only)


# -- pre-Poisson representations ----------------------------------------------

def _rep_sides(s, b, rho, mu, theta, gamma, ein=contract):
    ev = lambda c, m: evaluate_at(c, m, ein)
    co = lambda m1, m2: compose(m1, m2, ein)
    yx = lambda m1, m2: compose_yx(m1, m2, ein)
    # Zinbiel representation; the displayed chain is split into two identities.
    yield "zinbiel-rep-1", co(rho, rho), ev(s, rho) + ev(flip(s), rho)
    yield "zinbiel-rep-2", co(rho, mu), ev(s, mu)
    yield "zinbiel-rep-3", ev(s, mu), yx(mu, rho) + yx(mu, mu)
    # pre-Lie representation
    yield "pre-lie-rep-1", ev(b, theta) - ev(flip(b), theta), co(theta, theta) - yx(theta, theta)
    yield "pre-lie-rep-2", co(theta, gamma) - yx(gamma, theta), ev(b, gamma) - yx(gamma, gamma)
    # compatibilities
    yield "rep-1", ev(b, rho) - ev(flip(b), rho), co(theta, rho) - yx(rho, theta)
    yield "rep-2", ev(b, mu), yx(mu, gamma) - yx(mu, theta) + co(theta, mu)
    yield "rep-3", ev(b, mu), yx(gamma, rho) + yx(gamma, mu) - co(rho, gamma)
    yield "rep-4", ev(s, theta) + ev(flip(s), theta), co(rho, theta) + yx(rho, theta)
    yield "rep-5", ev(s, gamma), co(rho, gamma) + yx(mu, gamma) - yx(mu, theta)


def pre_poisson_rep_report(algebra: PrePoissonAlgebra, rho, mu, theta, gamma,
                           first_only: bool = False) -> CheckReport:
    maps = (rho, mu, theta, gamma)
    rep = CheckReport()
    if _screen(_rep_sides, algebra.products, maps):
        return rep
    for name, lhs, rhs in _rep_sides(*algebra.products, *maps):
        rep += compare(name, normalize(lhs), normalize(rhs), 2, first_only)
    return rep


@dataclass(frozen=True, eq=False)
class PrePoissonRep:
    algebra: PrePoissonAlgebra
    rho: np.ndarray
    mu: np.ndarray
    theta: np.ndarray
    gamma: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        n = self.algebra.dim
        object.__setattr__(self, "rho", operator_family(self.rho, n))
        m = self.rho.shape[1]
        for name in ("mu", "theta", "gamma"):
            object.__setattr__(self, name, operator_family(getattr(self, name), n, m))
        if check:
            rep = is_pre_poisson_rep(self, first_only=True)
            if not rep:
                raise InvalidInput("not a pre-Poisson representation: "
                                   + rep.violations[0].describe())

    @property
    def dim_v(self) -> int:
        return self.rho.shape[1]

    @property
    def maps(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.rho, self.mu, self.theta, self.gamma

    def __eq__(self, other) -> bool:
        if not isinstance(other, PrePoissonRep):
            return NotImplemented
        return self.algebra == other.algebra and self.dim_v == other.dim_v and all(
            bool(np.all(a == b)) for a, b in zip(self.maps, other.maps))

    __hash__ = None  # type: ignore[assignment]


def is_pre_poisson_rep(r: PrePoissonRep, first_only: bool = False) -> CheckReport:
    return pre_poisson_rep_report(r.algebra, *r.maps, first_only=first_only)


def _require(p: PrePoissonAlgebra) -> None:
    rep = is_pre_poisson(p, first_only=True)
    if not rep:
        raise InvalidInput("not a pre-Poisson algebra: " + rep.violations[0].describe())


def regular_rep(p: PrePoissonAlgebra) -> PrePoissonRep:
    _require(p)
    return PrePoissonRep(p, left_mult(p.star), right_mult(p.star),
                         left_mult(p.circ), right_mult(p.circ))


def dual_rep(r: PrePoissonRep) -> PrePoissonRep:
    """(-rho* - mu*, mu*, theta* - gamma*, -gamma*) on the dual space."""
    rep = is_pre_poisson_rep(r, first_only=True)
    if not rep:
        raise InvalidInput("not a pre-Poisson representation: " + rep.violations[0].describe())
    rho, mu, theta, gamma = (dual_family(m) for m in r.maps)
    return PrePoissonRep(r.algebra, normalize(-rho - mu), mu, normalize(theta - gamma),
                         normalize(-gamma))


def starred_multiplications(c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """L*(x), R*(x) on the dual space, read off the defining pairings.

    <L*(e_i) e_a*, e_b> = -<e_a*, e_i . e_b> = -c[i, b, a], and similarly for R*.
    """
    n = c.shape[0]
    lstar = np.empty((n, n, n), dtype=object)
    rstar = np.empty((n, n, n), dtype=object)
    for i in range(n):
        for a in range(n):
            for b in range(n):
                # matrix row b (output coordinate), column a (input e_a*)
                lstar[i, b, a] = -c[i, b, a]
                rstar[i, b, a] = -c[b, i, a]
    return freeze(lstar), freeze(rstar)


def coregular_rep(p: PrePoissonAlgebra) -> PrePoissonRep:
    _require(p)
    ls, rs = starred_multiplications(p.star)
    lc, rc = starred_multiplications(p.circ)
    return PrePoissonRep(p, normalize(-ls - rs), rs, normalize(lc - rc), normalize(-rc))


# -- direct sums ---------------------------------------------------------------

def block_sum(p_tables: tuple[np.ndarray, ...], q_tables: tuple[np.ndarray, ...],
              p_on_q: tuple[np.ndarray, ...], q_on_p: tuple[np.ndarray, ...],
              signs: tuple[int, ...] | None = None) -> tuple[np.ndarray, ...]:
    """Tables of products on P + Q.

    For each product, ``p_on_q`` supplies (left, right) operator families of P
    acting on Q and ``q_on_p`` those of Q acting on P, so that
    (x+u).(y+v) = x.y + u.v + left(x)v + right(y)u + left'(u)y + right'(v)x.
    """
    out = []
    n = p_tables[0].shape[0]
    m = q_tables[0].shape[0]
    for idx, (cp, cq) in enumerate(zip(p_tables, q_tables)):
        left, right = p_on_q[2 * idx], p_on_q[2 * idx + 1]
        left2, right2 = q_on_p[2 * idx], q_on_p[2 * idx + 1]
        t = np.empty((n + m,) * 3, dtype=object)
        t.fill(Fraction(0))
        t[:n, :n, :n] = cp
        t[n:, n:, n:] = cq
        # x . v -> left(x) v in Q, right2(v) x in P
        t[:n, n:, n:] += left.transpose(0, 2, 1)
        t[:n, n:, :n] += right2.transpose(2, 0, 1)
        # u . y -> right(y) u in Q, left2(u) y in P
        t[n:, :n, n:] += right.transpose(2, 0, 1)
        t[n:, :n, :n] += left2.transpose(0, 2, 1)
        out.append(normalize(t))
    return tuple(out)


def semidirect_pre_poisson(p: PrePoissonAlgebra, r: PrePoissonRep) -> PrePoissonAlgebra:
    rep = is_pre_poisson_rep(r, first_only=True)
    if not rep:
        raise InvalidInput("not a pre-Poisson representation: " + rep.violations[0].describe())
    if r.algebra != p:
        raise DimensionMismatch("representation belongs to a different algebra")
    m = r.dim_v
    zq = zeros((m, m, m))
    zback = zeros((m, p.dim, p.dim))
    star, circ = block_sum(p.products, (zq, zq), r.maps, (zback,) * 4)
    return PrePoissonAlgebra(star, circ)


def semidirect_poisson(p: PoissonAlgebra, r: PoissonRep) -> PoissonAlgebra:
    rep = is_poisson_rep(r, first_only=True)
    if not rep:
        raise InvalidInput("not a Poisson representation: " + rep.violations[0].describe())
    m = r.dim_v
    zq = zeros((m, m, m))
    zback = zeros((m, p.dim, p.dim))
    # (x+u).(y+v) = x.y + s(x)v + s(y)u ; {x+u, y+v} = {x,y} + r(x)v - r(y)u
    dot, bracket = block_sum(p.products, (zq, zq),
                             (r.varsigma, r.varsigma, r.varrho, normalize(-r.varrho)),
                             (zback,) * 4)
    return PoissonAlgebra(dot, bracket)


# -- actions -----------------------------------------------------------------

def _acts_on_product(op: np.ndarray, cq: np.ndarray, ein=contract) -> np.ndarray:
    """op(x)(u . v), indexed (x, u, v, out)."""
    return ein("uvk,ilk->iuvl", cq, op)


def _product_after_left(op: np.ndarray, cq: np.ndarray, ein=contract) -> np.ndarray:
    """(op(x) u) . v"""
    return ein("iku,kvl->iuvl", op, cq)


def _product_after_right(op: np.ndarray, cq: np.ndarray, ein=contract) -> np.ndarray:
    """u . (op(x) v)"""
    return ein("ikv,ukl->iuvl", op, cq)


def _swap_uv(t: np.ndarray) -> np.ndarray:
    return t.transpose(0, 2, 1, 3)


def _action_sides(sq, bq, rho, mu, theta, gamma, ein=contract):
    on = lambda op, c: _acts_on_product(op, c, ein)
    after_l = lambda op, c: _product_after_left(op, c, ein)
    after_r = lambda op, c: _product_after_right(op, c, ein)
    yield "action-1", after_r(mu, sq), on(mu, sq) + _swap_uv(on(mu, sq))
    yield "action-2", after_r(rho, sq), after_l(mu, sq) + after_l(rho, sq)
    yield "action-3", on(rho, sq), after_l(mu, sq) + after_l(rho, sq)
    yield "action-4", on(theta, bq), after_l(theta, bq) + after_r(theta, bq) - after_l(gamma, bq)
    yield ("action-5", on(gamma, bq),
           after_r(gamma, bq) - _swap_uv(after_r(gamma, bq)) + _swap_uv(on(gamma, bq)))
    yield ("action-6", on(mu, bq) - _swap_uv(on(mu, bq)),
           after_r(mu, bq) - _swap_uv(after_r(gamma, sq)))
    yield "action-7", on(theta, sq), after_l(theta, sq) - after_l(gamma, sq) + after_r(theta, sq)
    yield "action-8", on(rho, bq), after_l(theta, sq) - after_l(gamma, sq) + after_r(rho, bq)
    yield ("action-9", on(gamma, sq) + _swap_uv(on(gamma, sq)),
           after_r(gamma, sq) + _swap_uv(after_r(gamma, sq)))
    yield "action-10", on(rho, bq), after_l(rho, bq) + after_l(mu, bq) - after_r(theta, sq)


def action_identities_report(p: PrePoissonAlgebra, q: PrePoissonAlgebra, rho, mu, theta, gamma,
                             first_only: bool = False) -> CheckReport:
    maps = (rho, mu, theta, gamma)
    rep = CheckReport()
    if _screen(_action_sides, q.products, maps):
        return rep
    for name, lhs, rhs in _action_sides(*q.products, *maps):
        rep += compare(name, normalize(lhs), normalize(rhs), 3, first_only)
    return rep


@dataclass(frozen=True, eq=False)
class Action:
    """Operators of ``source`` acting on the pre-Poisson algebra ``target``."""

    source: PrePoissonAlgebra
    target: PrePoissonAlgebra
    rho: np.ndarray
    mu: np.ndarray
    theta: np.ndarray
    gamma: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        n, m = self.source.dim, self.target.dim
        for name in ("rho", "mu", "theta", "gamma"):
            object.__setattr__(self, name, operator_family(getattr(self, name), n, m))
        if check:
            rep = is_action(self, first_only=True)
            if not rep:
                raise InvalidInput("not an action: " + rep.violations[0].describe())

    @property
    def maps(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.rho, self.mu, self.theta, self.gamma

    def as_rep(self) -> PrePoissonRep:
        return PrePoissonRep(self.source, *self.maps, check=False)


def is_action(a: Action, first_only: bool = False) -> CheckReport:
    rep = pre_poisson_rep_report(a.source, *a.maps, first_only=first_only)
    return rep + action_identities_report(a.source, a.target, *a.maps, first_only=first_only)


def regular_action(p: PrePoissonAlgebra) -> Action:
    r = regular_rep(p)
    return Action(p, p, *r.maps)


def _relative_rb_sides(t, lam, pairs, ein=contract):
    for name, cp, cq, left, right in pairs:
        lhs = ein("au,bv,abl->uvl", t, t, cp)
        inner = (ein("au,akv->uvk", t, left)          # left(Tu) v
                 + ein("bv,bku->uvk", t, right)       # right(Tv) u
                 + lam * cq)
        yield name, lhs, inner


def _relative_rb_holds(t, lam, pairs) -> bool:
    """Integer screen: quadratic in (T, weight) jointly, linear in the remaining data."""
    it, il = (a.astype(object) for a in common_integer_scale(t, np.array([lam], dtype=object)))
    flat = [a for group in pairs for a in group[1:]]
    scaled = iter(a.astype(object) for a in common_integer_scale(*flat))
    ipairs = [(g[0],) + tuple(next(scaled) for _ in g[1:]) for g in pairs]
    ein = lambda sub, *ops: np.einsum(sub, *ops, optimize=False)
    return all(not np.any(lhs != ein("uvk,lk->uvl", inner, it))
               for _, lhs, inner in _relative_rb_sides(it, il[0], ipairs, ein))


def is_relative_rb(T, weight, a: Action, first_only: bool = False) -> CheckReport:
    """(Tu).(Tv) = T(rho(Tu)v + mu(Tv)u + weight u.v) for both products."""
    lam = scalar(weight)
    p, q = a.source, a.target
    t = linear_map(T, p.dim, q.dim)
    rep = CheckReport()
    pairs = (("rrbo-1", p.star, q.star, a.rho, a.mu), ("rrbo-2", p.circ, q.circ, a.theta, a.gamma))
    if _relative_rb_holds(t, lam, pairs):
        return rep
    for name, lhs, inner in _relative_rb_sides(t, lam, pairs):
        rhs = contract("uvk,lk->uvl", normalize(inner), t)
        rep += compare(name, lhs, rhs, 2, first_only)
    return rep
