"""r-matrices on pre-Poisson algebras.

``r[a, b]`` is the coefficient of ``e_a (x) e_b``.  As maps P* -> P,
``r_plus`` has matrix ``r.T`` and ``r_minus`` has matrix ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .algebras import (
    CheckReport,
    PrePoissonAlgebra,
    Violation,
    compare,
    is_homomorphism,
    is_pre_poisson,
    left_mult,
    right_mult,
    sub_adjacent,
)
from .bialgebra import Cobracket, PrePoissonBialgebra
from .errors import DimensionMismatch, NotFactorizable, NotInvertible, NotLRInvariant
from .exact_core import (
    common_integer_scale,
    contract,
    invert_matrix,
    matmul,
    normalize,
    qarray,
    skew_part,
    zeros,
)
from .representations import starred_multiplications


@dataclass(frozen=True, eq=False)
class RMatrix:
    algebra: PrePoissonAlgebra
    r: np.ndarray

    def __post_init__(self) -> None:
        r = qarray(self.r)
        n = self.algebra.dim
        if r.shape != (n, n):
            raise DimensionMismatch(f"r has shape {r.shape}, algebra has dim {n}")
        object.__setattr__(self, "r", r)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def with_r(self, r) -> "RMatrix":
        return RMatrix(self.algebra, r)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RMatrix) and self.algebra == other.algebra
                and np.array_equal(self.r, other.r))

    __hash__ = None


def r_plus(rm: RMatrix) -> np.ndarray:
    return normalize(rm.r.T)


def r_minus(rm: RMatrix) -> np.ndarray:
    return normalize(rm.r)


def i_map(rm: RMatrix) -> np.ndarray:
    return normalize(rm.r.T - rm.r)


def canonical_double_r(n: int) -> np.ndarray:
    """sum_i e_i (x) e_i* on P + P*, in the block basis."""
    r = np.zeros((2 * n, 2 * n), dtype=int)
    for i in range(n):
        r[i, n + i] = 1
    return qarray(r)


# -- operator algebra on tensors ---------------------------------------------
#
# The helpers take the contraction routines as arguments so the same formulas
# run exactly on Fractions and, as a fast screen, on integer-scaled copies.

def _ops(star: np.ndarray, circ: np.ndarray) -> dict[str, np.ndarray]:
    ls, rs, lc, rc = left_mult(star), right_mult(star), left_mult(circ), right_mult(circ)
    return {"ls": ls, "rs": rs, "lc": lc, "rc": rc, "dot": ls + rs, "br": lc - rc}


def _on2(t: np.ndarray, left=None, right=None, mm=matmul) -> np.ndarray:
    """(left (x) right) t = left . t . right^T, broadcasting over leading axes."""
    out = t
    if left is not None:
        out = mm(left, out)
    if right is not None:
        out = mm(out, np.swapaxes(right, -1, -2))
    return out


def _einsum(subscripts: str, *operands) -> np.ndarray:
    return np.einsum(subscripts, *operands, optimize=False)


def _x(f: np.ndarray) -> np.ndarray:
    """Family indexed by x, broadcast against a family indexed by y."""
    return f[:, None]


def _y(f: np.ndarray) -> np.ndarray:
    return f[None, :]


# -- cobrackets ---------------------------------------------------------------

def coboundary_cobrackets(rm: RMatrix) -> tuple[Cobracket, Cobracket]:
    o = _ops(rm.algebra.star, rm.algebra.circ)
    r = rm.r
    delta = _on2(r, right=o["dot"]) - _on2(r, left=o["ls"])
    small = _on2(r, left=o["lc"]) + _on2(r, right=o["br"])
    return Cobracket(normalize(delta)), Cobracket(normalize(small))


def coboundary_bialgebra(rm: RMatrix, check: bool = True) -> PrePoissonBialgebra:
    big, small = coboundary_cobrackets(rm)
    return PrePoissonBialgebra(rm.algebra, big, small, check=check)


# -- Yang-Baxter type equations --------------------------------------------------

def _z_tensor(r, star, dot, ein=contract):
    t13_12 = ein("is,jq,ijp->pqs", r, r, star)
    t23_21 = ein("jp,is,ijq->pqs", r, r, star)
    t13_21 = ein("is,qv,ivp->pqs", r, r, dot)
    t12_23 = ein("pv,is,viq->pqs", r, r, dot)
    t13_23 = ein("pv,qt,vts->pqs", r, r, dot)
    return -t13_12 - t23_21 + t13_21 + t12_23 - t13_23


def _s_tensor(r, circ, bracket, ein=contract):
    t13_12 = ein("is,jq,ijp->pqs", r, r, circ)
    t23_21 = ein("jp,is,ijq->pqs", r, r, circ)
    # [r23, r12]: the first leg of the r12 factor sits in slot 1
    b23_12 = ein("pj,is,ijq->pqs", r, r, bracket)
    b13_21 = ein("is,qv,ivp->pqs", r, r, bracket)
    b13_23 = ein("pv,qt,vts->pqs", r, r, bracket)
    return t13_12 - t23_21 + b23_12 - b13_21 - b13_23


def zinbiel_ybe(rm: RMatrix) -> np.ndarray:
    """Z(r) as a tensor indexed [p, q, s].

    -r13 * r12 - r23 * r21 + r13 . r21 + r12 . r23 - r13 . r23, where each
    product acts on the slot shared by its two factors.
    """
    return normalize(_z_tensor(rm.r, rm.algebra.star, sub_adjacent(rm.algebra).dot))


def s_equation(rm: RMatrix) -> np.ndarray:
    """S(r) as a tensor indexed [p, q, s].

    r13 o r12 - r23 o r21 + [r23, r12] - [r13, r21] - [r13, r23]
    """
    return normalize(_s_tensor(rm.r, rm.algebra.circ, sub_adjacent(rm.algebra).bracket))


# -- (L,R)-invariance -----------------------------------------------------------

def _lr_definition(rm: RMatrix, first_only: bool) -> CheckReport:
    o = _ops(rm.algebra.star, rm.algebra.circ)
    r = rm.r
    rep = compare("lr-star", normalize(_on2(r, left=o["ls"])), normalize(_on2(r, right=o["dot"])),
                  1, first_only)
    return rep + compare("lr-circ", normalize(_on2(r, left=o["lc"])),
                         normalize(-_on2(r, right=o["br"])), 1, first_only)


def _starred(p: PrePoissonAlgebra) -> tuple[np.ndarray, np.ndarray]:
    ls, _ = starred_multiplications(p.star)
    lc, _ = starred_multiplications(p.circ)
    return ls, lc


def lr_operator_form(rm: RMatrix, first_only: bool = False) -> CheckReport:
    """r+ L*_star(x) + L_dot(x) r+ = 0 and r+ L*_circ(x) - L_br(x) r+ = 0."""
    o = _ops(rm.algebra.star, rm.algebra.circ)
    ls_dual, lc_dual = _starred(rm.algebra)
    rp = r_plus(rm)
    rep = compare("lr-op-star", normalize(matmul(rp, ls_dual)),
                  normalize(-matmul(o["dot"], rp)), 1, first_only)
    return rep + compare("lr-op-circ", normalize(matmul(rp, lc_dual)),
                         normalize(matmul(o["br"], rp)), 1, first_only)


def skew_lr_i_form(rm: RMatrix, first_only: bool = False) -> CheckReport:
    """Invariance of the skew part, phrased through I = r+ - r-."""
    o = _ops(rm.algebra.star, rm.algebra.circ)
    ls_dual, lc_dual = _starred(rm.algebra)
    i = i_map(rm)
    rep = compare("lr-i-star", normalize(matmul(i, ls_dual)),
                  normalize(-matmul(o["dot"], i)), 1, first_only)
    return rep + compare("lr-i-circ", normalize(matmul(i, lc_dual)),
                         normalize(matmul(o["br"], i)), 1, first_only)


def is_lr_invariant(rm: RMatrix, first_only: bool = False) -> CheckReport:
    rep = _lr_definition(rm, first_only)
    if bool(rep) != bool(lr_operator_form(rm)):
        rep += CheckReport((Violation("lr-formulations-disagree", (), (), ()),))
    return rep


def skew_part_invariant(rm: RMatrix, first_only: bool = False) -> CheckReport:
    return is_lr_invariant(rm.with_r(skew_part(rm.r)), first_only)


# -- coboundary conditions ---------------------------------------------------------

def _coboundary_residuals(star, circ, r, ein=contract, mm=matmul):
    """Each condition as (name, residual, number of index axes); all vanish iff r passes."""
    o = _ops(star, circ)
    ls, lc = o["ls"], o["lc"]
    t = r - r.T
    # operator families transpose back to the sub-adjacent tables
    z = _z_tensor(r, star, o["dot"].transpose(0, 2, 1), ein)
    s = _s_tensor(r, circ, o["br"].transpose(0, 2, 1), ein)
    at = lambda c, ops: ein("xyk,kam->xyam", c, ops)         # op(e_x . e_y)
    first = lambda op, z: ein("xpm,mqs->xpqs", op, z)
    second = lambda op, z: ein("xqm,pms->xpqs", op, z)
    third = lambda op, z: ein("xsm,pqm->xpqs", op, z)
    on2 = lambda t, left=None, right=None: _on2(t, left, right, mm)
    ls_xy, lc_xy = at(star, ls), at(circ, lc)
    lc_at_star = at(star, lc)        # L_circ(x * y)
    ls_at_circ = at(circ, ls)        # L_star(x o y)
    lc_ls = mm(_x(lc), _y(ls))       # L_circ(x) L_star(y)
    ls_lc = mm(_x(ls), _y(lc))       # L_star(x) L_circ(y)
    lc_lc = mm(_x(lc), _y(lc))

    zb1 = (on2(t, left=ls_xy) - on2(t, right=ls_xy) - on2(t, left=mm(_x(ls), _y(ls)))
           + on2(t, left=_x(ls), right=_y(ls)))
    zb2 = first(ls, z) - third(o["dot"], z)
    pl1 = (on2(t, left=lc_xy) + on2(t, right=lc_xy) - on2(t, left=lc_lc)
           - on2(t, left=_x(lc), right=_y(lc)) - on2(t, left=_y(lc), right=_x(lc))
           - on2(t, right=lc_lc))
    pl2 = first(lc, s) + second(lc, s) + third(o["br"], s)

    # (i) and (ii): the y-slot runs over the first leg of r, the second leg is appended
    op_i = (on2(t, left=lc_ls) - on2(t, left=lc_at_star) - on2(t, left=_x(lc), right=_y(ls))
            + on2(t, left=_y(lc), right=_x(ls)) - on2(t, right=lc_at_star)
            + on2(t, right=ls_lc))
    cond_i = (first(lc, z) + third(o["dot"], z) - second(ls, s)
              + ein("xupq,us->xpqs", op_i, r))
    op_ii = (on2(t, left=ls_lc) - on2(t, left=ls_at_circ) - on2(t, left=_x(ls), right=_y(lc))
             - on2(t, left=_y(lc), right=_x(ls)) + on2(t, right=ls_at_circ)
             - on2(t, right=ls_lc))
    cond_ii = (third(o["br"], z) + first(ls, s) + second(ls, s)
               + ein("xupq,us->xpqs", op_ii, r))
    cond_iii = (on2(t, left=_y(ls), right=_x(lc)) - on2(t, left=_x(lc), right=_y(ls))
                + on2(t, right=ls_at_circ) - on2(t, left=ls_at_circ)
                + on2(t, left=lc_ls) - on2(t, right=lc_ls))
    # the L_circ term on the first leg is evaluated at x * y
    cond_iv = (on2(t, left=_x(lc), right=_y(ls)) - on2(t, left=_y(lc), right=_x(ls))
               + on2(t, left=lc_at_star) - on2(t, left=lc_ls)
               + on2(t, right=lc_at_star) - on2(t, right=ls_lc))
    return [("coboundary-zinbiel-1", zb1, 2), ("coboundary-zinbiel-2", zb2, 1),
            ("coboundary-pre-lie-1", pl1, 2), ("coboundary-pre-lie-2", pl2, 1),
            ("coboundary-i", cond_i, 1), ("coboundary-ii", cond_ii, 1),
            ("coboundary-iii", cond_iii, 2), ("coboundary-iv", cond_iv, 2)]


def _coboundary_holds(rm: RMatrix) -> bool:
    """Integer screen; every condition is homogeneous in the tables and in r."""
    p = rm.algebra
    star, circ = (a.astype(object) for a in common_integer_scale(p.star, p.circ))
    [r] = common_integer_scale(rm.r)
    residuals = _coboundary_residuals(star, circ, r.astype(object), _einsum, np.matmul)
    return not any(np.any(res != 0) for _, res, _ in residuals)


def check_coboundary_conditions(rm: RMatrix, first_only: bool = False) -> CheckReport:
    """The eight tensor conditions under which r induces a coboundary bialgebra."""
    if _coboundary_holds(rm):
        return CheckReport()
    p = rm.algebra
    rep = CheckReport()
    for name, res, axes in _coboundary_residuals(p.star, p.circ, rm.r):
        res = normalize(res)
        rep += compare(name, res, zeros(res.shape), axes, first_only)
        if first_only and not rep:
            break
    return rep


# -- classification --------------------------------------------------------------

@dataclass(frozen=True)
class RClassification:
    coboundary_valid: bool
    lr_invariant_skew_part: bool
    ybe_solved: bool
    quasi_triangular: bool
    triangular: bool
    factorizable: bool

    def as_dict(self) -> dict[str, bool]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def classify_r(rm: RMatrix) -> RClassification:
    zero3 = zeros((rm.dim,) * 3)
    ybe = bool(np.array_equal(zinbiel_ybe(rm), zero3) and np.array_equal(s_equation(rm), zero3))
    inv = bool(skew_part_invariant(rm, first_only=True))
    quasi = ybe and inv
    symmetric = bool(np.array_equal(rm.r, rm.r.T))
    try:
        invert_matrix(i_map(rm))
        invertible = True
    except NotInvertible:
        invertible = False
    return RClassification(
        coboundary_valid=bool(check_coboundary_conditions(rm, first_only=True)),
        lr_invariant_skew_part=inv,
        ybe_solved=ybe,
        quasi_triangular=quasi,
        triangular=quasi and symmetric,
        factorizable=quasi and invertible,
    )


# -- induced products on P* -----------------------------------------------------------

def _starred_families(p: PrePoissonAlgebra):
    ls, rs = starred_multiplications(p.star)
    lc, rc = starred_multiplications(p.circ)
    return ls, rs, lc, rc


def induced_products_r(rm: RMatrix) -> PrePoissonAlgebra:
    """Products on P* induced by r.  Table [a, b, k]: coefficient of e_k* in e_a* . e_b*."""
    ls, rs, lc, rc = _starred_families(rm.algebra)
    rp, rmn = r_plus(rm), r_minus(rm)
    star = -contract("ia,ikb->abk", rp, normalize(ls + rs)) + contract("ib,ika->abk", rmn, rs)
    circ = contract("ia,ikb->abk", rp, normalize(lc - rc)) - contract("ib,ika->abk", rmn, rc)
    return PrePoissonAlgebra(normalize(star), normalize(circ), check=False)


def _require_invariant(rm: RMatrix) -> None:
    rep = skew_part_invariant(rm, first_only=True)
    if not rep:
        raise NotLRInvariant("skew part of r is not (L,R)-invariant", rep)


def induced_plus(rm: RMatrix) -> PrePoissonAlgebra:
    _require_invariant(rm)
    _, rs, _, rc = _starred_families(rm.algebra)
    i = i_map(rm)
    star = -contract("ib,ika->abk", i, rs)
    circ = contract("ib,ika->abk", i, rc)
    return PrePoissonAlgebra(normalize(star), circ)


def induced_minus(rm: RMatrix) -> PrePoissonAlgebra:
    _require_invariant(rm)
    ls, rs, lc, rc = _starred_families(rm.algebra)
    i = i_map(rm)
    star = -contract("ia,ikb->abk", i, normalize(ls + rs))
    circ = contract("ia,ikb->abk", i, normalize(lc - rc))
    return PrePoissonAlgebra(normalize(star), circ)


def homomorphism_report(rm: RMatrix, first_only: bool = False) -> CheckReport:
    """r+ and r- as maps from the induced algebra on P* into P."""
    dual = induced_products_r(rm)
    rep = is_pre_poisson(dual, first_only=first_only).tagged("induced")
    rep += is_homomorphism(r_plus(rm), dual, rm.algebra, first_only).tagged("r-plus")
    return rep + is_homomorphism(r_minus(rm), dual, rm.algebra, first_only).tagged("r-minus")


def factorize(rm: RMatrix, x) -> tuple[np.ndarray, np.ndarray]:
    """Split x = x_plus - x_minus with both parts in the images of r+ and r-."""
    try:
        inv = invert_matrix(i_map(rm))
    except NotInvertible as exc:
        raise NotFactorizable("I = r+ - r- is singular") from exc
    v = qarray(x)
    if v.shape != (rm.dim,):
        raise DimensionMismatch(f"vector has shape {v.shape}, expected ({rm.dim},)")
    pre = contract("ij,j->i", inv, v)
    return contract("ij,j->i", r_plus(rm), pre), contract("ij,j->i", r_minus(rm), pre)
