"""Structure-constant algebras and their axiom checkers.

A multiplication table ``c`` has shape ``(n, n, n)`` with
``e_i * e_j = sum_k c[i, j, k] e_k``.  Checkers quantify over basis elements
only, which is enough by multilinearity, and report every violated instance.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import DimensionMismatch, InvalidInput, KindMismatch, NotRotaBaxter
from .exact_core import common_integer_scale, contract, format_scalar, normalize, qarray, zeros


@dataclass(frozen=True)
class Violation:
    identity_id: str
    indices: tuple[int, ...]  # 1-based basis indices
    lhs: tuple[Fraction, ...]
    rhs: tuple[Fraction, ...]

    def describe(self) -> str:
        fmt = lambda vec: "[" + ", ".join(format_scalar(v) for v in vec) + "]"
        where = ",".join(str(i) for i in self.indices)
        return f"{self.identity_id} at ({where}): lhs={fmt(self.lhs)} rhs={fmt(self.rhs)}"


@dataclass(frozen=True)
class CheckReport:
    """Verdict of an identity check; passes exactly when there are no violations."""

    violations: tuple[Violation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def __add__(self, other: "CheckReport") -> "CheckReport":
        return CheckReport(self.violations + other.violations)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def identities(self) -> set[str]:
        return {v.identity_id for v in self.violations}

    def tagged(self, prefix: str) -> "CheckReport":
        return CheckReport(tuple(
            Violation(f"{prefix}/{v.identity_id}", v.indices, v.lhs, v.rhs)
            for v in self.violations))

    def format(self) -> str:
        if self.passed:
            return "pass"
        lines = [f"FAIL ({len(self.violations)} violations)"]
        lines.extend("  " + v.describe() for v in self.violations)
        return "\n".join(lines)


def combine(*reports: CheckReport) -> CheckReport:
    out = CheckReport()
    for rep in reports:
        out = out + rep
    return out


def compare(identity_id: str, lhs, rhs, index_ndim: int | None = None,
            first_only: bool = False) -> CheckReport:
    """Compare two arrays whose leading ``index_ndim`` axes are basis indices.

    The remaining axes hold the value of each side; they are flattened into
    the violation record.  Violations come out in row-major index order.
    """
    lhs = np.asarray(lhs, dtype=object)
    rhs = np.asarray(rhs, dtype=object)
    if lhs.shape != rhs.shape:
        raise DimensionMismatch(f"{identity_id}: sides have shapes {lhs.shape} and {rhs.shape}")
    if index_ndim is None:
        index_ndim = max(lhs.ndim - 1, 0)
    idx_shape = lhs.shape[:index_ndim]
    if lhs.size == 0:
        return CheckReport()
    differs = lhs != rhs
    if differs.ndim > index_ndim:
        differs = np.any(differs.reshape(idx_shape + (-1,)), axis=-1)
    found = []
    for idx in zip(*np.nonzero(differs)) if index_ndim else ([()] if differs else []):
        idx = tuple(int(i) for i in idx)
        found.append(Violation(
            identity_id,
            tuple(i + 1 for i in idx),
            tuple(Fraction(v) for v in np.ravel(lhs[idx])),
            tuple(Fraction(v) for v in np.ravel(rhs[idx])),
        ))
        if first_only:
            break
    return CheckReport(tuple(found))


def table(data, dim: int | None = None) -> np.ndarray:
    """Validate and freeze a multiplication table."""
    arr = qarray(data)
    if arr.ndim != 3 or len(set(arr.shape)) != 1:
        raise DimensionMismatch(f"multiplication table must be cubic, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(f"table has dim {arr.shape[0]}, expected {dim}")
    return arr


def table_from_products(dim: int, products: dict[tuple[int, int], dict[int, object]]) -> np.ndarray:
    """Build a table from sparse 1-based data ``{(i, j): {k: coeff}}``."""
    arr = np.empty((dim, dim, dim), dtype=object)
    arr.fill(Fraction(0))
    for (i, j), image in products.items():
        for k, coeff in image.items():
            arr[i - 1, j - 1, k - 1] = coeff
    return table(arr)


def zero_table(dim: int) -> np.ndarray:
    return zeros((dim, dim, dim))


# Index helpers for identities in three arguments.  Each returns an array of
# shape (n, n, n, n) indexed by (x, y, z, output).

def compose_left(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """(x a y) b z"""
    return contract("ijm,mkl->ijkl", a, b)


def compose_right(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """x a (y b z)"""
    return contract("jkm,iml->ijkl", b, a)


def swap_xy(t: np.ndarray) -> np.ndarray:
    return t.transpose(1, 0, *range(2, t.ndim))


def flip(c: np.ndarray) -> np.ndarray:
    """Opposite product: c_op[i, j] = c[j, i]."""
    return c.transpose(1, 0, 2)


def left_mult(c: np.ndarray) -> np.ndarray:
    """Stack of left multiplication matrices: L[i] @ e_j = e_i * e_j."""
    return c.transpose(0, 2, 1)


def right_mult(c: np.ndarray) -> np.ndarray:
    """Stack of right multiplication matrices: R[i] @ e_j = e_j * e_i."""
    return c.transpose(1, 2, 0)


def _check_same_dim(*tables: np.ndarray) -> int:
    dims = {t.shape[0] for t in tables}
    if len(dims) != 1:
        raise DimensionMismatch(f"tables have different dimensions: {sorted(dims)}")
    return dims.pop()


def is_zinbiel(t, first_only: bool = False) -> CheckReport:
    c = table(t)
    prod = compose_left(c, c)
    return compare("zinbiel", compose_right(c, c), normalize(prod + swap_xy(prod)), 3, first_only)


def is_pre_lie(t, first_only: bool = False) -> CheckReport:
    c = table(t)
    assoc = normalize(compose_left(c, c) - compose_right(c, c))
    return compare("pre-lie", assoc, swap_xy(assoc), 3, first_only)


def is_commutative(t, first_only: bool = False) -> CheckReport:
    c = table(t)
    return compare("commutative", c, flip(c), 2, first_only)


def is_associative(t, first_only: bool = False) -> CheckReport:
    c = table(t)
    return compare("associative", compose_left(c, c), compose_right(c, c), 3, first_only)


def is_lie(t, first_only: bool = False) -> CheckReport:
    c = table(t)
    n = c.shape[0]
    diag = c[np.arange(n), np.arange(n)] if n else c[:0, 0]
    rep = compare("alternating", diag, zeros(diag.shape), 1, first_only)
    rep += compare("skew", c, normalize(-flip(c)), 2, first_only)
    nested = compose_right(c, c)
    jacobi = normalize(nested + np.einsum("jkil->ijkl", nested) + np.einsum("kijl->ijkl", nested))
    return rep + compare("jacobi", jacobi, zeros(jacobi.shape), 3, first_only)


def _int_left(a, b):
    return np.einsum("ijm,mkl->ijkl", a, b)


def _int_right(a, b):
    return np.einsum("jkm,iml->ijkl", b, a)


def _vanish(*residuals) -> bool:
    return not any(np.any(r != 0) for r in residuals)


def _pre_poisson_holds(s: np.ndarray, b: np.ndarray) -> bool:
    """Integer screen: True only if every pre-Poisson identity holds."""
    s, b = common_integer_scale(s, b, terms=4 * max(s.shape[0], 1))
    ss, bb, bs, sb = _int_left(s, s), _int_left(b, b), _int_left(b, s), _int_left(s, b)
    assoc = bb - _int_right(b, b)
    sb_r = _int_right(s, b)
    return _vanish(
        _int_right(s, s) - ss - swap_xy(ss),
        assoc - swap_xy(assoc),
        bs - swap_xy(bs) - _int_right(b, s) + swap_xy(_int_right(s, b)),
        sb + swap_xy(sb) - sb_r - swap_xy(sb_r),
    )


def _poisson_holds(d: np.ndarray, br: np.ndarray) -> bool:
    d, br = common_integer_scale(d, br, terms=4 * max(d.shape[0], 1))
    nested = _int_right(br, br)
    return _vanish(
        d - flip(d),
        _int_left(d, d) - _int_right(d, d),
        br + flip(br),
        np.einsum("iik->ik", br),
        nested + np.einsum("jkil->ijkl", nested) + np.einsum("kijl->ijkl", nested),
        _int_right(br, d) - _int_left(br, d) - np.einsum("ikm,jml->ijkl", br, d),
    )


def pre_poisson_report(star, circ, first_only: bool = False) -> CheckReport:
    s, b = table(star), table(circ)
    _check_same_dim(s, b)
    if _pre_poisson_holds(s, b):
        return CheckReport()
    rep = is_zinbiel(s, first_only) + is_pre_lie(b, first_only)
    # (x o y - y o x) * z = x o (y * z) - y * (x o z)
    bs = compose_left(b, s)
    lhs1 = normalize(bs - swap_xy(bs))
    rhs1 = normalize(compose_right(b, s) - swap_xy(compose_right(s, b)))
    rep += compare("pre-poisson-1", lhs1, rhs1, 3, first_only)
    # (x * y + y * x) o z = x * (y o z) + y * (x o z)
    sb = compose_left(s, b)
    sb_r = compose_right(s, b)
    rep += compare("pre-poisson-2", normalize(sb + swap_xy(sb)), normalize(sb_r + swap_xy(sb_r)),
                   3, first_only)
    return rep


def poisson_report(dot, bracket, first_only: bool = False) -> CheckReport:
    d, br = table(dot), table(bracket)
    _check_same_dim(d, br)
    if _poisson_holds(d, br):
        return CheckReport()
    rep = is_commutative(d, first_only) + is_associative(d, first_only) + is_lie(br, first_only)
    # {x, y.z} = {x, y}.z + y.{x, z}
    lhs = compose_right(br, d)
    rhs = normalize(compose_left(br, d) + contract("ikm,jml->ijkl", br, d))
    return rep + compare("leibniz", lhs, rhs, 3, first_only)


def _coerce(name: str, obj, value, dim_from=None):
    object.__setattr__(obj, name, table(value, dim_from))


@dataclass(frozen=True, eq=False)
class PrePoissonAlgebra:
    """Zinbiel product ``star`` and pre-Lie product ``circ`` on one basis.

    Construction validates the axioms; pass ``check=False`` for intermediate
    data that is not (yet) known to be pre-Poisson.
    """

    star: np.ndarray
    circ: np.ndarray
    check: InitVar[bool] = True
    kind: str = field(default="pre-poisson", init=False)

    def __post_init__(self, check: bool) -> None:
        _coerce("star", self, self.star)
        _coerce("circ", self, self.circ, self.star.shape[0])
        if check:
            rep = pre_poisson_report(self.star, self.circ, first_only=True)
            if not rep:
                raise InvalidInput("not a pre-Poisson algebra: " + rep.violations[0].describe())

    @property
    def dim(self) -> int:
        return self.star.shape[0]

    @property
    def products(self) -> tuple[np.ndarray, np.ndarray]:
        return self.star, self.circ

    def __eq__(self, other) -> bool:
        if not isinstance(other, PrePoissonAlgebra):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.star == other.star)) \
            and bool(np.all(self.circ == other.circ))

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class PoissonAlgebra:
    """Commutative associative ``dot`` and Lie ``bracket`` obeying Leibniz."""

    dot: np.ndarray
    bracket: np.ndarray
    check: InitVar[bool] = True
    kind: str = field(default="poisson", init=False)

    def __post_init__(self, check: bool) -> None:
        _coerce("dot", self, self.dot)
        _coerce("bracket", self, self.bracket, self.dot.shape[0])
        if check:
            rep = poisson_report(self.dot, self.bracket, first_only=True)
            if not rep:
                raise InvalidInput("not a Poisson algebra: " + rep.violations[0].describe())

    @property
    def dim(self) -> int:
        return self.dot.shape[0]

    @property
    def products(self) -> tuple[np.ndarray, np.ndarray]:
        return self.dot, self.bracket

    def __eq__(self, other) -> bool:
        if not isinstance(other, PoissonAlgebra):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.dot == other.dot)) \
            and bool(np.all(self.bracket == other.bracket))

    __hash__ = None  # type: ignore[assignment]


def zero_pre_poisson(dim: int) -> PrePoissonAlgebra:
    return PrePoissonAlgebra(zero_table(dim), zero_table(dim))


def zero_poisson(dim: int) -> PoissonAlgebra:
    return PoissonAlgebra(zero_table(dim), zero_table(dim))


def is_pre_poisson(star, circ=None, first_only: bool = False) -> CheckReport:
    """Accepts either two tables or a PrePoissonAlgebra (possibly unchecked)."""
    if isinstance(star, PrePoissonAlgebra):
        star, circ = star.star, star.circ
    return pre_poisson_report(star, circ, first_only)


def is_poisson(dot, bracket=None, first_only: bool = False) -> CheckReport:
    if isinstance(dot, PoissonAlgebra):
        dot, bracket = dot.dot, dot.bracket
    return poisson_report(dot, bracket, first_only)


def sub_adjacent_zinbiel(t) -> np.ndarray:
    c = table(t)
    rep = is_zinbiel(c, first_only=True)
    if not rep:
        raise InvalidInput("not a Zinbiel table: " + rep.violations[0].describe())
    return normalize(c + flip(c))


def sub_adjacent_pre_lie(t) -> np.ndarray:
    c = table(t)
    rep = is_pre_lie(c, first_only=True)
    if not rep:
        raise InvalidInput("not a pre-Lie table: " + rep.violations[0].describe())
    return normalize(c - flip(c))


def sub_adjacent(p: PrePoissonAlgebra) -> PoissonAlgebra:
    """x.y = x*y + y*x and {x, y} = x o y - y o x."""
    rep = is_pre_poisson(p, first_only=True)
    if not rep:
        raise InvalidInput("not a pre-Poisson algebra: " + rep.violations[0].describe())
    return PoissonAlgebra(normalize(p.star + flip(p.star)), normalize(p.circ - flip(p.circ)))


def linear_map(m, dim_out: int | None = None, dim_in: int | None = None) -> np.ndarray:
    """A matrix whose column j is the image of the j-th basis vector."""
    arr = qarray(m)
    if arr.ndim != 2:
        raise DimensionMismatch(f"linear map must be a matrix, got shape {arr.shape}")
    if dim_out is not None and arr.shape[0] != dim_out or dim_in is not None and arr.shape[1] != dim_in:
        raise DimensionMismatch(f"linear map has shape {arr.shape}, expected ({dim_out}, {dim_in})")
    return arr


def is_homomorphism(phi, src, dst, first_only: bool = False) -> CheckReport:
    """phi(x . y) = phi(x) . phi(y) for each product of the algebra kind."""
    if type(src) is not type(dst):
        raise KindMismatch(f"cannot compare a {src.kind} algebra with a {dst.kind} algebra")
    m = linear_map(phi, dst.dim, src.dim)
    names = ("star", "circ") if isinstance(src, PrePoissonAlgebra) else ("dot", "bracket")
    rep = CheckReport()
    for name, a, b in zip(names, src.products, dst.products):
        lhs = contract("ijk,lk->ijl", a, m)
        rhs = contract("ai,bj,abl->ijl", m, m, b)
        rep += compare(f"homomorphism-{name}", lhs, rhs, 2, first_only)
    return rep


def apply_map(m: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Table of (x, y) -> c(m x, y)."""
    return contract("ai,ajk->ijk", m, c)


def pre_poisson_from_rb0(p: PoissonAlgebra, B) -> PrePoissonAlgebra:
    """x *_B y = B(x).y and x o_B y = {B(x), y} for a weight-zero operator B."""
    from .rota_baxter import is_rb_poisson

    m = linear_map(B, p.dim, p.dim)
    rep = is_rb_poisson(p, m, 0)
    if not rep:
        raise NotRotaBaxter("B is not a weight-zero Rota-Baxter operator", rep)
    return PrePoissonAlgebra(apply_map(m, p.dot), apply_map(m, p.bracket))
