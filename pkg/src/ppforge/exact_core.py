"""Exact rational kernel: scalars, dense object arrays, contractions, inversion.

Every array handed out by this module is a read-only numpy object array whose
entries are :class:`fractions.Fraction`.  ``np.einsum`` on such arrays only
ever adds and multiplies Python objects, so contractions stay exact.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import DimensionMismatch, NonRationalScalar, NotInvertible

Scalar = Fraction

_as_fraction = np.frompyfunc(lambda v: v if type(v) is Fraction else Fraction(v), 1, 1)


def scalar(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions, other exact ``numbers.Rational`` values and strings
    such as ``"3"``, ``"-2/7"``.  Floats are rejected because they are not exact
    decimal data.
    """
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            if sep:
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except ZeroDivisionError:
            raise NonRationalScalar(f"zero denominator in {value!r}") from None
        except ValueError:
            raise NonRationalScalar(f"not a rational literal: {value!r}") from None
    raise NonRationalScalar(f"not an exact rational: {value!r}")


def freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def qarray(data, shape: tuple[int, ...] | None = None) -> np.ndarray:
    """Build a read-only Fraction array from nested data (or another array)."""
    if isinstance(data, np.ndarray) and data.dtype == object and not data.flags.writeable:
        arr = data
    else:
        raw = np.array(data, dtype=object)
        if raw.size:
            raw = np.vectorize(scalar, otypes=[object])(raw)
        arr = raw
    if shape is not None and arr.shape != tuple(shape):
        if arr.size == 0 and int(np.prod(shape)) == 0:
            arr = np.empty(shape, dtype=object)
        else:
            raise DimensionMismatch(f"expected shape {tuple(shape)}, got {arr.shape}")
    return freeze(arr)


def zeros(shape: int | tuple[int, ...]) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(Fraction(0))
    return freeze(arr)


def identity(n: int) -> np.ndarray:
    arr = np.empty((n, n), dtype=object)
    arr.fill(Fraction(0))
    for i in range(n):
        arr[i, i] = Fraction(1)
    return freeze(arr)


def normalize(arr) -> np.ndarray:
    """Turn the result of object arithmetic into a read-only Fraction array."""
    arr = np.asarray(arr, dtype=object)
    if arr.ndim == 0:
        return freeze(np.array(scalar(arr.item()), dtype=object))
    out = _as_fraction(arr) if arr.size else arr.copy()
    return freeze(np.asarray(out, dtype=object))


_INT64_SAFE = 2 ** 62


def _scaled(arr) -> tuple[np.ndarray, int, int]:
    """Integer array ``arr * den`` with ``den`` the lcm of all denominators."""
    arr = np.asarray(arr, dtype=object)
    if arr.size == 0:
        return arr, 1, 0
    fr = [v if type(v) is Fraction else Fraction(v) for v in arr.ravel().tolist()]
    den = math.lcm(*{v.denominator for v in fr})
    if den == 1:
        ints = [v.numerator for v in fr]
    else:
        ints = [v.numerator * (den // v.denominator) for v in fr]
    peak = max(map(abs, ints))
    return np.array(ints, dtype=object).reshape(arr.shape), den, peak


def _to_fractions(raw: np.ndarray, den: int) -> np.ndarray:
    # results repeat a handful of values, mostly zero; Fractions are immutable so share them
    memo: dict[int, Fraction] = {}
    vals = []
    for v in raw.ravel().tolist():
        f = memo.get(v)
        if f is None:
            f = memo[v] = Fraction(int(v), den)
        vals.append(f)
    out = np.empty(len(vals), dtype=object)
    out[:] = vals
    return freeze(out.reshape(raw.shape))


def _integer_kernel(func, operands, terms: int) -> np.ndarray:
    """Run ``func`` on integer-scaled operands and divide once at the end."""
    scaled = [_scaled(op) for op in operands]
    den, bound = 1, terms
    for _, d, peak in scaled:
        den *= d
        bound *= peak
    if bound < _INT64_SAFE:
        raw = func(*[a.astype(np.int64) for a, _, _ in scaled])
    else:
        raw = func(*[a for a, _, _ in scaled])
    raw = np.asarray(raw)
    if raw.ndim == 0:
        return freeze(np.array(Fraction(int(raw.item()), den), dtype=object))
    return _to_fractions(raw, den)


def common_integer_scale(*arrays, degree: int = 2, terms: int = 1) -> list[np.ndarray]:
    """Scale all arrays by one common integer so every entry is integral.

    Homogeneous polynomial identities of the given degree vanish on the scaled
    copies exactly when they vanish on the originals.  The copies are int64
    when ``terms`` monomials of that degree cannot overflow.
    """
    scaled = [_scaled(a) for a in arrays]
    den = math.lcm(*(d for _, d, _ in scaled)) if scaled else 1
    out, peak = [], 0
    for ints, d, p in scaled:
        factor = den // d
        out.append(ints * factor if factor != 1 else ints)
        peak = max(peak, p * factor)
    if terms * peak ** degree < _INT64_SAFE:
        out = [a.astype(np.int64) for a in out]
    return out


def contract(subscripts: str, *operands) -> np.ndarray:
    """Exact ``einsum`` with explicit output subscripts.

    Operands are rescaled to integers so the summation runs on machine
    integers whenever the result provably fits in 64 bits.
    """
    inputs, arrow, output = subscripts.replace(" ", "").partition("->")
    if not arrow:
        raise ValueError("contract needs explicit output subscripts")
    sizes: dict[str, int] = {}
    arrays = [np.asarray(op, dtype=object) for op in operands]
    for letters, arr in zip(inputs.split(","), arrays):
        for letter, size in zip(letters, arr.shape):
            sizes[letter] = size
    terms = 1
    for letter, size in sizes.items():
        if letter not in output:
            terms *= size
    return _integer_kernel(lambda *ops: np.einsum(subscripts, *ops, optimize=False),
                           arrays, max(terms, 1))


def matmul(a, b) -> np.ndarray:
    """Exact broadcasting matrix product."""
    a, b = np.asarray(a, dtype=object), np.asarray(b, dtype=object)
    return _integer_kernel(np.matmul, (a, b), max(a.shape[-1], 1))


def is_zero(arr: np.ndarray) -> bool:
    return not np.any(np.asarray(arr, dtype=object) != 0)


def transpose2(t: np.ndarray) -> np.ndarray:
    """The flip tau on a 2-tensor: entry[i][j] -> entry[j][i]."""
    t = np.asarray(t, dtype=object)
    if t.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {t.shape}")
    return freeze(t.T.copy())


def skew_part(r: np.ndarray) -> np.ndarray:
    return normalize((np.asarray(r, dtype=object) - transpose2(r)) * Fraction(1, 2))


def symmetric_part(r: np.ndarray) -> np.ndarray:
    return normalize((np.asarray(r, dtype=object) + transpose2(r)) * Fraction(1, 2))


def _check_square(m: np.ndarray) -> int:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m.shape[0]


def _row_reduce(m: np.ndarray, rhs: np.ndarray | None):
    """Gauss-Jordan elimination on ``m``; returns (det, reduced rhs or None)."""
    n = _check_square(m)
    a = [[Fraction(v) for v in row] for row in m.tolist()]
    b = None if rhs is None else [[Fraction(v) for v in row] for row in rhs.tolist()]
    det = Fraction(1)
    for col in range(n):
        pivot = next((row for row in range(col, n) if a[row][col] != 0), None)
        if pivot is None:
            return Fraction(0), None
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            if b is not None:
                b[col], b[pivot] = b[pivot], b[col]
            det = -det
        p = a[col][col]
        det *= p
        inv = 1 / p
        a[col] = [v * inv for v in a[col]]
        if b is not None:
            b[col] = [v * inv for v in b[col]]
        for row in range(n):
            if row != col and a[row][col] != 0:
                f = a[row][col]
                a[row] = [x - f * y for x, y in zip(a[row], a[col])]
                if b is not None:
                    b[row] = [x - f * y for x, y in zip(b[row], b[col])]
    return det, b


def determinant(m) -> Fraction:
    m = qarray(m)
    if m.shape == (0, 0):
        return Fraction(1)
    det, _ = _row_reduce(m, None)
    return det


def invert_matrix(m) -> np.ndarray:
    """Exact inverse of a square matrix; raises NotInvertible when singular."""
    m = qarray(m)
    n = _check_square(m)
    if n == 0:
        return zeros((0, 0))
    det, inv = _row_reduce(m, identity(n))
    if det == 0:
        raise NotInvertible("matrix is singular")
    return qarray(inv)


def solve(m, rhs) -> np.ndarray:
    """Solve ``m @ x = rhs`` exactly for square invertible ``m``.

    ``rhs`` may be a vector or a matrix of right-hand sides (columns).
    """
    m = qarray(m)
    rhs = qarray(rhs)
    vector = rhs.ndim == 1
    cols = rhs.reshape(-1, 1) if vector else rhs
    det, out = _row_reduce(m, cols)
    if det == 0:
        raise NotInvertible("matrix is singular")
    out = qarray(out) if out else zeros(cols.shape)
    return qarray(out.reshape(-1)) if vector else out


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.empty((n, n), dtype=object)
    out.fill(Fraction(0))
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at:at + k, at:at + k] = b
        at += k
    return freeze(out)


def format_scalar(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_nested(arr: np.ndarray):
    """Nested lists of canonical rational strings."""
    return np.vectorize(format_scalar, otypes=[object])(arr).tolist() if arr.size else \
        np.empty(arr.shape).tolist()


def basis_vector(n: int, i: int) -> np.ndarray:
    v = np.empty(n, dtype=object)
    v.fill(Fraction(0))
    v[i] = Fraction(1)
    return freeze(v)


def vector(values: Iterable) -> np.ndarray:
    return qarray(list(values))
