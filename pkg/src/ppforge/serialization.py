"""Canonical JSON documents for algebras, bialgebras, r-matrices and bundles.

Every scalar is a quoted rational string ("3", "-2/7").  Structure constants
are nested arrays ``c[i][j][k]`` (coefficient of e_k in e_i . e_j), matrices
are ``m[row][col]`` with column j the image of e_j, cobrackets are
``delta[x][a][b]`` (coefficient of e_a (x) e_b in the image of e_x) and
r-matrices ``r[a][b]`` (coefficient of e_a (x) e_b).  Bundles on a double use
the block basis ``e_1..e_n, f_1..f_n`` with ``f_i = e_i*``.

The canonical text puts one top-level field per line in a fixed order and
ends with a newline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebras import PoissonAlgebra, PrePoissonAlgebra
from .bialgebra import Cobracket, PrePoissonBialgebra
from .errors import MalformedInput, NonRationalScalar
from .exact_core import format_scalar, qarray, scalar
from .geometry import SplitDecoration
from .representations import PrePoissonRep
from .yang_baxter import RMatrix

FIELD_ORDER = ("kind", "dim", "dim_v", "split", "star", "circ", "dot", "bracket",
               "delta_star", "delta_circ", "rho", "mu", "theta", "gamma",
               "r", "B", "weight", "omega")

# number of axes of length dim (dim_v for the trailing axes of rep maps)
_TENSORS = {"star": 3, "circ": 3, "dot": 3, "bracket": 3, "delta_star": 3, "delta_circ": 3,
            "r": 2, "B": 2, "omega": 2, "rho": 3, "mu": 3, "theta": 3, "gamma": 3}

REQUIRED = {
    "algebra": ("star", "circ"),
    "poisson": ("dot", "bracket"),
    "bialgebra": ("star", "circ", "delta_star", "delta_circ"),
    "rmatrix": ("star", "circ", "r"),
    "rb": ("B", "weight"),
    "form": ("omega",),
    "rep": ("dim_v", "star", "circ", "rho", "mu", "theta", "gamma"),
    "bundle": (),
}
KINDS = tuple(REQUIRED)


@dataclass(frozen=True, eq=False)
class Document:
    kind: str
    dim: int
    fields: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.fields[name]

    def __contains__(self, name) -> bool:
        return name in self.fields

    def __eq__(self, other) -> bool:
        return isinstance(other, Document) and serialize(self) == serialize(other)

    __hash__ = None

    def require(self, *names: str) -> None:
        missing = [n for n in names if n not in self.fields]
        if missing:
            raise MalformedInput(f"{self.kind} document lacks field(s): {', '.join(missing)}")

    # -- conversions to library objects -----------------------------------------

    def pre_poisson(self) -> PrePoissonAlgebra:
        self.require("star", "circ")
        return PrePoissonAlgebra(self["star"], self["circ"], check=False)

    def poisson(self) -> PoissonAlgebra:
        if "dot" in self:
            self.require("bracket")
            return PoissonAlgebra(self["dot"], self["bracket"], check=False)
        self.require("star", "circ")
        star, circ = self["star"], self["circ"]
        flip = lambda c: c.transpose(1, 0, 2)
        return PoissonAlgebra(qarray(star + flip(star)), qarray(circ - flip(circ)), check=False)

    def bialgebra(self) -> PrePoissonBialgebra:
        self.require("delta_star", "delta_circ")
        return PrePoissonBialgebra(self.pre_poisson(), Cobracket(self["delta_star"]),
                                   Cobracket(self["delta_circ"]), check=False)

    def rmatrix(self) -> RMatrix:
        self.require("r")
        return RMatrix(self.pre_poisson(), self["r"])

    def rep(self) -> PrePoissonRep:
        return PrePoissonRep(self.pre_poisson(), self["rho"], self["mu"], self["theta"],
                             self["gamma"], check=False)

    def split(self) -> SplitDecoration:
        if "split" in self:
            return SplitDecoration(*self["split"])
        if self.dim % 2:
            raise MalformedInput("no split given and the dimension is odd")
        return SplitDecoration(self.dim // 2, self.dim // 2)


def make_document(kind: str, dim: int, **fields) -> Document:
    """Build a document from library values; arrays are coerced to Fractions."""
    out = {}
    for name, value in fields.items():
        if value is None:
            continue
        if name in _TENSORS:
            out[name] = qarray(value)
        elif name == "weight":
            out[name] = scalar(value)
        elif name == "split":
            out[name] = (int(value[0]), int(value[1]))
        else:
            out[name] = int(value)
    doc = Document(kind, int(dim), out)
    _validate(doc, None)
    return doc


def algebra_document(p: PrePoissonAlgebra) -> Document:
    return make_document("algebra", p.dim, star=p.star, circ=p.circ)


def poisson_document(p: PoissonAlgebra) -> Document:
    return make_document("poisson", p.dim, dot=p.dot, bracket=p.bracket)


def bialgebra_document(b: PrePoissonBialgebra) -> Document:
    return make_document("bialgebra", b.dim, star=b.algebra.star, circ=b.algebra.circ,
                         delta_star=b.delta_star.values, delta_circ=b.delta_circ.values)


def rmatrix_document(rm: RMatrix) -> Document:
    return make_document("rmatrix", rm.dim, star=rm.algebra.star, circ=rm.algebra.circ, r=rm.r)


# -- text ------------------------------------------------------------------------------

def _encode(name: str, value):
    if name in _TENSORS:
        return json.dumps(np.vectorize(format_scalar, otypes=[object])(value).tolist()
                          if value.size else np.empty(value.shape).tolist())
    if name == "weight":
        return json.dumps(format_scalar(value))
    if name == "split":
        return json.dumps(list(value))
    return json.dumps(value)


def serialize(doc: Document) -> str:
    items = [("kind", doc.kind), ("dim", doc.dim)] + [
        (name, doc.fields[name]) for name in FIELD_ORDER if name in doc.fields]
    lines = [f"  {json.dumps(name)}: {_encode(name, value)}" for name, value in items]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _locate(text: str | None, key: str) -> tuple[int | None, int | None]:
    if text is None:
        return None, None
    at = text.find(json.dumps(key))
    if at < 0:
        return None, None
    line = text.count("\n", 0, at) + 1
    return line, at - (text.rfind("\n", 0, at) + 1) + 1


def _fail(message: str, text: str | None, key: str = "kind") -> MalformedInput:
    line, col = _locate(text, key)
    return MalformedInput(message, line, col, key)


def _parse_scalar(value, text, key) -> Fraction:
    if not isinstance(value, str):
        raise NonRationalScalar(f"{key}: scalars must be quoted rational strings, got {value!r}")
    return scalar(value)


def _parse_tensor(value, text, key) -> np.ndarray:
    try:
        arr = np.array(value, dtype=object)
    except ValueError:
        raise _fail(f"{key} is not a rectangular array", text, key) from None
    entries = arr.ravel().tolist()
    if any(isinstance(v, (list, dict)) for v in entries):
        raise _fail(f"{key} is not a rectangular array", text, key)
    flat = [_parse_scalar(v, text, key) for v in entries]
    return qarray(np.array(flat, dtype=object).reshape(arr.shape) if arr.size else
                  np.zeros(arr.shape, dtype=object))


def _validate(doc: Document, text: str | None) -> None:
    if doc.kind not in REQUIRED:
        raise _fail(f"unknown kind {doc.kind!r}; expected one of {', '.join(KINDS)}", text)
    if doc.dim < 0:
        raise _fail("dim must be a nonnegative integer", text, "dim")
    missing = [n for n in REQUIRED[doc.kind] if n not in doc.fields]
    if missing:
        raise _fail(f"{doc.kind} document lacks field(s): {', '.join(missing)}", text)
    if doc.kind == "rb" and not ({"star", "circ"} <= doc.fields.keys()
                                 or {"dot", "bracket"} <= doc.fields.keys()):
        raise _fail("rb document needs star/circ or dot/bracket", text)
    if doc.kind != "bundle":
        allowed = set(REQUIRED[doc.kind]) | ({"star", "circ", "dot", "bracket"} if doc.kind == "rb" else set())
        extra = sorted(set(doc.fields) - allowed)
        if extra:
            raise _fail(f"field {extra[0]!r} is not allowed in a {doc.kind} document", text, extra[0])
    n = doc.dim
    dim_v = doc.fields.get("dim_v")
    for name, value in doc.fields.items():
        if name not in _TENSORS:
            continue
        if name in ("rho", "mu", "theta", "gamma"):
            if dim_v is None:
                raise _fail(f"{name} needs dim_v", text, name)
            shape = (n, dim_v, dim_v)
        else:
            shape = (n,) * _TENSORS[name]
        if value.size == 0 and 0 in shape:
            doc.fields[name] = qarray(np.zeros(shape, dtype=object))
        elif value.shape != shape:
            raise _fail(f"{name} has shape {value.shape}, expected {shape}", text, name)
    if "split" in doc.fields and sum(doc.fields["split"]) != n:
        raise _fail(f"split {list(doc.fields['split'])} does not add up to dim {n}", text, "split")


def parse_document(data: str | bytes) -> Document:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(f"input is not UTF-8: {exc.reason}") from None
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedInput(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise MalformedInput("a document must be a JSON object", 1, 1)
    unknown = sorted(set(raw) - set(FIELD_ORDER))
    if unknown:
        raise _fail(f"unknown field {unknown[0]!r}", data, unknown[0])
    for key in ("kind", "dim"):
        if key not in raw:
            raise MalformedInput(f"missing field {key!r}", 1, 1)
    kind, dim = raw["kind"], raw["dim"]
    if not isinstance(kind, str):
        raise _fail("kind must be a string", data)
    if type(dim) is not int:
        raise _fail("dim must be an integer", data, "dim")
    fields = {}
    for name, value in raw.items():
        if name in ("kind", "dim"):
            continue
        if name in _TENSORS:
            fields[name] = _parse_tensor(value, data, name)
        elif name == "weight":
            fields[name] = _parse_scalar(value, data, name)
        elif name == "split":
            if not (isinstance(value, list) and len(value) == 2
                    and all(type(v) is int and v >= 0 for v in value)):
                raise _fail("split must be a pair of nonnegative integers", data, name)
            fields[name] = tuple(value)
        elif name == "dim_v":
            if type(value) is not int or value < 0:
                raise _fail("dim_v must be a nonnegative integer", data, name)
            fields[name] = value
    doc = Document(kind, dim, fields)
    _validate(doc, data)
    return doc
