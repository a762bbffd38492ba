"""JSON and CSV formats.

Rationals are written as ``"n"`` or ``"n/d"`` strings.  :func:`dumps` is
canonical, so parse-then-dump reproduces a dumped file byte for byte.
"""
from __future__ import annotations

import csv
import io as _io
import json
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import DimensionMismatch, ParseError
from .graded.expr import (
    Action,
    ConvexProfile,
    DEFAULT_FIELD,
    Geodesic,
    GradedNormExpr,
    Iota,
    Max,
    Monomial,
    PLFunction,
    Ray,
    Scale0,
    Table,
    Translate,
)
from .graded.ring import SectionRing
from .normspace.joint import JointPresentation
from .normspace.metrics import SpectralMeasure, to_decimal
from .normspace.norms import DiagonalNorm
from .valfield import FieldSpec, as_rat, columns


def rat_str(x) -> str:
    x = as_rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rat(x, what: str = "value") -> Fraction:
    if isinstance(x, (int, str, Fraction)) and not isinstance(x, bool):
        return as_rat(x)
    raise ParseError(f"{what}: expected a rational string, got {x!r}")


def _get(obj: dict, key: str, what: str):
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected an object")
    if key not in obj:
        raise ParseError(f"{what}: missing key {key!r}")
    return obj[key]


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def load_file(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


# --- fields and norms ---------------------------------------------------------------


def field_to_json(field: FieldSpec) -> dict:
    if field.is_trivial:
        return {"kind": "trivial-coefficients"}
    return {"kind": "p-adic", "p": field.p}


def field_from_json(obj) -> FieldSpec:
    kind = _get(obj, "kind", "field")
    if kind == "trivial-coefficients":
        return FieldSpec.trivial()
    if kind == "p-adic":
        p = _get(obj, "p", "field")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError(f"field: p must be an integer, got {p!r}")
        try:
            return FieldSpec.padic(p)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"field: unknown kind {kind!r}")


def norm_to_json(norm: DiagonalNorm) -> dict:
    return {
        "field": field_to_json(norm.field),
        "mode": norm.mode,
        "dim": norm.dim,
        "basis": [[rat_str(x) for x in col] for col in columns(norm.basis)],
        "weights": [rat_str(w) for w in norm.weights],
    }


def norm_from_json(obj) -> DiagonalNorm:
    field = field_from_json(_get(obj, "field", "norm"))
    mode = _get(obj, "mode", "norm")
    if mode not in ("norm", "filtration"):
        raise ParseError(f"norm: unknown mode {mode!r}")
    dim = _get(obj, "dim", "norm")
    cols = _get(obj, "basis", "norm")
    weights = _get(obj, "weights", "norm")
    if not isinstance(cols, list) or not all(isinstance(c, list) for c in cols) or not isinstance(weights, list):
        raise ParseError("norm: basis must be a list of columns and weights a list")
    if not isinstance(dim, int) or len(cols) != dim or any(len(c) != dim for c in cols) or len(weights) != dim:
        raise DimensionMismatch(f"norm: declared dimension {dim!r} does not match the data")
    return DiagonalNorm.from_columns(
        field,
        [[_rat(x, "basis entry") for x in c] for c in cols],
        [_rat(w, "weight") for w in weights],
        mode,
    )


def joint_to_json(jp: JointPresentation) -> dict:
    return {
        "field": field_to_json(jp.field),
        "modes": list(jp.modes),
        "dim": jp.dim,
        "basis": [[rat_str(x) for x in col] for col in columns(jp.basis)],
        "pairs": [[rat_str(u), rat_str(w)] for u, w in jp.pairs],
    }


# --- rings and expressions -------------------------------------------------------------


def ring_to_json(ring: SectionRing) -> dict:
    return ring.to_json()


def ring_from_json(obj) -> SectionRing:
    poly = _get(obj, "polytope", "ring")
    verts = _get(poly, "vertices", "ring polytope")
    if not isinstance(verts, list) or not all(isinstance(v, list) for v in verts):
        raise ParseError("ring: vertices must be a list of integer lists")
    if not all(isinstance(x, int) and not isinstance(x, bool) for v in verts for x in v):
        raise ParseError("ring: vertex coordinates must be integers")
    return SectionRing(tuple(tuple(v) for v in verts))


def profile_to_json(f: ConvexProfile) -> dict:
    return {
        "breakpoints": [[rat_str(x), rat_str(y)] for x, y in f.breakpoints],
        "interval": [rat_str(f.lo), rat_str(f.hi)],
    }


def profile_from_json(obj) -> ConvexProfile:
    pts = _get(obj, "breakpoints", "profile")
    lo, hi = _get(obj, "interval", "profile")
    return ConvexProfile(tuple((_rat(x), _rat(y)) for x, y in pts), _rat(lo), _rat(hi))


def _phi_to_json(phi: PLFunction) -> dict:
    if phi.kind == "interp":
        return {"profile": [[rat_str(x), rat_str(y)] for x, y in phi.data]}
    return {phi.kind: [[rat_str(c) for c in piece] for piece in phi.data]}


def _phi_from_json(obj) -> PLFunction:
    if "profile" in obj:
        return PLFunction("interp", tuple((_rat(x), _rat(y)) for x, y in obj["profile"]))
    for kind in ("min", "max"):
        if kind in obj:
            return PLFunction(kind, tuple(tuple(_rat(c) for c in piece) for piece in obj[kind]))
    raise ParseError("monomial: needs one of 'profile', 'min', 'max'")


def expr_to_json(e: GradedNormExpr) -> dict:
    if isinstance(e, Monomial):
        out = {"node": "monomial", "mode": e.mode, "field": field_to_json(e.field)}
        out.update(_phi_to_json(e.phi))
        return out
    if isinstance(e, Table):
        return {"node": "table", "norms": [norm_to_json(n) for n in e.norms]}
    if isinstance(e, Translate):
        return {"node": "translate", "expr": expr_to_json(e.expr), "c": rat_str(e.c)}
    if isinstance(e, Scale0):
        return {"node": "scale0", "expr": expr_to_json(e.expr), "t": rat_str(e.t)}
    if isinstance(e, Max):
        return {"node": "max", "left": expr_to_json(e.left), "right": expr_to_json(e.right)}
    if isinstance(e, Geodesic):
        return {"node": "geodesic", "left": expr_to_json(e.left), "right": expr_to_json(e.right), "t": rat_str(e.t)}
    if isinstance(e, Action):
        return {"node": "action", "nu0": expr_to_json(e.nu0), "alpha": expr_to_json(e.alpha)}
    if isinstance(e, Ray):
        return {"node": "ray", "nu0": expr_to_json(e.nu0), "alpha": expr_to_json(e.alpha), "t": rat_str(e.t)}
    if isinstance(e, Iota):
        return {"node": "iota", "f": profile_to_json(e.f), "nu0": expr_to_json(e.nu0)}
    raise ParseError(f"cannot serialise {type(e).__name__}")


def expr_from_json(obj, ring: SectionRing) -> GradedNormExpr:
    """Parse an expression object.  A top-level ``"ring"`` key must match ``ring``."""
    if isinstance(obj, dict) and "ring" in obj and "node" not in obj:
        if ring_from_json(obj["ring"]) != ring:
            raise DimensionMismatch("expression file was written for a different polytope")
        obj = _get(obj, "expr", "expression file")
    node = _get(obj, "node", "expression")

    def sub(key):
        return expr_from_json(_get(obj, key, node), ring)

    if node == "monomial":
        field = field_from_json(obj["field"]) if "field" in obj else DEFAULT_FIELD
        return Monomial(ring, _phi_from_json(obj), obj.get("mode", "norm"), field)
    if node == "table":
        return Table(ring, tuple(norm_from_json(n) for n in _get(obj, "norms", node)))
    if node == "translate":
        return Translate(sub("expr"), _rat(_get(obj, "c", node)))
    if node == "scale0":
        return Scale0(sub("expr"), _rat(_get(obj, "t", node)))
    if node == "max":
        return Max(sub("left"), sub("right"))
    if node == "geodesic":
        return Geodesic(sub("left"), sub("right"), _rat(_get(obj, "t", node)))
    if node == "action":
        return Action(sub("nu0"), sub("alpha"))
    if node == "ray":
        return Ray(sub("nu0"), sub("alpha"), _rat(_get(obj, "t", node)))
    if node == "iota":
        return Iota(profile_from_json(_get(obj, "f", node)), sub("nu0"))
    raise ParseError(f"unknown expression node {node!r}")


# --- CSV ------------------------------------------------------------------------------------


def csv_text(header: Sequence[str], rows: Iterable[Sequence], exact: Sequence[str] = ()) -> str:
    """CSV with a ``<name>_decimal`` column after every column named in ``exact``."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    head = []
    for h in header:
        head.append(h)
        if h in exact:
            head.append(f"{h}_decimal")
    w.writerow(head)
    for row in rows:
        out = []
        for h, x in zip(header, row):
            if h in exact:
                if x is None:
                    out += ["", ""]
                else:
                    x = as_rat(x) if not isinstance(x, float) else x
                    out += [rat_str(x) if isinstance(x, Fraction) else str(x), to_decimal(x)]
            else:
                out.append("" if x is None else str(x))
        w.writerow(out)
    return buf.getvalue()


def measure_csv(m: SpectralMeasure) -> str:
    return csv_text(["lambda", "mass"], [(x, m.mass) for x in m.atoms], exact=("lambda", "mass"))


__all__ = [
    "csv_text",
    "dumps",
    "expr_from_json",
    "expr_to_json",
    "field_from_json",
    "field_to_json",
    "joint_to_json",
    "load_file",
    "loads",
    "measure_csv",
    "norm_from_json",
    "norm_to_json",
    "profile_from_json",
    "profile_to_json",
    "rat_str",
    "ring_from_json",
    "ring_to_json",
]
