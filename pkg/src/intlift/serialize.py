"""JSON wire formats.

Numbers in K travel as strings (``"1/2 + 3*lam"``), integers as JSON
integers, never floats.  Every ``*_from_json`` validates its input against
the matching schema before building objects.
"""

from __future__ import annotations

from typing import Any

import jsonschema
import numpy as np

from .algebroid import AlgebroidPresentation, MonodromyReport, Source
from .complex import (
    ChainComplex,
    Cochain,
    HomologyResult,
    SimplicialInput,
    from_simplicial,
    homology,
)
from .equivariant import FormSubspace, GroupAction
from .errors import ParseError, SchemaError
from .exact import KNumber, SymbolBasis, coerce, format_knumber, kmatrix, parse_knumber, zmatrix
from .lift import LiftResult

_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_K_ENTRY = {"oneOf": [{"type": "string"}, {"type": "integer"}]}
_K_MATRIX = {"type": "array", "items": {"type": "array", "items": _K_ENTRY}}

COMPLEX_SCHEMA = {
    "type": "object",
    "oneOf": [
        {
            "required": ["dims", "boundaries"],
            "properties": {
                "dims": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
                "boundaries": {"type": "array", "items": _INT_MATRIX},
            },
        },
        {
            "required": ["facets"],
            "properties": {
                "vertices": {"type": "integer", "minimum": 0},
                "facets": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            },
        },
    ],
}

PRESENTATION_SCHEMA = {
    "type": "object",
    "properties": {
        "symbols": {"type": "array", "items": {"type": "string"}},
        "r": {"type": "integer", "minimum": 0},
        "ell": {"type": "integer", "minimum": 0},
        "periods": _K_MATRIX,
        "simply_connected": {"type": "boolean"},
        "complex": COMPLEX_SCHEMA,
        "cochain": _K_MATRIX,
        "degree": {"type": "integer", "minimum": 0},
    },
    "anyOf": [
        {"required": ["r", "ell", "periods"]},
        {"required": ["complex", "cochain"]},
    ],
}

MONODROMY_SCHEMA = {
    "type": "object",
    "required": ["generators", "free_rank", "real_span_dim", "discrete"],
    "properties": {
        "generators": _K_MATRIX,
        "free_rank": {"type": "integer"},
        "real_span_dim": {"type": "integer"},
        "discrete": {"type": "boolean"},
    },
}

LIFT_SCHEMA = {
    "type": "object",
    "required": [
        "kind", "n", "u", "total_periods", "fiber_map", "kernel", "discrete",
        "degenerate", "base", "symbols",
    ],
    "properties": {
        "kind": {"enum": ["almeida-molino", "de-rham"]},
        "n": {"type": "integer"},
        "u": _INT_MATRIX,
        "total_periods": _K_MATRIX,
        "fiber_map": _K_MATRIX,
        "kernel": _K_MATRIX,
        "discrete": {"type": "boolean"},
        "degenerate": {"type": "boolean"},
        "base": PRESENTATION_SCHEMA,
        "symbols": {"type": "array", "items": {"type": "string"}},
        "certificate": MONODROMY_SCHEMA,
    },
}

HOMOLOGY_SCHEMA = {
    "type": "object",
    "required": ["degree", "betti", "torsion", "cycle_basis"],
    "properties": {
        "degree": {"type": "integer"},
        "betti": {"type": "integer"},
        "torsion": {"type": "array", "items": {"type": "integer"}},
        "cycle_basis": _INT_MATRIX,
    },
}

GROUP_ACTION_SCHEMA = {
    "type": "object",
    "required": ["elements", "table"],
    "properties": {
        "complex": COMPLEX_SCHEMA,
        "elements": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["matrices"],
                "properties": {"matrices": {"type": "array", "items": _INT_MATRIX}},
            },
        },
        "table": _INT_MATRIX,
    },
}

EQUIVARIANT_SCHEMA = {
    "type": "object",
    "required": ["complex", "elements", "table", "forms"],
    "properties": {
        **GROUP_ACTION_SCHEMA["properties"],
        "symbols": {"type": "array", "items": {"type": "string"}},
        "forms": {"type": "array", "items": {"type": "array", "items": _K_ENTRY}},
    },
}


def validate(doc: Any, schema: dict, what: str):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{what}: {exc.message}" + (f" at /{path}" if path else "")) from None


# matrices ---------------------------------------------------------------


def kmatrix_to_json(m: np.ndarray) -> list[list[str]]:
    return [[format_knumber(coerce(x)) for x in row] for row in np.asarray(m, dtype=object)]


def zmatrix_to_json(m: np.ndarray) -> list[list[int]]:
    return [[int(x) for x in row] for row in np.asarray(m, dtype=object)]


def _parse_entry(x, allowed) -> KNumber:
    if isinstance(x, bool):
        raise ParseError("booleans are not numbers")
    if isinstance(x, int):
        return KNumber.rational(x)
    return parse_knumber(x, allowed)


def kmatrix_from_json(rows, shape=None, symbols: SymbolBasis | None = None) -> np.ndarray:
    allowed = None if symbols is None else symbols.names
    parsed = [[_parse_entry(x, allowed) for x in row] for row in rows]
    if shape is None:
        if not parsed:
            raise SchemaError("empty matrix needs an explicit shape")
        shape = (len(parsed), len(parsed[0]))
    try:
        return kmatrix(parsed, shape=shape)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


# complexes --------------------------------------------------------------


def complex_to_json(c: ChainComplex) -> dict:
    return {"dims": list(c.dims), "boundaries": [zmatrix_to_json(b) for b in c.boundaries]}


def complex_from_json(doc: dict) -> ChainComplex:
    validate(doc, COMPLEX_SCHEMA, "complex")
    if "facets" in doc:
        facets = doc["facets"]
        nv = doc.get("vertices", 1 + max((v for f in facets for v in f), default=-1))
        return from_simplicial(SimplicialInput(nv, tuple(tuple(f) for f in facets)))
    dims = doc["dims"]
    bds = []
    for k, b in enumerate(doc["boundaries"], start=1):
        shape = (dims[k - 1], dims[k]) if k < len(dims) else None
        try:
            bds.append(zmatrix(b, shape=shape))
        except ValueError as exc:
            raise SchemaError(f"boundary {k}: {exc}") from None
    return ChainComplex(tuple(dims), tuple(bds))


def homology_to_json(h: HomologyResult) -> dict:
    return {
        "degree": h.degree,
        "betti": h.betti,
        "torsion": list(h.torsion),
        "cycle_basis": zmatrix_to_json(h.cycle_basis),
    }


def homology_from_json(doc: dict, n_cells: int) -> HomologyResult:
    validate(doc, HOMOLOGY_SCHEMA, "homology")
    basis = zmatrix(doc["cycle_basis"], shape=(doc["betti"], n_cells))
    return HomologyResult(doc["degree"], doc["betti"], tuple(doc["torsion"]), basis)


# presentations ------------------------------------------------------------


def presentation_to_json(p: AlgebroidPresentation) -> dict:
    doc = {
        "symbols": list(p.symbols.symbols),
        "r": p.r,
        "ell": p.ell,
        "periods": kmatrix_to_json(p.periods),
        "simply_connected": p.simply_connected,
    }
    if p.source is not None:
        doc["complex"] = complex_to_json(p.source.complex)
        doc["cochain"] = kmatrix_to_json(p.source.cochain.values)
        doc["degree"] = p.source.cochain.degree
    return doc


def presentation_from_json(doc: dict) -> AlgebroidPresentation:
    validate(doc, PRESENTATION_SCHEMA, "presentation")
    symbols = SymbolBasis(doc.get("symbols", []))
    sc = bool(doc.get("simply_connected", False))
    if "complex" in doc:
        c = complex_from_json(doc["complex"])
        degree = doc.get("degree", 2)
        if not 0 <= degree <= c.top:
            raise SchemaError(f"degree {degree} outside the complex")
        rows = doc["cochain"]
        ell = doc.get("ell", len(rows[0]) if rows else 0)
        values = kmatrix_from_json(rows, (c.dims[degree], ell), symbols)
        h = homology(c, degree)
        p = AlgebroidPresentation.from_cochain(
            c, Cochain(degree, values), h, simply_connected=sc, symbols=symbols
        )
        if "periods" in doc:
            given = kmatrix_from_json(doc["periods"], (p.r, p.ell), symbols)
            if not all(a == b for a, b in zip(given.flat, p.periods.flat)):
                raise SchemaError("stated periods disagree with the cochain")
        return p
    periods = kmatrix_from_json(doc["periods"], (doc["r"], doc["ell"]), symbols)
    return AlgebroidPresentation(symbols, doc["r"], doc["ell"], periods, sc)


def monodromy_to_json(m: MonodromyReport) -> dict:
    return {
        "generators": kmatrix_to_json(m.generators),
        "free_rank": m.free_rank,
        "real_span_dim": m.real_span_dim,
        "discrete": m.discrete,
    }


# lifts ---------------------------------------------------------------------


def lift_to_json(lr: LiftResult) -> dict:
    return {
        "kind": lr.kind,
        "symbols": list(lr.total.symbols.symbols),
        "n": lr.n,
        "u": zmatrix_to_json(lr.u),
        "base": presentation_to_json(lr.base),
        "total_periods": kmatrix_to_json(lr.total.periods),
        "fiber_map": kmatrix_to_json(lr.fiber_map),
        "kernel": kmatrix_to_json(lr.kernel_basis),
        "discrete": lr.certificate.discrete,
        "degenerate": lr.degenerate,
        "certificate": monodromy_to_json(lr.certificate),
    }


def lift_from_json(doc: dict) -> LiftResult:
    """Rebuild a LiftResult; the certificate is recomputed, not trusted."""
    from .algebroid import is_discrete

    validate(doc, LIFT_SCHEMA, "lift")
    base = presentation_from_json(doc["base"])
    symbols = SymbolBasis(doc["symbols"])
    r = base.r
    tp = doc["total_periods"]
    wide = len(tp[0]) if tp else (len(doc["fiber_map"][0]) if doc["fiber_map"] else 0)
    total = AlgebroidPresentation(
        symbols, r, wide, kmatrix_from_json(tp, (r, wide), symbols), base.simply_connected
    )
    fm = kmatrix_from_json(doc["fiber_map"], (base.ell, wide), symbols)
    kb = kmatrix_from_json(doc["kernel"], (len(doc["kernel"]), wide), symbols)
    u = zmatrix(doc["u"], shape=(len(doc["u"]), len(doc["u"])))
    cert = is_discrete(total.periods)
    return LiftResult(doc["kind"], base, total, fm, kb, cert, u, doc["n"], doc["degenerate"])


# group actions -------------------------------------------------------------


def action_to_json(a: GroupAction) -> dict:
    return {
        "complex": complex_to_json(a.complex),
        "elements": [{"matrices": [zmatrix_to_json(m) for m in g]} for g in a.elements],
        "table": [list(row) for row in a.table],
    }


def action_from_json(doc: dict, c: ChainComplex | None = None) -> GroupAction:
    validate(doc, GROUP_ACTION_SCHEMA, "group action")
    if c is None:
        if "complex" not in doc:
            raise SchemaError("group action needs a complex")
        c = complex_from_json(doc["complex"])
    elems = []
    for g in doc["elements"]:
        mats = g["matrices"]
        if len(mats) != len(c.dims):
            raise SchemaError(f"each element needs {len(c.dims)} matrices")
        try:
            elems.append(tuple(zmatrix(m, shape=(n, n)) for m, n in zip(mats, c.dims)))
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    return GroupAction(c, tuple(elems), tuple(tuple(r) for r in doc["table"]))


def forms_from_json(doc: dict, c: ChainComplex) -> FormSubspace:
    symbols = SymbolBasis(doc.get("symbols", []))
    n2 = c.dims[2] if c.top >= 2 else 0
    basis = []
    for f in doc["forms"]:
        vals = kmatrix_from_json([[x] for x in f], (n2, 1), symbols)
        basis.append(Cochain(2, vals))
    return FormSubspace(c, tuple(basis))


def forms_to_json(e: FormSubspace) -> list[list[str]]:
    return [[row[0] for row in kmatrix_to_json(f.values)] for f in e.basis]


def source_of(p: AlgebroidPresentation) -> Source | None:
    return p.source
