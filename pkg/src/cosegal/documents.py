"""Canonical JSON documents for every object the CLI consumes or emits.

Serialization is canonical: sorted keys, minimal separators, a trailing
newline, entries as integers (rationals fall back to "a/b" strings).  Equal
objects therefore serialize byte-identically, and the CLI's reports are
reproducible.

Schema problems raise DocumentError (CLI exit 2); mathematically broken but
well-formed content (a differential that does not square to zero, a map
that is not a chain map, a failed premonoid axiom) raises ValidationFailure
carrying the named violations (CLI exit 1).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .chain import ChainComplex, ChainMap, GeneratingCofibration, tensor, unit_complex
from .field_linalg import Field, Matrix
from .free_gamma import NALaxDiagram, PlainDiagram
from .phi_epi import Surjection
from .premonoid import (
    StrictMonoid,
    TruncatedPremonoid,
    PremonoidMorphism,
    Violation,
    all_surjections_upto,
)
from .two_constant import K2Instruction, TwoConstantPremonoid

__all__ = [
    "DocumentError",
    "ValidationFailure",
    "canonical_dumps",
    "dump_document",
    "load_document",
    "complex_to_dict",
    "complex_from_dict",
    "map_to_dict",
    "map_from_dict",
    "diagram_to_dict",
    "diagram_from_dict",
    "na_diagram_to_dict",
    "premonoid_to_dict",
    "premonoid_from_dict",
    "morphism_to_dict",
    "two_constant_to_dict",
    "two_constant_from_dict",
    "instruction_to_dict",
    "instruction_from_dict",
]


class DocumentError(Exception):
    """Malformed document: schema or shape problems."""


class ValidationFailure(Exception):
    """Well-formed document with broken mathematics."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def _encode_entry(x):
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"
    return int(x)


def _decode_entry(field: Field, x):
    if isinstance(x, str):
        num, _, den = x.partition("/")
        try:
            return Fraction(int(num), int(den or "1"))
        except ValueError as exc:
            raise DocumentError(f"bad matrix entry {x!r}") from exc
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"bad matrix entry {x!r}")
    return field.coerce(x)


def _matrix_to_rows(m: Matrix) -> list:
    return [
        [_encode_entry(m.data[i, j]) for j in range(m.cols)] for i in range(m.rows)
    ]


def _matrix_from_rows(field: Field, rows, nrows: int, ncols: int) -> Matrix:
    if not isinstance(rows, list) or len(rows) != nrows:
        raise DocumentError("matrix has wrong row count")
    if any(not isinstance(r, list) or len(r) != ncols for r in rows):
        raise DocumentError("matrix has ragged or wrong-length rows")
    return Matrix.from_rows(
        field, [[_decode_entry(field, x) for x in r] for r in rows], cols=ncols
    )


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# complexes and maps
# ---------------------------------------------------------------------------


def complex_to_dict(c: ChainComplex, kind: bool = True) -> dict:
    lo, hi = c.window
    out = {
        "field": c.field.characteristic,
        "window": [lo, hi],
        "dims": {str(n): c.dim(n) for n in c.dims},
        "diff": {str(n): _matrix_to_rows(m) for n, m in c.diff.items()},
    }
    if kind:
        out["kind"] = "complex"
    return out


def _field_from(d: dict) -> Field:
    p = d.get("field")
    if not isinstance(p, int) or isinstance(p, bool):
        raise DocumentError("missing or non-integer field characteristic")
    try:
        return Field(p)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def complex_from_dict(d: dict, max_dim: int | None = None) -> ChainComplex:
    if not isinstance(d, dict):
        raise DocumentError("complex document must be an object")
    field = _field_from(d)
    dims_raw = d.get("dims", {})
    if not isinstance(dims_raw, dict):
        raise DocumentError("dims must be an object")
    dims = {}
    for k, v in dims_raw.items():
        try:
            deg = int(k)
        except ValueError as exc:
            raise DocumentError(f"bad degree key {k!r}") from exc
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise DocumentError(f"bad dimension at degree {k}")
        if max_dim is not None and v > max_dim:
            raise DocumentError(
                f"dimension {v} at degree {k} exceeds the safety cap {max_dim}"
            )
        if v:
            dims[deg] = v
    diff = {}
    diff_raw = d.get("diff", {})
    if not isinstance(diff_raw, dict):
        raise DocumentError("diff must be an object")
    for k, rows in diff_raw.items():
        try:
            deg = int(k)
        except ValueError as exc:
            raise DocumentError(f"bad degree key {k!r}") from exc
        diff[deg] = _matrix_from_rows(field, rows, dims.get(deg - 1, 0), dims.get(deg, 0))
    try:
        return ChainComplex(field, dims, diff)
    except ValueError as exc:
        raise ValidationFailure([Violation("complex", (str(exc),))]) from exc


def map_to_dict(f: ChainMap, kind: bool = True) -> dict:
    out = {
        "source": complex_to_dict(f.source, kind=False),
        "target": complex_to_dict(f.target, kind=False),
        "components": {str(n): _matrix_to_rows(m) for n, m in f.components.items()},
    }
    if kind:
        out["kind"] = "map"
    return out


def _components_from(
    field: Field, raw, source: ChainComplex, target: ChainComplex, where: tuple
) -> ChainMap:
    if not isinstance(raw, dict):
        raise DocumentError(f"components at {where} must be an object")
    comps = {}
    for k, rows in raw.items():
        try:
            deg = int(k)
        except ValueError as exc:
            raise DocumentError(f"bad degree key {k!r} at {where}") from exc
        comps[deg] = _matrix_from_rows(field, rows, target.dim(deg), source.dim(deg))
    try:
        return ChainMap(source, target, comps)
    except ValueError as exc:
        raise ValidationFailure([Violation("chain-map", where, str(exc))]) from exc


def map_from_dict(d: dict, max_dim: int | None = None) -> ChainMap:
    src = complex_from_dict(d.get("source", {}), max_dim)
    tgt = complex_from_dict(d.get("target", {}), max_dim)
    if src.field != tgt.field:
        raise DocumentError("source/target field mismatch")
    return _components_from(src.field, d.get("components", {}), src, tgt, ("map",))


# ---------------------------------------------------------------------------
# diagrams and premonoids
# ---------------------------------------------------------------------------


def _surjection_key(v: Surjection) -> str:
    return ",".join(str(x) for x in v.map)


def _surjection_from_key(key: str) -> Surjection:
    try:
        arr = [int(x) for x in key.split(",")]
    except ValueError as exc:
        raise DocumentError(f"bad surjection key {key!r}") from exc
    if not arr:
        raise DocumentError("empty surjection key")
    try:
        return Surjection(len(arr), max(arr) + 1, tuple(arr))
    except ValueError as exc:
        raise DocumentError(f"bad surjection key {key!r}: {exc}") from exc


def _level_objects(d: dict, max_dim: int | None) -> tuple[int, dict]:
    level = d.get("level")
    if not isinstance(level, int) or isinstance(level, bool) or level < 2:
        raise DocumentError("level must be an integer >= 2")
    objs_raw = d.get("objects")
    if not isinstance(objs_raw, dict):
        raise DocumentError("objects must be an object")
    if set(objs_raw) != {str(n) for n in range(1, level + 1)}:
        raise DocumentError("objects must cover levels 1..N")
    objects = {int(k): complex_from_dict(v, max_dim) for k, v in objs_raw.items()}
    return level, objects


def _structure_from(d: dict, level: int, objects: dict) -> dict:
    raw = d.get("structure")
    if not isinstance(raw, dict):
        raise DocumentError("structure must be an object")
    field = objects[1].field
    structure = {}
    for key, comps in raw.items():
        v = _surjection_from_key(key)
        if v.source_size > level:
            raise DocumentError(f"structure key {key!r} beyond the truncation level")
        structure[v] = _components_from(
            field, comps, objects[v.target_size], objects[v.source_size], ("structure", key)
        )
    needed = {s for s in all_surjections_upto(level)}
    missing = needed - set(structure)
    if missing:
        raise DocumentError(f"missing structure maps, e.g. {sorted(missing)[0]}")
    return structure


def diagram_to_dict(f: PlainDiagram) -> dict:
    return {
        "kind": "diagram",
        "level": f.level,
        "objects": {str(n): complex_to_dict(c, kind=False) for n, c in f.objects.items()},
        "structure": {
            _surjection_key(v): {
                str(n): _matrix_to_rows(m) for n, m in g.components.items()
            }
            for v, g in f.structure.items()
        },
    }


def diagram_from_dict(d: dict, max_dim: int | None = None) -> PlainDiagram:
    level, objects = _level_objects(d, max_dim)
    structure = _structure_from(d, level, objects)
    try:
        return PlainDiagram(level, objects, structure)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def _laxity_from(d: dict, level: int, objects: dict) -> dict:
    raw = d.get("laxity")
    if not isinstance(raw, dict):
        raise DocumentError("laxity must be an object")
    field = objects[1].field
    laxity = {}
    for key, comps in raw.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise DocumentError(f"bad laxity key {key!r}")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise DocumentError(f"bad laxity key {key!r}") from exc
        if p < 1 or q < 1 or p + q > level:
            raise DocumentError(f"laxity key {key!r} out of range")
        laxity[(p, q)] = _components_from(
            field, comps, tensor(objects[p], objects[q]), objects[p + q], ("laxity", key)
        )
    return laxity


def na_diagram_to_dict(g: NALaxDiagram) -> dict:
    out = diagram_to_dict(g)
    out["kind"] = "na_diagram"
    out["laxity"] = {
        f"{p},{q}": {str(n): _matrix_to_rows(m) for n, m in f.components.items()}
        for (p, q), f in g.laxity.items()
    }
    return out


def na_diagram_from_dict(d: dict, max_dim: int | None = None) -> NALaxDiagram:
    level, objects = _level_objects(d, max_dim)
    structure = _structure_from(d, level, objects)
    laxity = _laxity_from(d, level, objects)
    try:
        return NALaxDiagram(level, objects, structure, laxity=laxity)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def premonoid_to_dict(f: TruncatedPremonoid) -> dict:
    return {
        "kind": "premonoid",
        "level": f.level,
        "objects": {str(n): complex_to_dict(c, kind=False) for n, c in f.objects.items()},
        "structure": {
            _surjection_key(v): {
                str(n): _matrix_to_rows(m) for n, m in g.components.items()
            }
            for v, g in f.structure.items()
        },
        "laxity": {
            f"{p},{q}": {str(n): _matrix_to_rows(m) for n, m in g.components.items()}
            for (p, q), g in f.laxity.items()
        },
        "unit": {str(n): _matrix_to_rows(m) for n, m in f.unit.components.items()},
    }


def premonoid_from_dict(d: dict, max_dim: int | None = None) -> TruncatedPremonoid:
    level, objects = _level_objects(d, max_dim)
    structure = _structure_from(d, level, objects)
    laxity = _laxity_from(d, level, objects)
    field = objects[1].field
    unit = _components_from(
        field, d.get("unit", {}), unit_complex(field), objects[1], ("unit",)
    )
    try:
        return TruncatedPremonoid(level, objects, structure, laxity, unit)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def morphism_to_dict(s: PremonoidMorphism) -> dict:
    return {
        "kind": "morphism",
        "source": premonoid_to_dict(s.source),
        "target": premonoid_to_dict(s.target),
        "components": {
            str(n): {str(d): _matrix_to_rows(m) for d, m in f.components.items()}
            for n, f in s.components.items()
        },
    }


def morphism_from_dict(d: dict, max_dim: int | None = None) -> PremonoidMorphism:
    src = premonoid_from_dict(d.get("source", {}), max_dim)
    tgt = premonoid_from_dict(d.get("target", {}), max_dim)
    raw = d.get("components")
    if not isinstance(raw, dict):
        raise DocumentError("components must be an object")
    comps = {}
    for k, comp in raw.items():
        try:
            n = int(k)
        except ValueError as exc:
            raise DocumentError(f"bad level key {k!r}") from exc
        if n not in src.objects:
            raise DocumentError(f"component level {n} out of range")
        comps[n] = _components_from(
            src.field, comp, src.objects[n], tgt.objects[n], ("component", k)
        )
    try:
        return PremonoidMorphism(src, tgt, comps)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


# ---------------------------------------------------------------------------
# packaged 2-constant premonoids and instructions
# ---------------------------------------------------------------------------


def two_constant_to_dict(f: TwoConstantPremonoid) -> dict:
    return {
        "kind": "two_constant",
        "base": {
            "object": complex_to_dict(f.base.obj, kind=False),
            "mu": {str(n): _matrix_to_rows(m) for n, m in f.base.mu.components.items()},
            "e": {str(n): _matrix_to_rows(m) for n, m in f.base.e.components.items()},
        },
        "apex": complex_to_dict(f.apex, kind=False),
        "h": {str(n): _matrix_to_rows(m) for n, m in f.h.components.items()},
        "unit": {str(n): _matrix_to_rows(m) for n, m in f.unit_map.components.items()},
    }


def two_constant_from_dict(d: dict, max_dim: int | None = None) -> TwoConstantPremonoid:
    base_raw = d.get("base")
    if not isinstance(base_raw, dict):
        raise DocumentError("base must be an object")
    a = complex_from_dict(base_raw.get("object", {}), max_dim)
    fld = a.field
    mu = _components_from(fld, base_raw.get("mu", {}), tensor(a, a), a, ("base", "mu"))
    e = _components_from(fld, base_raw.get("e", {}), unit_complex(fld), a, ("base", "e"))
    try:
        base = StrictMonoid(a, mu, e)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    apex = complex_from_dict(d.get("apex", {}), max_dim)
    h = _components_from(fld, d.get("h", {}), apex, a, ("h",))
    unit = _components_from(fld, d.get("unit", {}), unit_complex(fld), apex, ("unit",))
    try:
        return TwoConstantPremonoid(base, apex, h, unit)
    except ValueError as exc:
        raise ValidationFailure([Violation("two-constant", (str(exc),))]) from exc


def instruction_to_dict(ins: K2Instruction) -> dict:
    return {
        "kind": "instruction",
        "alpha_degree": ins.alpha.degree,
        "q": {str(n): _matrix_to_rows(m) for n, m in ins.q.components.items()},
        "p": {str(n): _matrix_to_rows(m) for n, m in ins.p.components.items()},
    }


def instruction_from_dict(d: dict, f: TwoConstantPremonoid) -> K2Instruction:
    deg = d.get("alpha_degree")
    if not isinstance(deg, int) or isinstance(deg, bool):
        raise DocumentError("alpha_degree must be an integer")
    gen = GeneratingCofibration(deg, f.field)
    q = _components_from(f.field, d.get("q", {}), gen.sphere, f.apex, ("q",))
    p = _components_from(f.field, d.get("p", {}), gen.disc, f.base.obj, ("p",))
    ins = K2Instruction(gen, q, p)
    if f.h @ q != p @ gen.inclusion:
        raise ValidationFailure(
            [Violation("attaching-square", (deg,), "square does not commute")]
        )
    return ins


# ---------------------------------------------------------------------------
# kind-tagged dispatch
# ---------------------------------------------------------------------------

_TO = {
    "complex": complex_to_dict,
    "map": map_to_dict,
    "diagram": diagram_to_dict,
    "na_diagram": na_diagram_to_dict,
    "premonoid": premonoid_to_dict,
    "morphism": morphism_to_dict,
    "two_constant": two_constant_to_dict,
    "instruction": instruction_to_dict,
}


def dump_document(obj, kind: str) -> str:
    if kind not in _TO:
        raise DocumentError(f"unknown document kind {kind!r}")
    return canonical_dumps(_TO[kind](obj))


def load_document(d: dict, max_dim: int | None = None):
    """Load a kind-tagged document; returns (kind, object).

    Instructions are returned raw (they need a premonoid for context).
    """
    if not isinstance(d, dict):
        raise DocumentError("document must be a JSON object")
    kind = d.get("kind")
    if kind == "complex":
        return kind, complex_from_dict(d, max_dim)
    if kind == "map":
        return kind, map_from_dict(d, max_dim)
    if kind == "diagram":
        return kind, diagram_from_dict(d, max_dim)
    if kind == "na_diagram":
        return kind, na_diagram_from_dict(d, max_dim)
    if kind == "premonoid":
        return kind, premonoid_from_dict(d, max_dim)
    if kind == "morphism":
        return kind, morphism_from_dict(d, max_dim)
    if kind == "two_constant":
        return kind, two_constant_from_dict(d, max_dim)
    if kind == "instruction":
        return kind, d
    raise DocumentError(f"unknown document kind {kind!r}")
