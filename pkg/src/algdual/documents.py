"""The JSON document format shared by the library and the CLI.

One parser covers every kind: algebras (``ibsl``, ``ba``, ``bsl``, ``dl``,
``sl``), GR spaces (``gr``, with an optional involution), ``poset``,
``space``, and the two system kinds.  Operation tables are row-major (row =
first argument); inside ``ops`` an integer is a constant, a flat list a
unary map and a nested list a binary table.  Transition/bonding keys look
like ``"0->1"``; identity arrows may be omitted and are synthesized on load.

Parsing distinguishes malformed documents (wrong shapes, out-of-range
entries: :class:`DocumentError`, CLI exit 2) from well-formed documents that
violate their kind's axioms (reported by :func:`check_document`, CLI
exit 1).  Serialization is canonical, so equal objects produce byte-equal
documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from .algebra import (
    Check,
    FiniteAlgebra,
    JoinSemilattice,
    ValidationReport,
    is_partial_order,
    validate_for_kind,
)
from .duality import FiniteSpace, GRSpace, GRSpaceWithInvolution, base_of
from .duality import validate_gr_involution, validate_gr_space
from .errors import DocumentError, InvalidSystem
from .lattices import FinitePoset
from .systems import DirectSystem, InverseSystem, check_system

ALGEBRA_KINDS = ("ibsl", "ba", "bsl", "dl", "sl")
KINDS = ALGEBRA_KINDS + ("gr", "poset", "space", "direct-system",
                         "inverse-system")


@dataclass(frozen=True)
class SystemParts:
    """Shape-valid but not yet coherence-checked system data."""

    variant: str  # "direct" | "inverse"
    index_algebra: FiniteAlgebra
    bottom: int
    objects: dict
    arrows: dict
    fiber_kind: Optional[str]


@dataclass(frozen=True)
class Document:
    kind: str
    payload: object


def _fail(msg: str) -> DocumentError:
    return DocumentError(f"malformed document: {msg}")


def _expect_size(data) -> int:
    size = data.get("size")
    if not isinstance(size, int) or isinstance(size, bool):
        raise _fail("'size' must be an integer")
    return size


def _parse_algebra(kind: str, data: dict) -> FiniteAlgebra:
    size = _expect_size(data)
    ops = data.get("ops")
    if not isinstance(ops, dict):
        raise _fail("'ops' must be an object")
    names = data.get("names")
    binary, unary, constants = {}, {}, {}
    for name, value in ops.items():
        if isinstance(value, bool):
            raise _fail(f"op {name!r} has a boolean value")
        if isinstance(value, int):
            constants[name] = value
        elif isinstance(value, list) and value and isinstance(value[0], list):
            binary[name] = value
        elif isinstance(value, list):
            unary[name] = value
        else:
            raise _fail(f"op {name!r} must be an int, list or table")
    try:
        return FiniteAlgebra(size, binary, unary, constants,
                             tuple(names) if names else None)
    except (ValueError, TypeError) as exc:
        raise _fail(str(exc))


def _parse_matrix01(data, key: str, size: int):
    m = data.get(key)
    if (not isinstance(m, list) or len(m) != size
            or any(not isinstance(r, list) or len(r) != size for r in m)):
        raise _fail(f"'{key}' must be a {size}x{size} matrix")
    if any(v not in (0, 1, True, False) for r in m for v in r):
        raise _fail(f"'{key}' entries must be 0 or 1")
    return tuple(tuple(bool(v) for v in r) for r in m)


def _parse_gr(data: dict) -> Union[GRSpace, GRSpaceWithInvolution]:
    size = _expect_size(data)
    leq = _parse_matrix01(data, "leq", size)
    try:
        base = GRSpace(size, data.get("star", ()), leq,
                       data.get("c0", -1), data.get("c1", -1),
                       data.get("calpha", -1))
        if "neg" in data:
            return GRSpaceWithInvolution(base, data["neg"])
        return base
    except (ValueError, TypeError) as exc:
        raise _fail(str(exc))


def _parse_arrow_key(key: str, size: int) -> tuple[int, int]:
    parts = key.split("->")
    if len(parts) != 2:
        raise _fail(f"arrow key {key!r} is not of the form 'i->j'")
    try:
        i, j = int(parts[0]), int(parts[1])
    except ValueError:
        raise _fail(f"arrow key {key!r} is not a pair of integers")
    if not (0 <= i < size and 0 <= j < size):
        raise _fail(f"arrow key {key!r} is out of range")
    return i, j


def _parse_system(kind: str, data: dict) -> SystemParts:
    index_doc = data.get("index")
    if not isinstance(index_doc, dict):
        raise _fail("'index' must be a semilattice document")
    index_algebra = _parse_algebra("sl", index_doc)
    if "join" not in index_algebra.binary_ops:
        raise _fail("index semilattice needs a 'join' op")
    bottom = index_algebra.constants.get("bottom")
    if bottom is None:
        join = index_algebra.binary("join")
        bottom = next(
            (b for b in range(index_algebra.size)
             if all(join[b][x] == x for x in range(index_algebra.size))), 0)

    variant = "direct" if kind == "direct-system" else "inverse"
    obj_key = "fibers" if variant == "direct" else "terms"
    raw_objects = data.get(obj_key)
    if not isinstance(raw_objects, dict):
        raise _fail(f"'{obj_key}' must be an object keyed by index element")
    objects, fiber_kind = {}, None
    for key, doc in raw_objects.items():
        try:
            i = int(key)
        except ValueError:
            raise _fail(f"object key {key!r} is not an integer")
        if not (0 <= i < index_algebra.size):
            raise _fail(f"object key {key!r} is out of range")
        if not isinstance(doc, dict):
            raise _fail(f"object {key!r} must be a document")
        inner = doc.get("kind")
        if variant == "direct":
            if inner not in ALGEBRA_KINDS:
                raise _fail(f"fiber {key!r} has unsupported kind {inner!r}")
            if fiber_kind is None:
                fiber_kind = inner
            elif fiber_kind != inner:
                raise _fail("fibers carry inconsistent kinds")
            objects[i] = _parse_algebra(inner, doc)
        else:
            if inner == "space":
                objects[i] = FiniteSpace(_expect_size(doc))
            elif inner == "poset":
                size = _expect_size(doc)
                leq = _parse_matrix01(doc, "leq", size)
                w = is_partial_order(leq)
                if w is not None:
                    raise _fail(f"term {key!r} order is not a partial order")
                objects[i] = FinitePoset(size, leq)
            else:
                raise _fail(f"term {key!r} has unsupported kind {inner!r}")

    arrow_key = "transitions" if variant == "direct" else "bondings"
    raw_arrows = data.get(arrow_key, {})
    if not isinstance(raw_arrows, dict):
        raise _fail(f"'{arrow_key}' must be an object keyed by 'i->j'")
    arrows = {}
    for key, vec in raw_arrows.items():
        i, j = _parse_arrow_key(key, index_algebra.size)
        if not isinstance(vec, list) or any(
                not isinstance(v, int) or isinstance(v, bool) for v in vec):
            raise _fail(f"arrow {key!r} must be a list of integers")
        arrows[(i, j)] = tuple(vec)
    for i in objects:
        arrows.setdefault((i, i), tuple(range(objects[i].size)))
    return SystemParts(variant, index_algebra, bottom, objects, arrows,
                       fiber_kind)


def parse_document(data: dict) -> Document:
    if not isinstance(data, dict):
        raise _fail("top level must be an object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise _fail(f"unknown kind {kind!r}")
    if kind in ALGEBRA_KINDS:
        return Document(kind, _parse_algebra(kind, data))
    if kind == "gr":
        return Document(kind, _parse_gr(data))
    if kind == "space":
        size = _expect_size(data)
        if size < 0:
            raise _fail("space size must be non-negative")
        return Document(kind, FiniteSpace(size))
    if kind == "poset":
        size = _expect_size(data)
        leq = _parse_matrix01(data, "leq", size)
        return Document(kind, (size, leq))
    return Document(kind, _parse_system(kind, data))


def loads_document(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno} "
            f"(offset {exc.pos}): {exc.msg}")
    return parse_document(data)


def load_document(path: str) -> Document:
    from .algebra import builtin

    if path.startswith("builtin:"):
        name = path.split(":", 1)[1]
        kind = {"two": "ibsl", "s2": "ibsl", "wk": "ibsl",
                "three": "bsl"}.get(name)
        if kind is None:
            raise DocumentError(f"unknown builtin {name!r}")
        return Document(kind, builtin(name))
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path!r}: {exc}")
    return loads_document(text)


# ---------------------------------------------------------------------------
# Semantic checking and realization
# ---------------------------------------------------------------------------

def check_document(doc: Document) -> ValidationReport:
    """Kind-appropriate semantic validation of a shape-valid document."""
    if doc.kind in ALGEBRA_KINDS:
        return validate_for_kind(doc.payload, doc.kind)
    if doc.kind == "gr":
        if isinstance(doc.payload, GRSpaceWithInvolution):
            return validate_gr_involution(doc.payload)
        return validate_gr_space(doc.payload)
    if doc.kind == "space":
        return ValidationReport("finite discrete space",
                                (Check("size-non-negative",
                                       doc.payload.size >= 0),))
    if doc.kind == "poset":
        size, leq = doc.payload
        w = is_partial_order(leq)
        return ValidationReport("finite poset",
                                (Check("order-partial", w is None, w),))
    parts = doc.payload
    return check_system(parts.index_algebra, parts.bottom, parts.objects,
                        parts.arrows, parts.fiber_kind,
                        inverse=(parts.variant == "inverse"),
                        subject=doc.kind)


def realize_document(doc: Document):
    """Build the validated object; assumes :func:`check_document` passed."""
    if doc.kind in ALGEBRA_KINDS or doc.kind in ("gr", "space"):
        return doc.payload
    if doc.kind == "poset":
        size, leq = doc.payload
        return FinitePoset(size, leq)
    parts = doc.payload
    index = JoinSemilattice(
        parts.index_algebra if "bottom" in parts.index_algebra.constants
        else parts.index_algebra.with_ops(constants={"bottom": parts.bottom}),
        parts.bottom)
    if parts.variant == "direct":
        return DirectSystem(index, parts.objects, parts.arrows,
                            parts.fiber_kind)
    return InverseSystem(index, parts.objects, parts.arrows)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _algebra_data(kind: str, a: FiniteAlgebra) -> dict:
    ops = {}
    for name, t in a.binary_ops.items():
        ops[name] = [list(row) for row in t]
    for name, t in a.unary_ops.items():
        ops[name] = list(t)
    for name, c in a.constants.items():
        ops[name] = c
    data = {"kind": kind, "size": a.size, "ops": ops}
    if a.names:
        data["names"] = list(a.names)
    return data


def document_data(obj, kind: Optional[str] = None) -> dict:
    """Serialize a library object to its JSON document dict."""
    if isinstance(obj, Document):
        return document_data(obj.payload, obj.kind)
    if isinstance(obj, FiniteAlgebra):
        if kind is None:
            raise ValueError("algebra serialization needs an explicit kind")
        return _algebra_data(kind, obj)
    if isinstance(obj, (GRSpace, GRSpaceWithInvolution)):
        base = base_of(obj)
        data = {"kind": "gr", "size": base.size,
                "star": [list(r) for r in base.star],
                "leq": [[1 if v else 0 for v in r] for r in base.leq],
                "c0": base.c0, "c1": base.c1, "calpha": base.calpha}
        if isinstance(obj, GRSpaceWithInvolution):
            data["neg"] = list(obj.neg)
        return data
    if isinstance(obj, FiniteSpace):
        return {"kind": "space", "size": obj.size}
    if isinstance(obj, FinitePoset):
        return {"kind": "poset", "size": obj.size,
                "leq": [[1 if v else 0 for v in r] for r in obj.leq]}
    if isinstance(obj, DirectSystem):
        return {
            "kind": "direct-system",
            "index": _algebra_data("sl", obj.index.algebra),
            "fibers": {str(i): _algebra_data(obj.kind, obj.fiber(i))
                       for i in range(obj.index.size)},
            "transitions": {f"{i}->{j}": list(v)
                            for (i, j), v in sorted(obj.transitions.items())
                            if i != j},
        }
    if isinstance(obj, InverseSystem):
        return {
            "kind": "inverse-system",
            "index": _algebra_data("sl", obj.index.algebra),
            "terms": {str(i): document_data(obj.term(i))
                      for i in range(obj.index.size)},
            "bondings": {f"{i}->{j}": list(v)
                         for (i, j), v in sorted(obj.bondings.items())
                         if i != j},
        }
    raise ValueError(f"cannot serialize {type(obj).__name__}")


def dumps_document(obj, kind: Optional[str] = None) -> str:
    """Canonical UTF-8 JSON text: sorted keys, two-space indent, trailing
    newline.  Equal objects serialize byte-identically."""
    return json.dumps(document_data(obj, kind), ensure_ascii=False,
                      indent=2, sort_keys=True) + "\n"
