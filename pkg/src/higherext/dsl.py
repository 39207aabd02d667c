"""Text formats for groups and cubes.

Group specs::

    S3 | d4 | Z 6 | Z2 x S3            library names (case-insensitive), cyclic groups, products
    perm 4: (0 1 2 3), (0 2)           generators as products of cycles
    table: 0 1; 1 0                    explicit Cayley table, rows separated by ';'

``x`` is left-associative.  A generator written as several cycles, such as
``(0 1)(1 2)``, is composed right to left, so the rightmost cycle acts first;
the cycles need not be disjoint.

Cube documents are JSON::

    {"dim": 2,
     "top": "D4",
     "normal_subgroups": {"R": ["(0 1 2 3)"], "V": ["(0 2)(1 3)", "(1 3)"]},
     "vertices": {"{0,1}": "top", "{1}": "top / R", "{0}": "top / V", "{}": "top / R V"},
     "arrows": {"{0,1}->{1}": {"images": [[g, image], ...]}, "{1}->{}": {"map": [...]}}}

Vertices written as quotient expressions get canonical projections unless an
arrow is given.  Elements are ids, cycle strings for permutation groups, or
lists for product elements.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any

import numpy as np

from .cube import Cube, bits, subsets
from .errors import ParseError, ShapeMismatch, ValidationError
from .groups import (
    FinGroup,
    GroupHom,
    Subgroup,
    cyclic_group,
    direct_product,
    from_permutation_generators,
    from_table,
    hom_from_generator_images,
    identity_hom,
    quotient,
    setwise_product,
    subgroup_generated,
)
from .library import library_group
from .limits import induced_hom

__all__ = ["parse_group", "parse_cube", "serialize_cube", "subset_key", "parse_subset", "resolve_element",
           "parse_permutation", "group_spec_of"]


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def _error(text: str, offset: int, message: str, expected: str | None = None) -> ParseError:
    line, column = _position(text, offset)
    return ParseError(message, line, column, expected)


def parse_permutation(text: str, degree: int, base: int = 0) -> list[int]:
    """A product of cycles such as ``(0 1)(2 3)``; the rightmost cycle acts first."""
    cycles: list[list[int]] = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch != "(":
            raise _error(text, base + pos, f"unexpected {ch!r}", "'('")
        close = text.find(")", pos)
        nxt = text.find("(", pos + 1)
        if close < 0 or (0 <= nxt < close):
            raise _error(text, base + pos, "unclosed cycle", "')'")
        body = text[pos + 1:close].replace(",", " ").split()
        try:
            points = [int(p) for p in body]
        except ValueError as exc:
            raise _error(text, base + pos + 1, "cycle entries must be integers", "integer") from exc
        if any(p < 0 or p >= degree for p in points):
            raise _error(text, base + pos, f"cycle point out of range for degree {degree}")
        if len(set(points)) != len(points):
            raise _error(text, base + pos, "repeated point inside a cycle")
        cycles.append(points)
        pos = close + 1
    perm = list(range(degree))
    for cycle in reversed(cycles):  # the leftmost cycle is applied last
        step = list(range(degree))
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            step[a] = b
        perm = [step[x] for x in perm]
    return perm


def _split_top_level(text: str, sep: str) -> list[tuple[str, int]]:
    """Split on ``sep`` outside parentheses, keeping start offsets."""
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((text[start:k], start))
            start = k + 1
    parts.append((text[start:], start))
    return parts


def _parse_perm_spec(text: str, body_offset: int, header: str) -> FinGroup:
    m = re.fullmatch(r"\s*perm\s+(\d+)\s*", header, flags=re.IGNORECASE)
    if not m:
        raise _error(text, 0, "malformed permutation header", "'perm <degree>:'")
    degree = int(m.group(1))
    body = text[body_offset:]
    gens = []
    for piece, off in _split_top_level(body, ","):
        if not piece.strip():
            raise _error(text, body_offset + off, "empty generator", "cycle")
        gens.append(parse_permutation(piece, degree, body_offset + off))
    return from_permutation_generators(degree, gens)


def _parse_table_spec(text: str, body_offset: int) -> FinGroup:
    rows = []
    for piece, off in _split_top_level(text[body_offset:], ";"):
        if not piece.strip():
            continue
        try:
            rows.append([int(v) for v in piece.replace(",", " ").split()])
        except ValueError as exc:
            raise _error(text, body_offset + off, "table entries must be integers", "integer") from exc
    if not rows or any(len(r) != len(rows) for r in rows):
        raise _error(text, body_offset, "table must be square", "n rows of n entries")
    return from_table(rows)


def _parse_factor(text: str, piece: str, offset: int) -> FinGroup:
    name = piece.strip()
    lead = offset + (len(piece) - len(piece.lstrip()))
    if not name:
        raise _error(text, lead, "missing group", "group name")
    if name.startswith("(") and name.endswith(")"):
        return _parse_product(text, name[1:-1], lead + 1)
    try:
        return library_group(name)
    except ValidationError:
        pass
    m = re.fullmatch(r"[Zz]\s*(\d+)", name)
    if m:
        order = int(m.group(1))
        if order < 1:
            raise _error(text, lead, "cyclic group order must be positive")
        return cyclic_group(order)
    raise _error(text, lead, f"unknown group {name!r}", "library name, 'Z m', 'perm' or 'table'")


def _parse_product(text: str, body: str, offset: int) -> FinGroup:
    pieces = []
    depth, start = 0, 0
    for k, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise _error(text, offset + k, "unbalanced ')'")
        elif depth == 0 and ch in "x×" and (k == 0 or body[k - 1].isspace()) and \
                (k + 1 == len(body) or body[k + 1].isspace()):
            pieces.append((body[start:k], start))
            start = k + 1
    if depth > 0:
        raise _error(text, offset + body.rfind("("), "unclosed '('", "')'")
    pieces.append((body[start:], start))
    G = _parse_factor(text, pieces[0][0], offset + pieces[0][1])
    for piece, off in pieces[1:]:
        H = _parse_factor(text, piece, offset + off)
        label = f"{G.label} x {H.label}" if G.label and H.label else ""
        G = direct_product(G, H, label)[0]
    return G


def parse_group(text: str) -> FinGroup:
    if not isinstance(text, str):
        raise ValidationError("group spec must be a string")
    head, colon, _ = text.partition(":")
    if colon:
        key = head.strip().lower()
        if key.startswith("perm"):
            return _parse_perm_spec(text, len(head) + 1, head)
        if key == "table":
            return _parse_table_spec(text, len(head) + 1)
        raise _error(text, 0, f"unknown spec kind {head.strip()!r}", "'perm' or 'table'")
    return _parse_product(text, text, 0)


def group_spec_of(value: Any) -> FinGroup:
    """A group from a JSON value: a spec string or ``{"table": rows}``."""
    if isinstance(value, str):
        return parse_group(value)
    if isinstance(value, dict) and "table" in value:
        return from_table(value["table"], value.get("label", ""))
    raise ValidationError(f"cannot read a group from {value!r}")


# -- subsets and elements ----------------------------------------------------

def subset_key(S: int) -> str:
    return "{" + ",".join(str(i) for i in bits(S)) + "}"


def parse_subset(key: str, dim: int) -> int:
    m = re.fullmatch(r"\s*\{([\d\s,]*)\}\s*", key)
    if not m:
        raise ValidationError(f"bad subset key {key!r}; expected e.g. '{{0,1}}'")
    S = 0
    for part in m.group(1).replace(",", " ").split():
        i = int(part)
        if i >= dim:
            raise ValidationError(f"subset {key} mentions {i} outside a {dim}-cube")
        S |= 1 << i
    return S


def resolve_element(G: FinGroup, spec: Any, via: GroupHom | None = None) -> int:
    """Element id from an id, a cycle string, or a list of factor elements.

    ``via`` maps from an ambient group whose elements name those of ``G``
    (used for quotient vertices, whose elements are written as elements of the top group).
    """
    if via is not None:
        return int(via.map[resolve_element(via.domain, spec)])
    if isinstance(spec, bool):
        raise ValidationError("booleans are not group elements")
    if isinstance(spec, int):
        if not 0 <= spec < G.order:
            raise ValidationError(f"element id {spec} out of range for order {G.order}")
        return spec
    if isinstance(spec, str):
        if G.perms is None:
            raise ValidationError(f"cycle notation {spec!r} used for a group without a permutation action")
        perm = parse_permutation(spec, G.perms.shape[1])
        hit = np.nonzero((G.perms == np.asarray(perm)).all(axis=1))[0]
        if not len(hit):
            raise ValidationError(f"{spec!r} is not an element of the group")
        return int(hit[0])
    if isinstance(spec, list):
        if G.pairs is None or G.factors is None or len(spec) != 2:
            raise ValidationError("pair notation needs a direct product")
        a = resolve_element(G.factors[0], spec[0])
        b = resolve_element(G.factors[1], spec[1])
        hit = np.nonzero((G.pairs[:, 0] == a) & (G.pairs[:, 1] == b))[0]
        if not len(hit):
            raise ValidationError(f"{spec!r} is not an element of the product")
        return int(hit[0])
    raise ValidationError(f"cannot read a group element from {spec!r}")


# -- cube documents ----------------------------------------------------------

@dataclass
class _Vertex:
    group: FinGroup
    projection: GroupHom | None  # from the top group, for quotient vertices


def _load(document: Any) -> dict:
    if isinstance(document, dict):
        return document
    if isinstance(document, (bytes, str)):
        text = document.decode() if isinstance(document, bytes) else document
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno, "JSON") from exc
        if not isinstance(doc, dict):
            raise ValidationError("cube document must be a JSON object")
        return doc
    raise ValidationError("cube document must be JSON text or a mapping")


def _parse_arrow_key(key: str, dim: int) -> tuple[int, int]:
    if "->" not in key:
        raise ValidationError(f"bad arrow key {key!r}; expected '{{0,1}}->{{1}}'")
    src, dst = key.split("->", 1)
    T, S = parse_subset(src, dim), parse_subset(dst, dim)
    dropped = T & ~S
    if S & ~T or bin(dropped).count("1") != 1:
        raise ValidationError(f"arrow {key} does not drop exactly one index")
    return T, dropped.bit_length() - 1


def parse_cube(document: Any) -> Cube:
    doc = _load(document)
    try:
        dim = int(doc["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError("cube document needs an integer 'dim'") from exc
    if dim < 0:
        raise ShapeMismatch("negative dimension")
    top_group = group_spec_of(doc["top"]) if "top" in doc else None
    named: dict[str, Subgroup] = {}
    for name, gens in (doc.get("normal_subgroups") or {}).items():
        if top_group is None:
            raise ValidationError("named normal subgroups need a 'top' group")
        ids = [resolve_element(top_group, g) for g in gens]
        N = subgroup_generated(top_group, ids)
        if not N.is_normal():
            raise ValidationError(f"subgroup {name} is not normal in the top group")
        named[name] = N

    raw_vertices = doc.get("vertices")
    if not isinstance(raw_vertices, dict):
        raise ValidationError("cube document needs a 'vertices' mapping")
    vertices: dict[int, _Vertex] = {}
    for key, value in raw_vertices.items():
        S = parse_subset(key, dim)
        if S in vertices:
            raise ValidationError(f"vertex {subset_key(S)} given twice")
        vertices[S] = _vertex(value, top_group, named)
    missing = [subset_key(S) for S in subsets(dim) if S not in vertices]
    if missing:
        raise ShapeMismatch(f"missing vertices {missing}")

    given: dict[tuple[int, int], Any] = {}
    for key, value in (doc.get("arrows") or {}).items():
        given[_parse_arrow_key(key, dim)] = value
    edges = {}
    for T in subsets(dim):
        for i in bits(T):
            src, dst = vertices[T], vertices[T & ~(1 << i)]
            spec = given.get((T, i))
            edges[(T, i)] = _arrow(spec, src, dst, f"{subset_key(T)}->{subset_key(T & ~(1 << i))}")
    return Cube(dim, [vertices[S].group for S in subsets(dim)], edges)


def _vertex(value: Any, top: FinGroup | None, named: dict[str, Subgroup]) -> _Vertex:
    if isinstance(value, str) and value.strip().lower().startswith("top"):
        if top is None:
            raise ValidationError("vertex refers to 'top' but no top group is given")
        rest = value.strip()[3:].strip()
        if not rest:
            return _Vertex(top, identity_hom(top))
        if not rest.startswith("/"):
            raise ValidationError(f"bad quotient expression {value!r}; expected 'top / N ...'")
        N = top.trivial_subgroup()
        for name in rest[1:].split():
            if name not in named:
                raise ValidationError(f"unknown normal subgroup {name!r}")
            N = setwise_product(N, named[name])
        _, proj = quotient(top, N)
        return _Vertex(proj.codomain, proj)
    return _Vertex(group_spec_of(value), None)


def _arrow(spec: Any, src: _Vertex, dst: _Vertex, where: str) -> GroupHom:
    if spec is None:
        if src.projection is None or dst.projection is None:
            raise ValidationError(f"arrow {where} is missing and cannot be defaulted")
        return induced_hom(identity_hom(src.projection.domain), src.projection, dst.projection)
    if not isinstance(spec, dict):
        raise ValidationError(f"arrow {where} must be an object with 'images' or 'map'")
    if "map" in spec:
        return GroupHom(src.group, dst.group, spec["map"])
    if "images" in spec:
        sources, targets = [], []
        for pair in spec["images"]:
            if not isinstance(pair, list) or len(pair) != 2:
                raise ValidationError(f"arrow {where}: images must be [source, target] pairs")
            sources.append(resolve_element(src.group, pair[0], src.projection))
            targets.append(resolve_element(dst.group, pair[1], dst.projection))
        return hom_from_generator_images(src.group, dst.group, sources, targets)
    raise ValidationError(f"arrow {where} must give 'images' or 'map'")


def serialize_cube(A: Cube) -> dict:
    """Explicit form: every vertex as a table, every covering arrow as a full map."""
    if not all(isinstance(v, FinGroup) for v in A.vertices):
        raise ShapeMismatch("only cubes of groups serialize")
    vertices = {subset_key(S): {"table": A.vertex(S).table.tolist()} for S in subsets(A.dim)}
    arrows = {}
    for T in subsets(A.dim):
        for i in bits(T):
            arrows[f"{subset_key(T)}->{subset_key(T & ~(1 << i))}"] = {"map": A.edge(T, i).map.tolist()}
    return {"dim": A.dim, "vertices": vertices, "arrows": arrows}
