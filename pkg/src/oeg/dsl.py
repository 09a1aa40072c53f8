"""Textual formats: the line-based graph description language, point and
witness codecs, and partition files.

Graph files::

    graph NAME
    vertex u, v
    edge a: u -> v          # multiplicity 1
    edge p * 3: u -> v      # three parallel edges p[0], p[1], p[2]
    edge q * inf: v -> v    # an infinite parallel class

Points are dotted edge lists: ``@v`` (the empty path at v), ``a.b``,
``a.(b)*``, ``A[6].(B[0])*``.  Bare edge names address index 0; classes of
multiplicity one always print bare.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Mapping

from .boundary import BoundaryPoint, canonicalize
from .errors import InputError, ParseError
from .graphs import INF, Edge, Graph, Path
from .moves import Block, OutSplitPartition

_IDENT = r"[A-Za-z0-9_^]+"
_GRAPH_RE = re.compile(rf"^graph\s+({_IDENT})\s*$")
_VERTEX_RE = re.compile(r"^vertex\s+(.+)$")
_EDGE_RE = re.compile(
    rf"^edge\s+({_IDENT})\s*(?:\*\s*(\d+|inf))?\s*:\s*({_IDENT})\s*->\s*({_IDENT})\s*$"
)
_EDGE_TOKEN_RE = re.compile(rf"^({_IDENT})(?:\[(\d+)\])?$")


@dataclass(frozen=True)
class GraphDocument:
    name: str
    graph: Graph
    lines: dict[str, int]  # vertex/class identifier -> source line


def parse_graph(text: str) -> GraphDocument:
    """Parse the graph description language with positioned diagnostics."""
    name = None
    vertices: list[str] = []
    classes: list[tuple] = []
    lines: dict[str, int] = {}
    seen_vertices: set[str] = set()
    seen_classes: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if name is None:
            m = _GRAPH_RE.match(line)
            if not m:
                raise ParseError("expected a 'graph NAME' header", lineno, 1)
            name = m.group(1)
            continue
        m = _VERTEX_RE.match(line)
        if m:
            for tok in m.group(1).split(","):
                v = tok.strip()
                if not re.fullmatch(_IDENT, v):
                    raise ParseError(f"bad vertex identifier {v!r}", lineno, raw.find(tok) + 1)
                if v in seen_vertices:
                    raise ParseError(f"duplicate vertex {v!r}", lineno, raw.find(tok) + 1)
                seen_vertices.add(v)
                vertices.append(v)
                lines[v] = lineno
            continue
        m = _EDGE_RE.match(line)
        if m:
            cid, mult_tok, src, dst = m.groups()
            if cid in seen_classes:
                raise ParseError(f"duplicate edge identifier {cid!r}", lineno, raw.find(cid) + 1)
            seen_classes.add(cid)
            for v in (src, dst):
                if v not in seen_vertices:
                    raise ParseError(f"undeclared vertex {v!r}", lineno, raw.find(v) + 1)
            if mult_tok is None:
                mult: int | float = 1
            elif mult_tok == "inf":
                mult = INF
            else:
                mult = int(mult_tok)
                if mult < 1:
                    raise ParseError("multiplicity must be >= 1", lineno, raw.find(mult_tok) + 1)
            classes.append((cid, src, dst, mult))
            lines[cid] = lineno
            continue
        raise ParseError(f"unrecognized line {line!r}", lineno, 1)
    if name is None:
        raise ParseError("empty graph document", 1, 1)
    try:
        graph = Graph(vertices, classes)
    except InputError as exc:
        raise ParseError(str(exc)) from exc
    return GraphDocument(name, graph, lines)


def print_graph(doc: GraphDocument | Graph, name: str | None = None) -> str:
    if isinstance(doc, GraphDocument):
        name, g = doc.name, doc.graph
    else:
        name, g = name or "G", doc
    out = [f"graph {name}"]
    if g.vertices:
        out.append("vertex " + ", ".join(g.vertices))
    for c in g.edge_classes:
        mult = "" if c.mult == 1 else (" * inf" if c.is_infinite else f" * {c.mult}")
        out.append(f"edge {c.cid}{mult}: {c.src} -> {c.dst}")
    return "\n".join(out) + "\n"


# -- edges, paths, points ----------------------------------------------------


def parse_edge(g: Graph, token: str) -> Edge:
    m = _EDGE_TOKEN_RE.match(token.strip())
    if not m:
        raise ParseError(f"bad edge token {token!r}")
    cid, idx = m.group(1), int(m.group(2) or 0)
    return g.check_edge(Edge(cid, idx))


def print_edge(g: Graph, e: Edge) -> str:
    return e.cls if g.cls(e.cls).mult == 1 else f"{e.cls}[{e.idx}]"


def parse_path(g: Graph, text: str) -> Path:
    text = text.strip()
    if text.startswith("@"):
        return g.path((), at=text[1:])
    return g.path([parse_edge(g, tok) for tok in text.split(".")])


def print_path(g: Graph, p: Path) -> str:
    if not p.edges:
        return f"@{p.src}"
    return ".".join(print_edge(g, e) for e in p.edges)


_POINT_RE = re.compile(r"^(?:(?P<pre>[^()]*?)\.)?\((?P<per>[^()]+)\)\*$")


def parse_point(g: Graph, text: str) -> BoundaryPoint:
    """Parse and canonicalize a point; finite forms must end at a singular
    vertex."""
    text = text.strip()
    m = _POINT_RE.match(text)
    if m:
        per = [parse_edge(g, t) for t in m.group("per").split(".")]
        pre = []
        if m.group("pre"):
            pre = [parse_edge(g, t) for t in m.group("pre").split(".")]
        src = g.edge_src(pre[0]) if pre else g.edge_src(per[0])
        return canonicalize(g, src, pre, per)
    if text.startswith("@"):
        return canonicalize(g, g.check_vertex(text[1:]))
    edges = [parse_edge(g, t) for t in text.split(".")]
    return canonicalize(g, g.edge_src(edges[0]), edges)


def print_point(g: Graph, x: BoundaryPoint) -> str:
    if x.is_finite:
        if not x.pre:
            return f"@{x.src}"
        return ".".join(print_edge(g, e) for e in x.pre)
    per = "(" + ".".join(print_edge(g, e) for e in x.period) + ")*"
    if not x.pre:
        return per
    return ".".join(print_edge(g, e) for e in x.pre) + "." + per


# -- witnesses and pseudogroup elements ---------------------------------------


def witness_to_json(w) -> dict:
    pairs = sorted(w.h.items(), key=lambda kv: print_point(w.E, kv[0]))
    return {
        "h": [[print_point(w.E, x), print_point(w.F, y)] for x, y in pairs],
        "k1": _table_json(w.E, w.k1),
        "l1": _table_json(w.E, w.l1),
        "k1p": _table_json(w.F, w.k1p),
        "l1p": _table_json(w.F, w.l1p),
    }


def _table_json(g: Graph, table: Mapping[BoundaryPoint, int]) -> list:
    items = sorted(table.items(), key=lambda kv: print_point(g, kv[0]))
    return [[print_point(g, x), v] for x, v in items]


def print_witness(w) -> str:
    return json.dumps(witness_to_json(w), indent=2) + "\n"


def parse_witness(E: Graph, F: Graph, text: str):
    from .dynamics import OrbitWitness

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"witness is not valid JSON: {exc}") from exc
    for key in ("h", "k1", "l1", "k1p", "l1p"):
        if key not in data:
            raise ParseError(f"witness JSON misses the {key!r} table")
    try:
        h = {parse_point(E, a): parse_point(F, b) for a, b in data["h"]}
        k1 = {parse_point(E, a): int(v) for a, v in data["k1"]}
        l1 = {parse_point(E, a): int(v) for a, v in data["l1"]}
        k1p = {parse_point(F, b): int(v) for b, v in data["k1p"]}
        l1p = {parse_point(F, b): int(v) for b, v in data["l1p"]}
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed witness table entry: {exc}") from exc
    return OrbitWitness(E, F, h, k1, l1, k1p, l1p)


def element_to_json(g: Graph, p) -> dict:
    return {
        "alpha": [
            [print_point(g, x), print_point(g, y)]
            for x, y in sorted(p.alpha.items(), key=lambda kv: print_point(g, kv[0]))
        ],
        "m": _table_json(g, p.m),
        "n": _table_json(g, p.n),
    }


def parse_element(g: Graph, text: str):
    from .dynamics import PseudogroupElement

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"element is not valid JSON: {exc}") from exc
    for key in ("alpha", "m", "n"):
        if key not in data:
            raise ParseError(f"element JSON misses the {key!r} table")
    try:
        alpha = {parse_point(g, a): parse_point(g, b) for a, b in data["alpha"]}
        m = {parse_point(g, a): int(v) for a, v in data["m"]}
        n = {parse_point(g, a): int(v) for a, v in data["n"]}
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed element table entry: {exc}") from exc
    return PseudogroupElement(g, alpha, m, n)


# -- groupoid elements and germs ----------------------------------------------


def print_groupoid_element(g: Graph, e) -> str:
    return f"({print_point(g, e.x)} | {e.k} | {print_point(g, e.y)})"


def parse_groupoid_element(g: Graph, text: str):
    from .groupoid import make_element

    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError("groupoid element must look like (x | k | y)")
    parts = [p.strip() for p in text[1:-1].split("|")]
    if len(parts) != 3:
        raise ParseError("groupoid element must have three | -separated parts")
    x = parse_point(g, parts[0])
    try:
        k = int(parts[1])
    except ValueError as exc:
        raise ParseError(f"cocycle must be an integer, got {parts[1]!r}") from exc
    y = parse_point(g, parts[2])
    m, n = (k, 0) if k >= 0 else (0, -k)
    # Scan for the minimal witness consistent with k.
    for extra in range(0, 64):
        mm, nn = m + extra, n + extra
        if x.length < mm or y.length < nn:
            break
        from .dynamics import _eq_after_shifts

        if _eq_after_shifts(g, mm, x, nn, y):
            return make_element(g, x, mm, nn, y)
    raise InputError("the two points are not shift equivalent at this cocycle")


def print_germ(g: Graph, germ) -> str:
    return f"[{print_path(g, germ.mu)} | {print_path(g, germ.nu)} | {print_point(g, germ.x)}]"


def parse_germ(g: Graph, text: str):
    from .weyl import germ_make

    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("germ must look like [mu | nu | x]")
    parts = [p.strip() for p in text[1:-1].split("|")]
    if len(parts) != 3:
        raise ParseError("germ must have three | -separated parts")
    return germ_make(g, parse_path(g, parts[0]), parse_path(g, parts[1]), parse_point(g, parts[2]))


# -- partition files -----------------------------------------------------------

_SPLIT_RE = re.compile(rf"^split\s+({_IDENT})\s*:\s*(.+)$")


def parse_partition(g: Graph, text: str) -> OutSplitPartition:
    """Partition files: one ``split v: {e1,e2} | {e3}`` line per split
    vertex; unmentioned non-sink vertices keep their whole out-edge set as a
    single block.  Bare class names place the whole class; ``cls[i]`` places
    a single edge."""
    from .moves import trivial_partition

    blocks = dict(trivial_partition(g).blocks)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SPLIT_RE.match(line)
        if not m:
            raise ParseError(f"unrecognized partition line {line!r}", lineno, 1)
        v = m.group(1)
        g.check_vertex(v)
        cells = []
        for cell_text in m.group(2).split("|"):
            cell_text = cell_text.strip()
            if not (cell_text.startswith("{") and cell_text.endswith("}")):
                raise ParseError("each block must be brace-delimited", lineno, 1)
            edges: set[Edge] = set()
            infs: set[str] = set()
            for tok in cell_text[1:-1].split(","):
                tok = tok.strip()
                if not tok:
                    continue
                m2 = _EDGE_TOKEN_RE.match(tok)
                if not m2:
                    raise ParseError(f"bad edge token {tok!r}", lineno, 1)
                cid, idx = m2.group(1), m2.group(2)
                c = g.cls(cid)
                if idx is None:
                    if c.is_infinite:
                        infs.add(cid)
                    else:
                        edges.update(Edge(cid, i) for i in range(c.mult))
                else:
                    edges.add(g.check_edge(Edge(cid, int(idx))))
            cells.append(Block(frozenset(edges), frozenset(infs)))
        blocks[v] = tuple(cells)
    return OutSplitPartition(blocks)
