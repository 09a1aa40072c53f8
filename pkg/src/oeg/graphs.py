"""Directed multigraphs with parallel-edge classes, paths and loops.

Parallel edges are grouped into named classes.  A class has a multiplicity
which is either a positive integer or ``math.inf``; the individual edges of
a class are addressed as ``(class id, index)`` pairs, so a class of infinite
multiplicity carries one edge per natural number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import InputError

INF = math.inf


class EdgeClass(NamedTuple):
    cid: str
    src: str
    dst: str
    mult: int | float  # positive int, or math.inf

    @property
    def is_infinite(self) -> bool:
        return self.mult == INF


class Edge(NamedTuple):
    cls: str
    idx: int


class Graph:
    """A finite-vertex directed multigraph.

    Immutable after construction.  Vertex and class order is declaration
    order and is used for all deterministic output.
    """

    def __init__(self, vertices: Iterable[str], classes: Iterable[tuple] = ()):
        self.vertices: tuple[str, ...] = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex identifiers")
        vset = set(self.vertices)
        recs = []
        for rec in classes:
            c = EdgeClass(*rec) if not isinstance(rec, EdgeClass) else rec
            if c.src not in vset or c.dst not in vset:
                raise InputError(f"edge class {c.cid!r} uses an undeclared vertex")
            if c.mult != INF and (not isinstance(c.mult, int) or c.mult < 1):
                raise InputError(f"edge class {c.cid!r} has multiplicity {c.mult!r}")
            recs.append(c)
        self.edge_classes: tuple[EdgeClass, ...] = tuple(recs)
        self._by_id = {c.cid: c for c in self.edge_classes}
        if len(self._by_id) != len(self.edge_classes):
            raise InputError("duplicate edge-class identifiers")
        self._out: dict[str, tuple[EdgeClass, ...]] = {v: () for v in self.vertices}
        self._in: dict[str, tuple[EdgeClass, ...]] = {v: () for v in self.vertices}
        for c in self.edge_classes:
            self._out[c.src] += (c,)
            self._in[c.dst] += (c,)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edge_classes == other.edge_classes
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edge_classes))

    def __repr__(self) -> str:
        return f"Graph({len(self.vertices)} vertices, {len(self.edge_classes)} edge classes)"

    # -- basic accessors ---------------------------------------------------

    def cls(self, cid: str) -> EdgeClass:
        try:
            return self._by_id[cid]
        except KeyError:
            raise InputError(f"unknown edge class {cid!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._out

    def check_vertex(self, v: str) -> str:
        if v not in self._out:
            raise InputError(f"unknown vertex {v!r}")
        return v

    def out_classes(self, v: str) -> tuple[EdgeClass, ...]:
        return self._out[self.check_vertex(v)]

    def in_classes(self, v: str) -> tuple[EdgeClass, ...]:
        return self._in[self.check_vertex(v)]

    def edge_src(self, e: Edge) -> str:
        return self.cls(e.cls).src

    def edge_dst(self, e: Edge) -> str:
        return self.cls(e.cls).dst

    def check_edge(self, e: Edge) -> Edge:
        c = self.cls(e.cls)
        if e.idx < 0 or (not c.is_infinite and e.idx >= c.mult):
            raise InputError(f"edge index {e.idx} out of range for class {e.cls!r}")
        return e

    def edge(self, spec) -> Edge:
        """Coerce ``"a"``, ``("a", 3)`` or an Edge into a validated Edge."""
        if isinstance(spec, Edge):
            return self.check_edge(spec)
        if isinstance(spec, str):
            return self.check_edge(Edge(spec, 0))
        cid, idx = spec
        return self.check_edge(Edge(cid, idx))

    def out_degree(self, v: str) -> int | float:
        return sum(c.mult for c in self.out_classes(v)) if self.out_classes(v) else 0

    def out_edges(self, v: str, inf_cap: int = 1) -> Iterator[Edge]:
        """All edges out of ``v``; infinite classes contribute ``inf_cap``
        representatives (indices 0..inf_cap-1)."""
        for c in self.out_classes(v):
            n = inf_cap if c.is_infinite else c.mult
            for i in range(n):
                yield Edge(c.cid, i)

    def finite_out_edges(self, v: str) -> tuple[Edge, ...]:
        """All out-edges of a vertex of finite out-degree."""
        if self.out_degree(v) == INF:
            raise InputError(f"vertex {v!r} emits infinitely many edges")
        return tuple(self.out_edges(v))

    # -- paths -------------------------------------------------------------

    def path(self, specs: Iterable = (), at: str | None = None) -> Path:
        """Build a validated path from edge specs; ``at`` names the vertex of
        an empty path."""
        edges = tuple(self.edge(s) for s in specs)
        if not edges:
            if at is None:
                raise InputError("an empty path needs its vertex")
            v = self.check_vertex(at)
            return Path(v, v, ())
        if at is not None and at != self.edge_src(edges[0]):
            raise InputError("path source does not match its first edge")
        for a, b in zip(edges, edges[1:]):
            if self.edge_dst(a) != self.edge_src(b):
                raise InputError(
                    f"edges {a.cls!r} and {b.cls!r} do not compose"
                )
        return Path(self.edge_src(edges[0]), self.edge_dst(edges[-1]), edges)

    def loop(self, specs: Iterable) -> Path:
        p = self.path(specs)
        if len(p.edges) == 0 or p.src != p.dst:
            raise InputError("a loop needs length >= 1 and equal endpoints")
        return p


@dataclass(frozen=True, slots=True)
class Path:
    """A finite path; ``src == dst`` with no edges is the empty path at a vertex."""

    src: str
    dst: str
    edges: tuple[Edge, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_loop(self) -> bool:
        return self.length >= 1 and self.src == self.dst

    def vertex_at(self, g: Graph, i: int) -> str:
        """Vertex after the first ``i`` edges."""
        return self.src if i == 0 else g.edge_dst(self.edges[i - 1])


def path_concat(g: Graph, p: Path, q: Path) -> Path:
    """Concatenate two paths; the range of ``p`` must be the source of ``q``."""
    if p.dst != q.src:
        raise InputError(f"cannot concatenate: range {p.dst!r} != source {q.src!r}")
    if not p.edges:
        return q
    if not q.edges:
        return p
    return Path(p.src, q.dst, p.edges + q.edges)


def vertex_kind(g: Graph, v: str) -> str:
    """Classify a vertex as ``regular``, ``sink`` or ``infinite-emitter``.

    Sinks and infinite emitters together are the singular vertices.
    """
    deg = g.out_degree(v)
    if deg == 0:
        return "sink"
    if deg == INF:
        return "infinite-emitter"
    return "regular"


def is_singular(g: Graph, v: str) -> bool:
    return vertex_kind(g, v) != "regular"


def default_loop_search_length(g: Graph) -> int:
    """Exhaustive simple-loop search length for desk-scale graphs."""
    finite = [c.mult for c in g.edge_classes if not c.is_infinite]
    return len(g.vertices) * (1 + (max(finite) if finite else 0))


def _least_rotation(edges: tuple[Edge, ...]) -> tuple[Edge, ...]:
    return min(edges[i:] + edges[:i] for i in range(len(edges)))


def rotate_loop(g: Graph, l: Path, i: int) -> Path:
    """The same cycle re-based ``i`` edges later."""
    i %= l.length
    edges = l.edges[i:] + l.edges[:i]
    return g.loop(edges)


def enumerate_simple_loops(g: Graph, max_len: int | None = None) -> list[Path]:
    """All simple loops of length <= max_len, one representative per cyclic
    rotation class (the lexicographically least rotation), in deterministic
    order.

    A loop is simple when it is not a proper power of a shorter loop; it may
    revisit vertices.  Infinite classes contribute the index-0 edge only.
    """
    if max_len is None:
        max_len = default_loop_search_length(g)
    found: set[tuple[Edge, ...]] = set()

    def walk(start: str, here: str, edges: list[Edge]):
        for e in g.out_edges(here, inf_cap=1):
            nxt = g.edge_dst(e)
            edges.append(e)
            if nxt == start:
                seq = tuple(edges)
                root, _ = _primitive_root_edges(seq)
                if len(root) == len(seq):
                    found.add(_least_rotation(seq))
            if len(edges) < max_len:
                walk(start, nxt, edges)
            edges.pop()

    for v in g.vertices:
        walk(v, v, [])
    loops = [g.loop(seq) for seq in found]
    loops.sort(key=lambda l: (l.length, l.edges))
    return loops


def _primitive_root_edges(edges: tuple[Edge, ...]) -> tuple[tuple[Edge, ...], int]:
    n = len(edges)
    for p in range(1, n + 1):
        if n % p == 0 and edges[:p] * (n // p) == edges:
            return edges[:p], n // p
    raise AssertionError("unreachable")


def primitive_root(g: Graph, l: Path) -> tuple[Path, int]:
    """Write the loop as ``root**k`` with ``root`` simple and ``k`` maximal."""
    if not l.is_loop:
        raise InputError("primitive_root needs a loop")
    root, k = _primitive_root_edges(l.edges)
    return g.loop(root), k


def loop_has_exit(g: Graph, l: Path) -> bool:
    """An exit is an edge leaving a loop vertex that differs from the loop
    edge at that position; equivalently some loop vertex has total
    out-multiplicity >= 2."""
    if not l.is_loop:
        raise InputError("loop_has_exit needs a loop")
    for i in range(l.length):
        if g.out_degree(l.vertex_at(g, i)) > 1:
            return True
    return False


def condition_l(g: Graph) -> tuple[bool, Path | None]:
    """Decide whether every loop in the graph has an exit.

    Returns ``(True, None)`` or ``(False, witness)`` with an exitless simple
    loop.  An exitless loop lives entirely inside the set of vertices with
    total out-multiplicity exactly one, where following the unique out-edge
    is a function, so it suffices to look for a cycle of that function.
    """
    step: dict[str, Edge] = {}
    for v in g.vertices:
        if g.out_degree(v) == 1:
            step[v] = next(g.out_edges(v))
    state: dict[str, int] = {}  # 0 = on stack, 1 = done
    for v0 in g.vertices:
        if v0 not in step or v0 in state:
            continue
        chain = []
        v = v0
        while v in step and v not in state:
            state[v] = 0
            chain.append(v)
            v = g.edge_dst(step[v])
        if v in step and state.get(v) == 0:
            i = chain.index(v)
            edges = [step[u] for u in chain[i:]]
            witness = g.loop(_least_rotation(tuple(edges)))
            return False, witness
        for u in chain:
            state[u] = 1
    return True, None


def condition_l_by_enumeration(g: Graph, max_len: int | None = None) -> tuple[bool, Path | None]:
    """Exhaustive cross-check of :func:`condition_l` via simple-loop search."""
    for l in enumerate_simple_loops(g, max_len):
        if not loop_has_exit(g, l):
            return False, l
    return True, None
