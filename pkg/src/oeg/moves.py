"""Graph transformations: out-splitting, amplification, transitive closure,
and saturation along an infinitely-parallel pattern.

Out-splitting refines each vertex along a proper partition of its outgoing
edges and carries a boundary-path conjugacy.  Amplification replaces every
connected vertex pair by an infinite parallel class; the amplified
transitive closure does the same for every reachable pair.  Saturation adds
an infinite class shadowing a path pattern whose head already has infinitely
many parallels, together with the rewriting bijection between the two
boundary spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .boundary import BoundaryPoint, canonicalize
from .errors import InputError
from .graphs import INF, Edge, EdgeClass, Graph, Path, vertex_kind


# -- out-splitting -----------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """One cell of an out-edge partition: finitely many named edges plus
    whole infinite classes."""

    edges: frozenset[Edge] = frozenset()
    infinite_classes: frozenset[str] = frozenset()

    @property
    def is_infinite(self) -> bool:
        return bool(self.infinite_classes)


@dataclass(frozen=True)
class OutSplitPartition:
    """Ordered blocks partitioning the outgoing edges of every non-sink
    vertex; sinks get no blocks."""

    blocks: dict[str, tuple[Block, ...]]

    def m(self, v: str) -> int:
        return len(self.blocks.get(v, ()))


def trivial_partition(g: Graph) -> OutSplitPartition:
    blocks = {}
    for v in g.vertices:
        out = g.out_classes(v)
        if not out:
            continue
        fin = frozenset(
            Edge(c.cid, i) for c in out if not c.is_infinite for i in range(c.mult)
        )
        inf = frozenset(c.cid for c in out if c.is_infinite)
        blocks[v] = (Block(fin, inf),)
    return OutSplitPartition(blocks)


def check_partition(g: Graph, p: OutSplitPartition) -> None:
    """Validate properness, raising with the violated clause."""
    for v in g.vertices:
        out = g.out_classes(v)
        cells = p.blocks.get(v, ())
        if not out:
            if cells:
                raise InputError(f"sink {v!r} must have no blocks")
            continue
        if not cells:
            raise InputError(f"vertex {v!r} has outgoing edges but no blocks")
        if sum(1 for b in cells if b.is_infinite) > 1:
            raise InputError(f"vertex {v!r} has more than one infinite block")
        seen_edges: set[Edge] = set()
        seen_inf: set[str] = set()
        for b in cells:
            if not b.edges and not b.infinite_classes:
                raise InputError(f"vertex {v!r} has an empty block")
            for e in b.edges:
                g.check_edge(e)
                if g.edge_src(e) != v:
                    raise InputError(f"edge {e.cls!r} does not leave {v!r}")
                if g.cls(e.cls).is_infinite:
                    raise InputError(
                        f"infinite class {e.cls!r} can only be assigned wholesale"
                    )
                if e in seen_edges:
                    raise InputError(f"blocks at {v!r} are not disjoint")
                seen_edges.add(e)
            for cid in b.infinite_classes:
                c = g.cls(cid)
                if c.src != v or not c.is_infinite:
                    raise InputError(f"class {cid!r} is not an infinite class at {v!r}")
                if cid in seen_inf:
                    raise InputError(f"blocks at {v!r} are not disjoint")
                seen_inf.add(cid)
        want_edges = {
            Edge(c.cid, i) for c in out if not c.is_infinite for i in range(c.mult)
        }
        want_inf = {c.cid for c in out if c.is_infinite}
        if seen_edges != want_edges or seen_inf != want_inf:
            raise InputError(f"blocks at {v!r} do not cover the outgoing edges")


def _block_of(g: Graph, p: OutSplitPartition, e: Edge) -> int:
    """1-based index of the block containing an edge."""
    v = g.edge_src(e)
    for i, b in enumerate(p.blocks[v], start=1):
        if e in b.edges or e.cls in b.infinite_classes:
            return i
    raise InputError(f"edge {e.cls!r} not covered by the partition at {v!r}")


def _infinite_block_index(g: Graph, p: OutSplitPartition, v: str) -> int:
    for i, b in enumerate(p.blocks[v], start=1):
        if b.is_infinite:
            return i
    raise InputError(f"vertex {v!r} has no infinite block")


@dataclass(frozen=True)
class OutSplit:
    """An out-split graph together with the data needed to relabel paths."""

    graph: Graph
    partition: OutSplitPartition
    # (class id, source block, range block or 0 for sink targets) -> new id
    class_names: dict[tuple[str, int, int], str]
    # per (class id, source block): original indices in that block, in order
    member_ranks: dict[tuple[str, int], dict[int, int]]


def split_vertex_name(v: str, i: int) -> str:
    return f"{v}^{i}"


def out_split(g: Graph, p: OutSplitPartition) -> OutSplit:
    """The out-split graph: each non-sink vertex becomes one copy per block,
    each edge becomes one copy per block of its range (sinks stay put)."""
    check_partition(g, p)
    vertices = []
    for v in g.vertices:
        if p.m(v) == 0:
            vertices.append(v)
        else:
            vertices.extend(split_vertex_name(v, i) for i in range(1, p.m(v) + 1))
    classes: list[EdgeClass] = []
    names: dict[tuple[str, int, int], str] = {}
    ranks: dict[tuple[str, int], dict[int, int]] = {}
    for c in g.edge_classes:
        per_block: dict[int, list[int]] = {}
        if c.is_infinite:
            i = _block_of(g, p, Edge(c.cid, 0))
            per_block[i] = []  # wholesale; ranks are the identity
        else:
            for idx in range(c.mult):
                per_block.setdefault(_block_of(g, p, Edge(c.cid, idx)), []).append(idx)
        whole = len(per_block) == 1
        for i, members in sorted(per_block.items()):
            if not c.is_infinite:
                ranks[(c.cid, i)] = {idx: r for r, idx in enumerate(sorted(members))}
            stem = c.cid if whole else f"{c.cid}_b{i}"
            src = split_vertex_name(c.src, i)
            mult = INF if c.is_infinite else len(members)
            if p.m(c.dst) == 0:
                names[(c.cid, i, 0)] = stem
                classes.append(EdgeClass(stem, src, c.dst, mult))
            else:
                for j in range(1, p.m(c.dst) + 1):
                    cid = f"{stem}^{j}"
                    names[(c.cid, i, j)] = cid
                    classes.append(EdgeClass(cid, src, split_vertex_name(c.dst, j), mult))
    return OutSplit(Graph(vertices, classes), p, names, ranks)


def _split_edge(g: Graph, s: OutSplit, e: Edge, j: int) -> Edge:
    """The copy of an edge aimed at range block j (0 for sink targets)."""
    i = _block_of(g, s.partition, e)
    cid = s.class_names[(e.cls, i, j)]
    idx = e.idx if g.cls(e.cls).is_infinite else s.member_ranks[(e.cls, i)][e.idx]
    return Edge(cid, idx)


def out_split_map(g: Graph, s: OutSplit, x: BoundaryPoint) -> BoundaryPoint:
    """The conjugacy image of a boundary path under an out-split.

    Every edge is relabelled by the block of its successor; the last edge of
    a finite path aims at the block whose vertex copy is the infinite
    emitter, and edges into sinks keep their names.
    """
    p = s.partition

    def new_vertex(v: str) -> str:
        kind = vertex_kind(g, v)
        if kind == "sink":
            return v
        if kind == "infinite-emitter":
            return split_vertex_name(v, _infinite_block_index(g, p, v))
        raise InputError("a finite boundary path must end at a singular vertex")

    def relabel(edges: Sequence[Edge], successor: Edge | None) -> list[Edge]:
        out = []
        for t, e in enumerate(edges):
            w = g.edge_dst(e)
            if p.m(w) == 0:
                out.append(_split_edge(g, s, e, 0))
                continue
            nxt = edges[t + 1] if t + 1 < len(edges) else successor
            if nxt is None:
                j = _infinite_block_index(g, p, w)
            else:
                j = _block_of(g, p, nxt)
            out.append(_split_edge(g, s, e, j))
        return out

    if x.is_finite:
        if not x.pre:
            return canonicalize(s.graph, new_vertex(x.src))
        edges = relabel(x.pre, None)
        return canonicalize(s.graph, s.graph.edge_src(edges[0]), edges)
    pre = relabel(x.pre, x.period[0])
    period = relabel(x.period, x.period[0])
    src = s.graph.edge_src((pre + period)[0])
    return canonicalize(s.graph, src, pre, period)


# -- amplification and transitive closure ------------------------------------


def _pair_class_names(pairs: Iterable[tuple[str, str]]) -> dict[tuple[str, str], str]:
    # Only uniqueness among the new names matters (every old class is
    # replaced); keeping the scheme input-independent makes the move
    # idempotent.
    names: dict[tuple[str, str], str] = {}
    taken: set[str] = set()
    for v, w in pairs:
        base = f"{v}_{w}"
        cid = base
        k = 2
        while cid in taken:
            cid = f"{base}_{k}"
            k += 1
        names[(v, w)] = cid
        taken.add(cid)
    return names


def amplify(g: Graph) -> Graph:
    """Replace every connected ordered vertex pair by a single infinite
    parallel class.  Idempotent."""
    pairs = []
    seen = set()
    for c in g.edge_classes:
        if (c.src, c.dst) not in seen:
            seen.add((c.src, c.dst))
            pairs.append((c.src, c.dst))
    names = _pair_class_names(pairs)
    return Graph(g.vertices, [EdgeClass(names[p], p[0], p[1], INF) for p in pairs])


def amplified_transitive_closure(g: Graph) -> Graph:
    """One infinite class for every pair joined by a path of length >= 1."""
    from .invariants import reachability

    reach = reachability(g)
    pairs = [(v, w) for v in g.vertices for w in g.vertices if reach[(v, w)]]
    names = _pair_class_names(pairs)
    return Graph(g.vertices, [EdgeClass(names[p], p[0], p[1], INF) for p in pairs])


def decide_amplified_oe(E: Graph, F: Graph) -> tuple[bool, dict[str, str] | None]:
    """Decide whether the amplifications of two finite-vertex graphs are
    orbit equivalent: this holds exactly when their amplified transitive
    closures are isomorphic digraphs, i.e. when the reachability relations
    match under some vertex bijection."""
    from .invariants import digraph_isomorphic

    bij = digraph_isomorphic(amplified_transitive_closure(E), amplified_transitive_closure(F))
    return (bij is not None), bij


# -- saturation ---------------------------------------------------------------


class ParallelIndexing:
    """A bijection between the naturals and the (countably infinite) set of
    all edges between two fixed vertices: finite-class edges first in
    declaration order, then the infinite classes interleaved round-robin."""

    def __init__(self, g: Graph, src: str, dst: str):
        self.finite: list[Edge] = []
        self.infinite: list[str] = []
        for c in g.edge_classes:
            if c.src == src and c.dst == dst:
                if c.is_infinite:
                    self.infinite.append(c.cid)
                else:
                    self.finite.extend(Edge(c.cid, i) for i in range(c.mult))
        if not self.infinite:
            raise InputError(f"the parallel class {src!r} -> {dst!r} is finite")

    def edge(self, n: int) -> Edge:
        if n < len(self.finite):
            return self.finite[n]
        n -= len(self.finite)
        q, r = divmod(n, len(self.infinite))
        return Edge(self.infinite[r], q)

    def index(self, e: Edge) -> int:
        if e in self.finite:
            return self.finite.index(e)
        r = self.infinite.index(e.cls)
        return len(self.finite) + e.idx * len(self.infinite) + r

    def contains(self, e: Edge) -> bool:
        return e in self.finite or e.cls in self.infinite


@dataclass(frozen=True)
class RewritingWitness:
    """The data of a saturation move: the pattern path, the new class, and
    the even/odd splitting of the pattern-parallel edges.

    ``eta1(n)`` is the even-indexed parallel edge ``A[2n]`` and
    ``eta2(A[j]) = A[2j+1]``; the two images are disjoint and cover all
    parallels, which is what the rewriting needs to be a bijection.
    """

    original: Graph
    saturated: Graph
    pattern: Path
    new_class: str
    indexing: ParallelIndexing

    def eta1(self, n: int) -> Edge:
        return self.indexing.edge(2 * n)

    def eta1_inverse(self, e: Edge) -> int | None:
        j = self.indexing.index(e)
        return j // 2 if j % 2 == 0 else None

    def eta2(self, e: Edge) -> Edge:
        return self.indexing.edge(2 * self.indexing.index(e) + 1)

    def eta2_inverse(self, e: Edge) -> Edge | None:
        j = self.indexing.index(e)
        return self.indexing.edge((j - 1) // 2) if j % 2 == 1 else None


def saturate(g: Graph, pattern: Path) -> tuple[Graph, RewritingWitness]:
    """Add an infinite class of shortcut edges shadowing the pattern path.

    Requires the set of edges parallel to the pattern (same source, same
    range) to be infinite.
    """
    if pattern.length < 1:
        raise InputError("the pattern must have length >= 1")
    for e in pattern.edges:
        g.check_edge(e)
    pattern = g.path(pattern.edges)
    # The eta maps act on the parallels of the first pattern edge; only with
    # that choice do the rewritten paths compose.
    indexing = ParallelIndexing(g, pattern.src, g.edge_dst(pattern.edges[0]))
    used = {c.cid for c in g.edge_classes}
    cid = "M"
    k = 2
    while cid in used:
        cid = f"M{k}"
        k += 1
    sat = Graph(g.vertices, list(g.edge_classes) + [EdgeClass(cid, pattern.src, pattern.dst, INF)])
    return sat, RewritingWitness(g, sat, pattern, cid, indexing)


def _edge_stream(x: BoundaryPoint) -> Iterator[Edge]:
    yield from x.pre
    if x.period:
        while True:
            yield from x.period


def _rewrite_stream(
    w: RewritingWitness,
    x: BoundaryPoint,
    forward: bool,
) -> BoundaryPoint:
    """Run the greedy left-to-right rewriting over a representable point and
    detect the eventual period of the output.

    Forward rewriting (saturated -> original) replaces each new-class edge
    ``M[n]`` by ``eta1(n)`` followed by the pattern tail, and each
    occurrence of a parallel edge followed by the pattern tail by the same
    with the edge pushed through ``eta2``.  The inverse direction undoes
    both.  Occurrences are scanned greedily from the left; in a periodic
    tail the scanner state (offset modulo the period) eventually repeats,
    which delimits the output period.
    """
    gdst = w.original if forward else w.saturated
    m = w.pattern.length
    tail = w.pattern.edges[1:]
    pre_len = len(x.pre)
    per = len(x.period)

    def lookahead(buf: list[Edge], stream: Iterator[Edge], upto: int) -> bool:
        while len(buf) < upto:
            try:
                buf.append(next(stream))
            except StopIteration:
                return False
        return True

    stream = _edge_stream(x)
    buf: list[Edge] = []
    out: list[Edge] = []
    pos = 0  # index into x of the next unconsumed edge
    cut: dict[int, int] = {}  # scanner state -> length of `out` when seen
    out_pre: list[Edge] | None = None
    out_period: list[Edge] | None = None
    while True:
        if per and pos >= pre_len:
            state = (pos - pre_len) % per
            if state in cut:
                out_pre = out[: cut[state]]
                out_period = out[cut[state] :]
                break
            cut[state] = len(out)
        if not lookahead(buf, stream, 1):
            break
        head = buf[0]
        step = 1
        if forward:
            if head.cls == w.new_class:
                out.append(w.eta1(head.idx))
                out.extend(tail)
            elif (
                w.indexing.contains(head)
                and lookahead(buf, stream, m)
                and tuple(buf[1:m]) == tail
            ):
                out.append(w.eta2(head))
                out.extend(tail)
                step = m
            else:
                out.append(head)
        else:
            if (
                w.indexing.contains(head)
                and lookahead(buf, stream, m)
                and tuple(buf[1:m]) == tail
            ):
                n = w.eta1_inverse(head)
                if n is not None:
                    out.append(Edge(w.new_class, n))
                else:
                    out.append(w.eta2_inverse(head))
                    out.extend(tail)
                step = m
            else:
                out.append(head)
        del buf[:step]
        pos += step
    if out_period is None:  # finite input
        return canonicalize(gdst, x.src, out)
    src = x.src if out_pre else gdst.edge_src(out_period[0])
    return canonicalize(gdst, src, out_pre, out_period)


def saturate_map(w: RewritingWitness, x: BoundaryPoint) -> BoundaryPoint:
    """The rewriting homeomorphism from the saturated boundary to the
    original one, on a representable point."""
    return _rewrite_stream(w, x, forward=True)


def saturate_map_inverse(w: RewritingWitness, y: BoundaryPoint) -> BoundaryPoint:
    return _rewrite_stream(w, y, forward=False)


def saturation_cocycles(
    w: RewritingWitness,
) -> tuple[Callable, Callable, Callable, Callable]:
    """The witness cocycles of a saturation, as point functions.

    With h = saturate_map and m the pattern length:
      k1 = 0;  l1(x) = m on the new-class cylinders, 1 elsewhere;
      k1p(y) = m - 1 on occurrences headed by an even parallel, 0 otherwise;
      l1p = 1.
    """
    m = w.pattern.length
    tail = w.pattern.edges[1:]

    def k1(x: BoundaryPoint) -> int:
        return 0

    def l1(x: BoundaryPoint) -> int:
        return m if x.edge_at(0).cls == w.new_class else 1

    def starts_occurrence(y: BoundaryPoint) -> bool:
        head = y.edge_at(0)
        if not w.indexing.contains(head) or y.length < m:
            return False
        return tuple(y.edge_at(i) for i in range(1, m)) == tail

    def k1p(y: BoundaryPoint) -> int:
        if starts_occurrence(y) and w.eta1_inverse(y.edge_at(0)) is not None:
            return m - 1
        return 0

    def l1p(y: BoundaryPoint) -> int:
        return 1

    return k1, l1, k1p, l1p


def check_saturation_identity(
    w: RewritingWitness,
    points_sat: Iterable[BoundaryPoint],
    points_orig: Iterable[BoundaryPoint],
) -> list[str]:
    """Sampled verification of the witness identities for a saturation, in
    both directions; returns a list of failure descriptions."""
    from .dynamics import _eq_after_shifts, shift

    k1, l1, k1p, l1p = saturation_cocycles(w)
    failures = []
    for x in points_sat:
        if x.length < 1:
            continue
        lhs = saturate_map(w, shift(w.saturated, x))
        rhs = saturate_map(w, x)
        if not _eq_after_shifts(w.original, k1(x), lhs, l1(x), rhs):
            failures.append(f"forward identity fails at {x}")
    for y in points_orig:
        if y.length < 1:
            continue
        lhs = saturate_map_inverse(w, shift(w.original, y))
        rhs = saturate_map_inverse(w, y)
        if not _eq_after_shifts(w.saturated, k1p(y), lhs, l1p(y), rhs):
            failures.append(f"backward identity fails at {y}")
    return failures
