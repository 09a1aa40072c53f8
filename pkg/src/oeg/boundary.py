"""The boundary path space of a graph, restricted to its computable points.

A boundary path is either a finite path ending at a singular vertex (a sink
or an infinite emitter) or an infinite path.  Of the infinite paths only the
eventually periodic ones are representable pointwise; everything else is
reachable through cylinder-set symbolics.  Every representable point has a
unique canonical form: the period is a simple loop and the preperiod is as
short as possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import DomainError, InputError
from .graphs import (
    INF,
    Edge,
    Graph,
    Path,
    _primitive_root_edges,
    is_singular,
    loop_has_exit,
    vertex_kind,
)


@dataclass(frozen=True, slots=True)
class BoundaryPoint:
    """Canonical boundary path: finite (``period == ()``) or eventually
    periodic.  Construct with :func:`canonicalize`."""

    src: str
    pre: tuple[Edge, ...]
    period: tuple[Edge, ...]

    @property
    def is_finite(self) -> bool:
        return not self.period

    @property
    def length(self) -> int | float:
        return len(self.pre) if self.is_finite else INF

    def edge_at(self, i: int) -> Edge:
        if i < len(self.pre):
            return self.pre[i]
        if self.is_finite:
            raise DomainError(f"point has no edge at position {i}")
        return self.period[(i - len(self.pre)) % len(self.period)]

    def prefix_edges(self, n: int) -> tuple[Edge, ...]:
        if n > self.length:
            raise DomainError(f"point is shorter than {n}")
        if n <= len(self.pre):
            return self.pre[:n]
        return tuple(self.edge_at(i) for i in range(n))


def canonicalize(
    g: Graph,
    src: str,
    pre: Iterable[Edge] = (),
    period: Iterable[Edge] = (),
) -> BoundaryPoint:
    """Validate raw point data and bring it to canonical form.

    The period is replaced by its primitive root, then the preperiod is
    shortened while its last edge equals the last edge of the (suitably
    rotated) period.  Finite data whose range vertex is regular is rejected:
    it does not denote a boundary path.
    """
    pre = tuple(g.check_edge(e) for e in pre)
    period = tuple(g.check_edge(e) for e in period)
    g.check_vertex(src)
    here = src
    for e in pre + period:
        if g.edge_src(e) != here:
            raise InputError("edges do not form a path")
        here = g.edge_dst(e)
    if not period:
        if not is_singular(g, here):
            raise InputError(
                f"not a boundary path: {here!r} is a regular vertex"
            )
        return BoundaryPoint(src, pre, ())
    if here != g.edge_src(period[0]):
        raise InputError("period does not close up into a loop")
    return _canonical(g, src, pre, period)


def _canonical(g: Graph, src: str, pre: tuple[Edge, ...], period: tuple[Edge, ...]) -> BoundaryPoint:
    """Canonical form of already-validated point data."""
    if not period:
        return BoundaryPoint(src, pre, ())
    period, _ = _primitive_root_edges(period)
    if pre and pre[-1] == period[-1]:
        pre = list(pre)
        period = list(period)
        while pre and pre[-1] == period[-1]:
            pre.pop()
            period = [period[-1]] + period[:-1]
        pre = tuple(pre)
        period = tuple(period)
    new_src = src if pre else g.edge_src(period[0])
    return BoundaryPoint(new_src, pre, period)


def finite_point(g: Graph, path: Path) -> BoundaryPoint:
    return canonicalize(g, path.src, path.edges)


def point_range(g: Graph, x: BoundaryPoint) -> str:
    """Range vertex of a finite point."""
    if not x.is_finite:
        raise DomainError("an infinite point has no range vertex")
    return g.edge_dst(x.pre[-1]) if x.pre else x.src


def drop_edges(g: Graph, x: BoundaryPoint, n: int) -> BoundaryPoint:
    """The point with its first ``n`` edges removed, recanonicalized."""
    if n > x.length:
        raise DomainError(f"cannot drop {n} edges from a point of length {x.length}")
    if n == 0:
        return x
    if n <= len(x.pre):
        return _canonical(g, _vertex_after(g, x, n), x.pre[n:], x.period)
    r = (n - len(x.pre)) % len(x.period)
    rotated = x.period[r:] + x.period[:r]
    return BoundaryPoint(g.edge_src(rotated[0]), (), rotated)


def _vertex_after(g: Graph, x: BoundaryPoint, n: int) -> str:
    return x.src if n == 0 else g.edge_dst(x.edge_at(n - 1))


def prepend(g: Graph, path: Path, x: BoundaryPoint) -> BoundaryPoint:
    """The point ``path . x``; the range of the path must be the source of
    the point."""
    if path.dst != x.src:
        raise InputError(f"cannot prepend: range {path.dst!r} != source {x.src!r}")
    src = path.src if path.edges else x.src
    if not x.period:
        if not x.pre and not path.edges:
            return x
        # the range stays singular, so no revalidation needed
        return BoundaryPoint(src, path.edges + x.pre, ())
    return _canonical(g, src, path.edges + x.pre, x.period)


def prefix_path(g: Graph, x: BoundaryPoint, n: int) -> Path:
    """The initial segment of a point as a path (valid by construction)."""
    return Path(x.src, _vertex_after(g, x, n), x.prefix_edges(n))


def starts_with(x: BoundaryPoint, path: Path) -> bool:
    if x.src != path.src:
        return False
    if path.length > x.length:
        return False
    return x.prefix_edges(path.length) == path.edges


def point_sort_key(x: BoundaryPoint):
    if x.is_finite:
        return (0, len(x.pre), x.pre, ())
    return (1, len(x.pre), x.pre, x.period)


# -- cylinder sets ---------------------------------------------------------


@dataclass(frozen=True, slots=True)
class CylinderSet:
    """The set of boundary paths extending ``base`` whose next edge avoids
    the finite excluded set; compact and open."""

    base: Path
    excluded: frozenset[Edge]


def make_cylinder(g: Graph, base: Path, excluded: Iterable[Edge] = ()) -> CylinderSet:
    excluded = frozenset(g.check_edge(e) for e in excluded)
    for e in excluded:
        if g.edge_src(e) != base.dst:
            raise InputError(
                f"excluded edge {e.cls!r} does not leave the base range {base.dst!r}"
            )
    return CylinderSet(base, excluded)


def cyl_is_empty(g: Graph, z: CylinderSet) -> bool:
    """A cylinder is empty iff its base ends at a regular vertex all of whose
    out-edges are excluded.  (Every vertex of a finite graph emits at least
    one boundary path.)"""
    v = z.base.dst
    if vertex_kind(g, v) != "regular":
        return False
    return all(e in z.excluded for e in g.out_edges(v))


def cyl_membership(g: Graph, x: BoundaryPoint, z: CylinderSet) -> bool:
    """Whether the point lies in the cylinder: the base is a prefix and the
    next edge (if any) is not excluded."""
    if not starts_with(x, z.base):
        return False
    n = z.base.length
    if x.length == n:
        return True
    return x.edge_at(n) not in z.excluded


def cyl_intersect(g: Graph, z1: CylinderSet, z2: CylinderSet) -> CylinderSet | None:
    """Symbolic intersection; the intersection of two cylinders is a cylinder
    or empty (None)."""
    if z2.base.length < z1.base.length:
        z1, z2 = z2, z1
    mu, nu = z1.base, z2.base
    if not (nu.src == mu.src and nu.edges[: mu.length] == mu.edges):
        return None
    if mu.length < nu.length:
        if nu.edges[mu.length] in z1.excluded:
            return None
        out = CylinderSet(nu, z2.excluded)
    else:
        out = CylinderSet(nu, z1.excluded | z2.excluded)
    return None if cyl_is_empty(g, out) else out


def cyl_subtract(g: Graph, z1: CylinderSet, z2: CylinderSet) -> list[CylinderSet]:
    """The difference ``z1 - z2`` as a list of pairwise-disjoint nonempty
    cylinders (empty list when z1 is contained in z2)."""
    if cyl_is_empty(g, z1):
        return []
    if cyl_is_empty(g, z2):
        return [z1]
    mu, f = z1.base, z1.excluded
    nu, gx = z2.base, z2.excluded
    if mu.length <= nu.length:
        if nu.src != mu.src or nu.edges[: mu.length] != mu.edges:
            return [z1]
        if mu.length == nu.length:
            pieces = [
                CylinderSet(_extend(g, mu, e), frozenset()) for e in sorted(gx - f)
            ]
        else:
            xi = nu.edges[mu.length :]
            if xi[0] in f:
                return [z1]
            pieces = [CylinderSet(mu, f | {xi[0]})]
            for i in range(1, len(xi)):
                stem = _extend_many(g, mu, xi[:i])
                pieces.append(CylinderSet(stem, frozenset({xi[i]})))
            pieces.extend(
                CylinderSet(_extend(g, nu, e), frozenset()) for e in sorted(gx)
            )
        return [p for p in pieces if not cyl_is_empty(g, p)]
    # z2's base is shorter: z2 either swallows or misses the whole of z1.
    if mu.src != nu.src or mu.edges[: nu.length] != nu.edges:
        return [z1]
    if mu.edges[nu.length] in gx:
        return [z1]
    return []


def _extend(g: Graph, p: Path, e: Edge) -> Path:
    return Path(p.src, g.edge_dst(e), p.edges + (e,))


def _extend_many(g: Graph, p: Path, edges: tuple[Edge, ...]) -> Path:
    for e in edges:
        p = _extend(g, p, e)
    return p


def cyl_subtract_all(g: Graph, z: CylinderSet, others: Iterable[CylinderSet]) -> list[CylinderSet]:
    pieces = [] if cyl_is_empty(g, z) else [z]
    for other in others:
        pieces = [q for p in pieces for q in cyl_subtract(g, p, other)]
    return pieces


def cyl_relation(g: Graph, z1: CylinderSet, z2: CylinderSet) -> str:
    """Exact set relation of the denoted sets: ``equal``, ``subset``,
    ``superset``, ``disjoint`` or ``overlap`` (decided symbolically)."""
    sub = not cyl_subtract(g, z1, z2)
    sup = not cyl_subtract(g, z2, z1)
    if sub and sup:
        return "equal"
    if sub:
        return "subset"
    if sup:
        return "superset"
    if cyl_intersect(g, z1, z2) is None:
        return "disjoint"
    return "overlap"


def cyl_sort_key(z: CylinderSet):
    return (z.base.length, z.base.src, z.base.edges, sorted(z.excluded))


def disjointify(g: Graph, cover: Iterable[CylinderSet]) -> list[CylinderSet]:
    """Rewrite a finite family of cylinders as a pairwise-disjoint family
    with the same union.

    Deeper base paths take priority and survive intact; shallower members
    are subtracted down to exclusions and refinements.  The result is
    reported in order of increasing base-path length.
    """
    todo = sorted(cover, key=cyl_sort_key, reverse=True)
    out: list[CylinderSet] = []
    for z in todo:
        out.extend(cyl_subtract_all(g, z, out))
    out.sort(key=cyl_sort_key)
    return out


# -- isolated points and the census ----------------------------------------


def is_isolated(g: Graph, x: BoundaryPoint) -> bool:
    """A finite point is isolated iff it ends at a sink; an eventually
    periodic point is isolated iff its period has no exit."""
    if x.is_finite:
        return vertex_kind(g, _vertex_after(g, x, len(x.pre))) == "sink"
    return not loop_has_exit(g, g.loop(x.period))


def isolating_cylinder(g: Graph, x: BoundaryPoint) -> CylinderSet | None:
    """A cylinder whose only member is ``x``, when ``x`` is isolated."""
    if not is_isolated(g, x):
        return None
    if x.is_finite:
        return CylinderSet(g.path(x.pre, at=x.src), frozenset())
    return CylinderSet(g.path(x.pre + x.period, at=x.src), frozenset())


def bounded_points(
    g: Graph,
    pre_len: int,
    per_len: int,
    inf_cap: int = 1,
    limit: int | None = None,
    prefix_budget: int | None = None,
) -> list[BoundaryPoint]:
    """A deterministic finite sample of representable points: finite points
    whose path has length <= pre_len, and eventually periodic points with
    preperiod <= pre_len over simple-loop periods of length <= per_len (all
    rotations).  Sorted canonically and truncated to ``limit``.

    Prefix enumeration is breadth-first under a budget, so deep samples of
    wide graphs stay cheap (and deterministic) instead of exhaustive.
    """
    from .graphs import enumerate_simple_loops

    if prefix_budget is None:
        prefix_budget = 4000 if limit is None else max(200, 10 * limit)
    pts: set[BoundaryPoint] = set()
    prefixes: dict[str, list[tuple[str, tuple[Edge, ...]]]] = {v: [] for v in g.vertices}
    level: list[tuple[str, str, tuple[Edge, ...]]] = [(v, v, ()) for v in g.vertices]
    total = 0
    for depth in range(pre_len + 1):
        for v0, end, edges in level:
            prefixes[end].append((v0, edges))
        total += len(level)
        if depth == pre_len or total >= prefix_budget:
            break
        nxt = []
        for v0, end, edges in level:
            for e in g.out_edges(end, inf_cap=inf_cap):
                nxt.append((v0, g.edge_dst(e), edges + (e,)))
            if total + len(nxt) >= prefix_budget:
                break
        level = nxt[: max(0, prefix_budget - total)]
    for v in g.vertices:
        if is_singular(g, v):
            for v0, edges in prefixes[v]:
                pts.add(BoundaryPoint(v0, edges, ()))
    for loop in enumerate_simple_loops(g, per_len):
        for i in range(loop.length):
            rot = loop.edges[i:] + loop.edges[:i]
            base = g.edge_src(rot[0])
            for v0, edges in prefixes[base]:
                # pairs whose preperiod tail absorbs into the period are the
                # canonical forms of shorter pairs already enumerated
                if edges and edges[-1] == rot[-1]:
                    continue
                pts.add(BoundaryPoint(v0 if edges else base, edges, rot))
    out = sorted(pts, key=point_sort_key)
    return out if limit is None else out[:limit]


class CensusResult(NamedTuple):
    finite: bool
    points: tuple[BoundaryPoint, ...]  # complete census when finite
    witness: str | None  # reason the space is infinite


def _infinite_boundary_witness(g: Graph) -> str | None:
    for c in g.edge_classes:
        if c.is_infinite:
            return f"infinite parallel class {c.cid!r}"
    # A loop with an exit pumps out infinitely many distinct points, and it
    # exists iff some cycle passes through a vertex of out-degree >= 2.
    for u in g.vertices:
        if g.out_degree(u) < 2:
            continue
        loop = _cycle_through(g, u)
        if loop is not None:
            text = ".".join(e.cls for e in loop.edges)
            return f"loop {text} has an exit"
    return None


def _cycle_through(g: Graph, u: str) -> Path | None:
    parent: dict[str, Edge] = {}
    frontier = [u]
    seen = {u}
    while frontier:
        nxt = []
        for v in frontier:
            for c in g.out_classes(v):
                w = c.dst
                if w == u:
                    edges = [Edge(c.cid, 0)]
                    while v != u:
                        e = parent[v]
                        edges.append(e)
                        v = g.edge_src(e)
                    return g.loop(tuple(reversed(edges)))
                if w not in seen:
                    seen.add(w)
                    parent[w] = Edge(c.cid, 0)
                    nxt.append(w)
        frontier = nxt
    return None


def boundary_census(g: Graph) -> CensusResult:
    """The complete list of boundary paths when the space is finite, or a
    witness explaining why it is infinite.

    The space is finite iff the graph has no infinite class and no loop with
    an exit; then every vertex on a cycle has a single out-edge, so the walks
    below branch only off cycles and terminate.
    """
    witness = _infinite_boundary_witness(g)
    if witness is not None:
        return CensusResult(False, (), witness)
    points: set[BoundaryPoint] = set()

    def walk(v0: str, chain: list[str], edges: list[Edge]):
        v = chain[-1]
        if g.out_degree(v) == 0:
            points.add(canonicalize(g, v0, tuple(edges)))
            return
        for e in g.out_edges(v):
            w = g.edge_dst(e)
            if w in chain:
                i = chain.index(w)
                points.add(
                    canonicalize(g, v0, tuple(edges[:i]), tuple(edges[i:] + [e]))
                )
            else:
                chain.append(w)
                edges.append(e)
                walk(v0, chain, edges)
                edges.pop()
                chain.pop()

    for v in g.vertices:
        walk(v, [v], [])
    return CensusResult(True, tuple(sorted(points, key=point_sort_key)), None)
