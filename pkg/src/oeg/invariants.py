"""Numeric and structural invariants: adjacency matrices, exact integer
determinants of I - A, reachability, digraph isomorphism, and a consolidated
report."""

from __future__ import annotations

from dataclasses import dataclass

from .boundary import boundary_census, is_isolated
from .errors import InputError, UnsupportedScaleError
from .graphs import Graph, condition_l, is_singular, vertex_kind


def adjacency_matrix(g: Graph) -> list[list[int]]:
    """Total edge multiplicity per ordered vertex pair; only defined when
    every class is finite."""
    index = {v: i for i, v in enumerate(g.vertices)}
    n = len(g.vertices)
    a = [[0] * n for _ in range(n)]
    for c in g.edge_classes:
        if c.is_infinite:
            raise UnsupportedScaleError(
                "graphs with infinite classes have no adjacency matrix here"
            )
        a[index[c.src]][index[c.dst]] += c.mult
    return a


def det_bareiss(matrix: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination with
    row pivoting; all intermediate divisions are exact."""
    m = [row[:] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise InputError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            pivot = next((r for r in range(i + 1, n) if m[r][i] != 0), None)
            if pivot is None:
                return 0
            m[i], m[pivot] = m[pivot], m[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * (m[-1][-1] if n else 1)


def det_invariant(g: Graph) -> int:
    """det(I - A) for the adjacency matrix A, over exact integers."""
    a = adjacency_matrix(g)
    n = len(a)
    return det_bareiss([[(1 if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)])


def reachability(g: Graph) -> dict[tuple[str, str], bool]:
    """Positive-length reachability of ordered vertex pairs."""
    reach = {(v, w): False for v in g.vertices for w in g.vertices}
    for c in g.edge_classes:
        reach[(c.src, c.dst)] = True
    for mid in g.vertices:
        for a in g.vertices:
            if reach[(a, mid)]:
                for b in g.vertices:
                    if reach[(mid, b)]:
                        reach[(a, b)] = True
    return reach


def _multiplicity_pattern(g: Graph) -> dict[tuple[str, str], tuple]:
    """Multiset of class multiplicities per vertex pair, with infinity as a
    distinct symbol."""
    pat: dict[tuple[str, str], list] = {}
    for c in g.edge_classes:
        pat.setdefault((c.src, c.dst), []).append("inf" if c.is_infinite else c.mult)
    return {k: tuple(sorted(v, key=str)) for k, v in pat.items()}


def digraph_isomorphic(g1: Graph, g2: Graph) -> dict[str, str] | None:
    """Search for a vertex bijection matching the edge-multiplicity pattern
    exactly; brute force with degree-profile pruning (desk scale)."""
    if len(g1.vertices) != len(g2.vertices):
        return None
    p1, p2 = _multiplicity_pattern(g1), _multiplicity_pattern(g2)

    def profile(g, pat, v):
        outs = sorted((str(pat.get((v, w), ()))) for w in g.vertices)
        ins = sorted((str(pat.get((w, v), ()))) for w in g.vertices)
        return (tuple(outs), tuple(ins), str(pat.get((v, v), ())))

    prof1 = {v: profile(g1, p1, v) for v in g1.vertices}
    prof2 = {v: profile(g2, p2, v) for v in g2.vertices}
    if sorted(prof1.values()) != sorted(prof2.values()):
        return None
    candidates = {
        v: [w for w in g2.vertices if prof2[w] == prof1[v]] for v in g1.vertices
    }
    order = sorted(g1.vertices, key=lambda v: len(candidates[v]))

    def backtrack(i: int, assign: dict[str, str], used: set[str]):
        if i == len(order):
            return dict(assign)
        v = order[i]
        for w in candidates[v]:
            if w in used:
                continue
            ok = True
            for u, wu in assign.items():
                if p1.get((v, u), ()) != p2.get((w, wu), ()) or p1.get((u, v), ()) != p2.get((wu, w), ()):
                    ok = False
                    break
            if ok and p1.get((v, v), ()) == p2.get((w, w), ()):
                assign[v] = w
                used.add(w)
                got = backtrack(i + 1, assign, used)
                if got is not None:
                    return got
                del assign[v]
                used.remove(w)
        return None

    return backtrack(0, {}, set())


@dataclass
class InvariantReport:
    condition_l: bool
    exitless_loop: str | None
    singular_vertices: dict[str, str]
    boundary_finite: bool
    boundary_size: int | None
    boundary_witness: str | None
    det_i_minus_a: int | None
    fixed_point_count: int
    isotropy_census: dict[int, int] | None  # period generator -> count, full census only

    def to_json(self) -> dict:
        return {
            "conditionL": self.condition_l,
            "exitlessLoop": self.exitless_loop,
            "singularVertices": self.singular_vertices,
            "boundary": {
                "finite": self.boundary_finite,
                "size": self.boundary_size,
                "witness": self.boundary_witness,
            },
            "detIMinusA": self.det_i_minus_a,
            "fixedPoints": self.fixed_point_count,
            "isotropyCensus": (
                None
                if self.isotropy_census is None
                else {str(k): v for k, v in sorted(self.isotropy_census.items())}
            ),
        }


def invariant_report(g: Graph) -> InvariantReport:
    """Consolidated invariants of a graph.

    The determinant field det(I - A) is the classical flow-equivalence-style
    invariant of the edge shift; its invariance presumes irreducibility
    hypotheses that are not checked here.
    """
    from .dynamics import fixed_points
    from .groupoid import isotropy

    ok, loop = condition_l(g)
    witness_text = None if ok else ".".join(e.cls for e in loop.edges)
    singular = {
        v: vertex_kind(g, v) for v in g.vertices if is_singular(g, v)
    }
    census = boundary_census(g)
    try:
        det = det_invariant(g)
    except UnsupportedScaleError:
        det = None
    iso_census = None
    if census.finite:
        iso_census = {}
        for x in census.points:
            if is_isolated(g, x):
                d = isotropy(g, x).d
                iso_census[d] = iso_census.get(d, 0) + 1
    return InvariantReport(
        condition_l=ok,
        exitless_loop=witness_text,
        singular_vertices=singular,
        boundary_finite=census.finite,
        boundary_size=len(census.points) if census.finite else None,
        boundary_witness=census.witness,
        det_i_minus_a=det,
        fixed_point_count=len(fixed_points(g)),
        isotropy_census=iso_census,
    )
