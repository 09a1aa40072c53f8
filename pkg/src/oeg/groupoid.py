"""The groupoid of shift-equivalent boundary-path pairs.

Elements are triples ``(x, k, y)`` of boundary paths with an integer
cocycle, witnessed by a minimal pair of shift exponents ``(m, n)`` with
``m - n = k`` and ``sigma^m(x) = sigma^n(y)``.  Minimality makes the stored
form unique.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boundary import BoundaryPoint, CylinderSet
from .dynamics import _eq_after_shifts, shift
from .errors import CompositionError, DomainError, InputError
from .graphs import Graph, condition_l


@dataclass(frozen=True, slots=True)
class GroupoidElement:
    x: BoundaryPoint
    k: int
    y: BoundaryPoint
    m: int
    n: int

    @property
    def is_unit(self) -> bool:
        return self.k == 0 and self.x == self.y


def make_element(g: Graph, x: BoundaryPoint, m: int, n: int, y: BoundaryPoint) -> GroupoidElement:
    """Build the element ``(x, m - n, y)`` after checking the shift equalizer
    and minimizing the witness pair."""
    if m < 0 or n < 0:
        raise InputError("shift exponents must be natural numbers")
    if x.length < m or y.length < n:
        raise DomainError("shift exponent exceeds point length")
    if shift(g, x, m) != shift(g, y, n):
        raise InputError("the shifted points disagree; not a groupoid element")
    while m > 0 and n > 0 and _eq_after_shifts(g, m - 1, x, n - 1, y):
        m, n = m - 1, n - 1
    return GroupoidElement(x, m - n, y, m, n)


def unit(g: Graph, x: BoundaryPoint) -> GroupoidElement:
    return GroupoidElement(x, 0, x, 0, 0)


def compose(g: Graph, e1: GroupoidElement, e2: GroupoidElement) -> GroupoidElement:
    """Product ``(x, k, y) . (y, l, z) = (x, k + l, z)``; the middle points
    must match."""
    if e1.y != e2.x:
        raise CompositionError("source of the left factor differs from range of the right")
    t = max(e1.n, e2.m)
    m = e1.m + (t - e1.n)
    n = e2.n + (t - e2.m)
    return make_element(g, e1.x, m, n, e2.y)


def inverse(g: Graph, e: GroupoidElement) -> GroupoidElement:
    return GroupoidElement(e.y, -e.k, e.x, e.n, e.m)


@dataclass(frozen=True, slots=True)
class IsotropyGroup:
    """The subgroup d*Z of cocycles fixing a point; d = 0 means trivial."""

    d: int

    @property
    def trivial(self) -> bool:
        return self.d == 0

    def __str__(self) -> str:
        return "trivial" if self.trivial else f"{self.d}Z"


def isotropy(g: Graph, x: BoundaryPoint) -> IsotropyGroup:
    """Finite points have trivial isotropy; an eventually periodic point has
    isotropy generated by its primitive period length."""
    return IsotropyGroup(0 if x.is_finite else len(x.period))


@dataclass(frozen=True)
class PrincipalityReport:
    principal: bool
    witness_unit: GroupoidElement | None = None  # isolated unit with isotropy
    witness_isotropy: IsotropyGroup | None = None
    trivial_point: BoundaryPoint | None = None  # trivial-isotropy point in the probe
    probe_note: str | None = None


def principality_report(g: Graph, probe: CylinderSet | None = None) -> PrincipalityReport:
    """Topological principality of the groupoid, which holds iff every loop
    has an exit.

    When it fails, the exitless loop yields an isolated unit with nontrivial
    isotropy.  When it holds and a probe cylinder is supplied, a
    trivial-isotropy (finite) point inside it is returned if one is
    representable; otherwise the guaranteed point is aperiodic and the
    report says so instead of fabricating it.
    """
    ok, loop = condition_l(g)
    if not ok:
        from .boundary import canonicalize

        x = canonicalize(g, loop.src, (), loop.edges)
        return PrincipalityReport(False, unit(g, x), isotropy(g, x))
    if probe is None:
        return PrincipalityReport(True)
    pt = _finite_point_in(g, probe)
    if pt is not None:
        return PrincipalityReport(True, trivial_point=pt)
    return PrincipalityReport(
        True,
        probe_note="every representable point here is eventually periodic; "
        "the guaranteed trivial-isotropy point is aperiodic",
    )


def _finite_point_in(g: Graph, z: CylinderSet, depth: int | None = None) -> BoundaryPoint | None:
    """Bounded search for a finite boundary point inside a cylinder."""
    from .boundary import canonicalize, cyl_membership
    from .graphs import is_singular

    if depth is None:
        depth = len(g.vertices) + 1
    base = z.base

    def walk(v, edges, d):
        if is_singular(g, v):
            pt = canonicalize(g, base.src, base.edges + tuple(edges))
            if cyl_membership(g, pt, z):
                return pt
        if d == 0:
            return None
        for e in g.out_edges(v, inf_cap=1):
            if not edges and e in z.excluded:
                continue
            got = walk(g.edge_dst(e), edges + [e], d - 1)
            if got is not None:
                return got
        return None

    return walk(base.dst, [], depth)


def enumerate_elements(
    g: Graph,
    pool: list[BoundaryPoint],
    bound: int,
    shifts: dict[BoundaryPoint, list[BoundaryPoint]] | None = None,
) -> list[GroupoidElement]:
    """All elements ``(x, k, y)`` over the pool whose minimal witness fits in
    the bound and with |k| <= bound, in deterministic order."""
    if shifts is None:
        shifts = {x: shift_orbit(g, x, bound) for x in pool}
    intern: dict[BoundaryPoint, int] = {}
    ids = {}
    for x in pool:
        ids[x] = [intern.setdefault(p, len(intern)) for p in shifts[x]]
    out = []
    for x in pool:
        sx = ids[x]
        for y in pool:
            sy = ids[y]
            best: dict[int, tuple[int, int]] = {}
            for m in range(len(sx)):
                for n in range(len(sy)):
                    k = m - n
                    if abs(k) > bound or k in best:
                        continue
                    if sx[m] == sy[n]:
                        best[k] = (m, n)
            for k in sorted(best):
                m, n = best[k]
                out.append(GroupoidElement(x, k, y, m, n))
    return out


def shift_orbit(g: Graph, x: BoundaryPoint, bound: int) -> list[BoundaryPoint]:
    """The points sigma^j(x) for j = 0..bound (stopping at the length)."""
    orbit = [x]
    for j in range(1, bound + 1):
        if x.length < j:
            break
        orbit.append(shift(g, orbit[-1]))
    return orbit
