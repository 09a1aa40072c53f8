"""Germs of prefix-exchange transformations and their winding calculus.

A germ is a pair of finite paths with a common range, anchored at a boundary
point extending the second path; it acts by swapping that prefix.  Germ
equivalence is decided combinatorially: at an isolated eventually periodic
anchor the obstruction is an integer winding index (the cocycle difference
divided by the primitive period length); elsewhere it is agreement of the
transported prefixes along the anchor.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .boundary import (
    BoundaryPoint,
    boundary_census,
    bounded_points,
    drop_edges,
    is_isolated,
    point_sort_key,
    prefix_path,
    prepend,
    starts_with,
)
from .errors import CompositionError, InputError
from .graphs import Graph, Path
from .groupoid import GroupoidElement, enumerate_elements, shift_orbit


@dataclass(frozen=True, slots=True)
class Germ:
    mu: Path
    nu: Path
    x: BoundaryPoint

    @property
    def cocycle(self) -> int:
        return self.mu.length - self.nu.length


def germ_make(g: Graph, mu: Path, nu: Path, x: BoundaryPoint) -> Germ:
    if mu.dst != nu.dst:
        raise InputError("the two paths of a germ must share their range")
    if not starts_with(x, nu):
        raise InputError("the anchor point must extend the second path")
    return Germ(mu, nu, x)


def germ_apply(g: Graph, germ: Germ) -> BoundaryPoint:
    """The image of the anchor: strip ``nu``, prepend ``mu``."""
    return prepend(g, germ.mu, drop_edges(g, germ.x, germ.nu.length))


def germ_cocycle(germ: Germ) -> int:
    return germ.cocycle


def identity_germ(g: Graph, x: BoundaryPoint) -> Germ:
    empty = g.path((), at=x.src)
    return Germ(empty, empty, x)


def germ_compose(g: Graph, g1: Germ, g2: Germ) -> Germ:
    """Compose two germs anchored compatibly: the image of the second must
    be the anchor of the first.  The paths merge along the shared point and
    the cocycles add."""
    if germ_apply(g, g2) != g1.x:
        raise CompositionError("germs do not compose: anchor mismatch")
    if g1.nu.length <= g2.mu.length:
        # mu2 = nu1 . tau
        tau = g2.mu.edges[g1.nu.length :]
        mu = g.path(g1.mu.edges + tau, at=g1.mu.src)
        return germ_make(g, mu, g2.nu, g2.x)
    # nu1 = mu2 . tau
    tau = g1.nu.edges[g2.mu.length :]
    nu = g.path(g2.nu.edges + tau, at=g2.nu.src)
    return germ_make(g, g1.mu, nu, g2.x)


def germ_invert(g: Graph, germ: Germ) -> Germ:
    """Swap the paths and rebase at the image point."""
    return germ_make(g, germ.nu, germ.mu, germ_apply(g, germ))


def winding(g: Graph, g1: Germ, g2: Germ) -> int:
    """Integer winding index of two germs at a common isolated eventually
    periodic anchor with equal images: the cocycle difference divided by the
    primitive period length (always an integer there)."""
    if g1.x != g2.x:
        raise InputError("winding needs a common anchor point")
    x = g1.x
    if x.is_finite or not is_isolated(g, x):
        raise InputError("winding is defined at isolated eventually periodic points")
    if germ_apply(g, g1) != germ_apply(g, g2):
        raise InputError("winding needs equal images at the anchor")
    p = len(x.period)
    d = g1.cocycle - g2.cocycle
    if d % p != 0:
        raise InputError("cocycle difference is not a period multiple")
    return d // p


def germ_equivalent(g: Graph, g1: Germ, g2: Germ) -> bool:
    """Germ equivalence: same anchor, same image, and (isolated eventually
    periodic) vanishing winding / (isolated finite) nothing further /
    (non-isolated) agreement of the transported prefixes along the anchor."""
    if g1.x != g2.x:
        return False
    x = g1.x
    if germ_apply(g, g1) != germ_apply(g, g2):
        return False
    if is_isolated(g, x):
        if x.is_finite:
            return True
        return winding(g, g1, g2) == 0
    if g1.nu.length <= g2.nu.length:
        shorter, longer = g1, g2
    else:
        shorter, longer = g2, g1
    tau = x.prefix_edges(longer.nu.length)[shorter.nu.length :]
    aligned = g.path(shorter.mu.edges + tau, at=shorter.mu.src)
    return aligned == longer.mu


def phi(g: Graph, e: GroupoidElement) -> Germ:
    """The canonical germ of a groupoid element: exchange the witness-length
    prefixes of its two points, anchored at the source point."""
    mu = prefix_path(g, e.x, e.m)
    nu = prefix_path(g, e.y, e.n)
    return germ_make(g, mu, nu, e.y)


def germ_class_key(g: Graph, germ: Germ) -> tuple:
    """Normal form of a germ class: (anchor, cocycle, image)."""
    return (germ.x, germ.cocycle, germ_apply(g, germ))


@dataclass
class PhiReport:
    bound: int
    pool_size: int
    pool_complete: bool
    element_count: int
    class_count: int
    germ_count: int
    bijection_ok: bool
    equivalence_ok: bool
    winding_ok: bool
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.bijection_ok and self.equivalence_ok and self.winding_ok


def representable_pool(
    g: Graph, bound: int, max_points: int | None = None
) -> tuple[list[BoundaryPoint], bool]:
    """The point pool a comparison run works over: the full census when the
    boundary is finite, otherwise a bounded deterministic sample."""
    census = boundary_census(g)
    if census.finite:
        return list(census.points), True
    pts = bounded_points(g, pre_len=1, per_len=max(3, min(bound, 4)), limit=max_points)
    return pts, False


def phi_bijectivity_check(
    g: Graph,
    bound: int,
    max_points: int | None = 24,
    pair_sample: int = 40,
) -> PhiReport:
    """Compare germ classes with groupoid elements over a common pool.

    Enumerates all germs ``(mu, nu, x)`` with path lengths <= bound whose
    anchor and image both lie in the pool, partitions them into classes,
    and checks that the class keys coincide with the enumerated elements
    ``(image, cocycle, anchor)`` and that each element's canonical germ lands
    in its own class.  Within every class a bounded sample of germ pairs is
    cross-checked against `germ_equivalent`, and the winding laws
    (antisymmetry, additivity) are verified on all germ triples sharing an
    isolated eventually periodic anchor and an image.
    """
    pool, complete = representable_pool(g, bound, max_points)
    shifts = {x: shift_orbit(g, x, bound) for x in pool}
    elements = enumerate_elements(g, pool, bound, shifts)
    violations: list[str] = []

    intern: dict[BoundaryPoint, int] = {}
    ids = {x: [intern.setdefault(p, len(intern)) for p in shifts[x]] for x in pool}

    # Germ enumeration: nu is forced to be a prefix of x, and a germ whose
    # image alpha lies in the pool satisfies sigma^{|mu|}(alpha) = sigma^{|nu|}(x),
    # so alpha and |mu| can be enumerated instead of mu itself.
    classes: dict[tuple, list[Germ]] = {}
    germ_count = 0
    for x in pool:
        sx = ids[x]
        for nlen in range(min(bound, len(sx) - 1) + 1):
            z = sx[nlen]
            nu = prefix_path(g, x, nlen)
            for alpha in pool:
                sa = ids[alpha]
                for mlen in range(min(bound, len(sa) - 1) + 1):
                    if sa[mlen] != z:
                        continue
                    germ = Germ(prefix_path(g, alpha, mlen), nu, x)
                    germ_count += 1
                    key = (x, mlen - nlen, alpha)
                    classes.setdefault(key, []).append(germ)

    element_keys = {(e.y, e.k, e.x) for e in elements}
    class_keys = set(classes)
    bijection_ok = element_keys == class_keys
    for key in sorted(class_keys - element_keys, key=str)[:5]:
        violations.append(f"germ class without matching element: cocycle {key[1]}")
    for key in sorted(element_keys - class_keys, key=str)[:5]:
        violations.append(f"element without matching germ class: cocycle {key[1]}")
    for e in elements:
        image = germ_class_key(g, phi(g, e))
        if image != (e.y, e.k, e.x):
            bijection_ok = False
            violations.append("phi lands outside the expected class")
            break

    # Key-grouping must agree with germ_equivalent (sampled pairs, budgeted
    # per run).
    equivalence_ok = True
    by_anchor: dict[BoundaryPoint, list[tuple[tuple, Germ]]] = {}
    for key, germs in classes.items():
        for germ in germs:
            by_anchor.setdefault(key[0], []).append((key, germ))
    budget = pair_sample
    for anchor in sorted(by_anchor, key=point_sort_key):
        if budget <= 0 or not equivalence_ok:
            break
        tagged = by_anchor[anchor]
        for (k1, a), (k2, b) in itertools.islice(itertools.combinations(tagged, 2), budget):
            budget -= 1
            if germ_equivalent(g, a, b) != (k1 == k2):
                equivalence_ok = False
                violations.append("germ_equivalent disagrees with the class normal form")
                break

    # Winding laws over all germ pairs and triples sharing an isolated
    # eventually periodic anchor and an image (such groups stay small: one
    # germ per exponent pair within the bound).
    winding_ok = True
    groups: dict[tuple, list[Germ]] = {}
    for (x, _, alpha), germs in classes.items():
        if not x.is_finite and is_isolated(g, x):
            groups.setdefault((x, alpha), []).extend(germs)
    for germs in groups.values():
        if not winding_ok:
            break
        values = [[winding(g, a, b) for b in germs] for a in germs]
        n = len(germs)
        for i in range(n):
            for j in range(n):
                if values[i][j] != -values[j][i]:
                    winding_ok = False
                    violations.append("winding antisymmetry fails")
                if any(values[i][j] + values[j][k] != values[i][k] for k in range(n)):
                    winding_ok = False
                    violations.append("winding additivity fails")
            if not winding_ok:
                break
    return PhiReport(
        bound=bound,
        pool_size=len(pool),
        pool_complete=complete,
        element_count=len(elements),
        class_count=len(classes),
        germ_count=germ_count,
        bijection_ok=bijection_ok,
        equivalence_ok=equivalence_ok,
        winding_ok=winding_ok,
        violations=violations,
    )
