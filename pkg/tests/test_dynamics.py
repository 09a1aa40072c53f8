from __future__ import annotations

import random

import pytest

from conftest import pt
from oeg.boundary import boundary_census
from oeg.dynamics import (
    OrbitWitness,
    check_extended_identity,
    cocycles_from_pseudogroup_transport,
    conjugacy_witness,
    conjugate_pseudogroup,
    extend_cocycles,
    fixed_points,
    identity_element,
    search_oe_witness,
    shift,
    shift_restriction,
    verify_conjugacy,
    verify_oe_witness,
    verify_pseudogroup_element,
)
from oeg.errors import DomainError, InputError, UnsupportedScaleError
from oeg.sampling import random_functional_graph
from oeg.zoo import arrow_into_loop, lone_loop, lone_vertex, two_cycle


def example_witness() -> OrbitWitness:
    """The two-point witness between the arrow-into-loop graph and the
    two-cycle: the long point maps to the cycle phase starting at c, with a
    one-step delay on that side."""
    E, F = arrow_into_loop(), two_cycle()
    h = {pt(E, "a.(b)*"): pt(F, "(c.d)*"), pt(E, "(b)*"): pt(F, "(d.c)*")}
    return OrbitWitness(
        E,
        F,
        h,
        k1={pt(E, "a.(b)*"): 1, pt(E, "(b)*"): 0},
        l1={pt(E, "a.(b)*"): 0, pt(E, "(b)*"): 0},
        k1p={pt(F, "(c.d)*"): 0, pt(F, "(d.c)*"): 1},
        l1p={pt(F, "(c.d)*"): 1, pt(F, "(d.c)*"): 0},
    )


def witness_corpus() -> list[OrbitWitness]:
    w1 = example_witness()
    corpus = [w1, w1.inverse()]
    for make in (arrow_into_loop, two_cycle, lone_vertex, lone_loop):
        g = make()
        census = boundary_census(g).points
        corpus.append(conjugacy_witness(g, g, {x: x for x in census}))
    found = search_oe_witness(lone_vertex(), lone_loop(), 1)
    corpus.append(found)
    rng = random.Random(99)
    added = 0
    while added < 4:
        a = random_functional_graph(rng, 4)
        b = random_functional_graph(rng, 4)
        try:
            w = search_oe_witness(a, b, 2)
        except UnsupportedScaleError:
            continue
        if w is not None:
            corpus.append(w)
            added += 1
    return corpus


def test_shift_examples(e1, g0):
    assert shift(e1, pt(e1, "a.(b)*"), 1) == pt(e1, "(b)*")
    assert shift(e1, pt(e1, "(b)*"), 5) == pt(e1, "(b)*")
    assert shift(e1, pt(e1, "a.(b)*"), 0) == pt(e1, "a.(b)*")
    with pytest.raises(DomainError):
        shift(g0, pt(g0, "@v"), 1)


def test_verify_witness_examples():
    w1 = example_witness()
    assert verify_oe_witness(w1).ok
    broken = OrbitWitness(
        w1.E, w1.F, dict(w1.h), dict(w1.k1), dict(w1.l1), dict(w1.k1p), dict(w1.l1p)
    )
    broken.k1[pt(w1.E, "a.(b)*")] = 0
    report = verify_oe_witness(broken)
    assert not report.ok and "a.(b)*" in report.failures[0]


def test_identity_needs_a_delay(e1):
    """With h = id the shifted point only matches after one extra shift on
    the right-hand side, so the all-zero tables fail and (0, 1) works."""
    census = boundary_census(e1).points
    h = {x: x for x in census}
    ge1 = [x for x in census if x.length >= 1]
    zero = {x: 0 for x in ge1}
    one = {x: 1 for x in ge1}
    assert not verify_oe_witness(OrbitWitness(e1, e1, h, zero, zero, zero, zero)).ok
    assert verify_oe_witness(OrbitWitness(e1, e1, h, zero, one, zero, one)).ok


def test_partial_tables_rejected():
    w1 = example_witness()
    k1 = dict(w1.k1)
    k1.pop(pt(w1.E, "(b)*"))
    with pytest.raises(InputError):
        verify_oe_witness(OrbitWitness(w1.E, w1.F, w1.h, k1, w1.l1, w1.k1p, w1.l1p))


def test_unsupported_scale(e2, f1):
    census = boundary_census(f1).points
    with pytest.raises(UnsupportedScaleError):
        verify_oe_witness(OrbitWitness(e2, f1, {}, {}, {}, {}, {}))


def test_extend_cocycles_examples():
    w1 = example_witness()
    t0 = extend_cocycles(w1, 0)
    assert set(t0.k.values()) == {0} and set(t0.lp.values()) == {0}
    t1 = extend_cocycles(w1, 1)
    assert t1.k == w1.k1 and t1.l == w1.l1 and t1.kp == w1.k1p and t1.lp == w1.l1p
    t2 = extend_cocycles(w1, 2)
    x = pt(w1.E, "a.(b)*")
    assert t2.k[x] == 1 and t2.l[x] == 0
    for n in range(6):
        assert check_extended_identity(w1, extend_cocycles(w1, n)) == []


def test_extend_cocycles_whole_corpus():
    for w in witness_corpus():
        assert verify_oe_witness(w).ok
        for n in range(6):
            assert check_extended_identity(w, extend_cocycles(w, n)) == []


def test_pseudogroup_examples(e1):
    bstar = pt(e1, "(b)*")
    alpha_b = shift_restriction(e1, [bstar])
    assert verify_pseudogroup_element(alpha_b)
    census = boundary_census(e1).points
    assert verify_pseudogroup_element(identity_element(e1, census))
    fixed = type(alpha_b)(e1, {bstar: bstar}, {bstar: 0}, {bstar: 0})
    assert verify_pseudogroup_element(fixed)
    bad = type(alpha_b)(e1, {bstar: pt(e1, "a.(b)*")}, {bstar: 0}, {bstar: 0})
    assert not verify_pseudogroup_element(bad)


def test_conjugate_pseudogroup_examples():
    w1 = example_witness()
    E, F = w1.E, w1.F
    census = boundary_census(E).points
    ident = identity_element(E, census)
    out = conjugate_pseudogroup(w1, ident)
    assert set(out.m.values()) == {0} and set(out.n.values()) == {0}
    assert all(out.alpha[y] == y for y in out.alpha)

    alpha_a = shift_restriction(E, [pt(E, "a.(b)*")])
    got = conjugate_pseudogroup(w1, alpha_a)
    y = pt(F, "(c.d)*")
    assert got.alpha == {y: pt(F, "(d.c)*")}
    assert got.m[y] == 0 and got.n[y] == 1
    assert verify_pseudogroup_element(got)

    alpha_b = shift_restriction(E, [pt(E, "(b)*")])
    got_b = conjugate_pseudogroup(w1, alpha_b)
    yb = pt(F, "(d.c)*")
    assert got_b.alpha == {yb: yb}
    assert verify_pseudogroup_element(got_b)


def _transport_edge_shifts(w: OrbitWitness):
    els = {}
    census = boundary_census(w.E).points
    for c in w.E.edge_classes:
        dom = [x for x in census if x.length >= 1 and x.edge_at(0).cls == c.cid]
        els[c.cid] = conjugate_pseudogroup(w, shift_restriction(w.E, dom))
    return els


def test_transport_roundtrip():
    w1 = example_witness()
    rebuilt = cocycles_from_pseudogroup_transport(
        w1.E, w1.F, w1.h, _transport_edge_shifts(w1), _transport_edge_shifts(w1.inverse())
    )
    assert verify_oe_witness(rebuilt).ok


def test_transport_identity_shape(e1):
    census = boundary_census(e1).points
    h = {x: x for x in census}
    els = {}
    for c in e1.edge_classes:
        dom = [x for x in census if x.length >= 1 and x.edge_at(0).cls == c.cid]
        el = shift_restriction(e1, dom)
        els[c.cid] = el
    w = cocycles_from_pseudogroup_transport(e1, e1, h, els, els)
    assert set(w.k1.values()) <= {0} and set(w.l1.values()) <= {1}
    assert verify_oe_witness(w).ok


def test_transport_missing_edge(e1):
    census = boundary_census(e1).points
    h = {x: x for x in census}
    with pytest.raises(InputError):
        cocycles_from_pseudogroup_transport(e1, e1, h, {}, {})


def test_roundtrip_on_corpus():
    for w in witness_corpus():
        rebuilt = cocycles_from_pseudogroup_transport(
            w.E, w.F, w.h, _transport_edge_shifts(w), _transport_edge_shifts(w.inverse())
        )
        assert verify_oe_witness(rebuilt).ok


def test_search_examples(e1, f1, g0, floop):
    w = search_oe_witness(e1, f1, 2)
    assert w is not None and verify_oe_witness(w).ok
    w2 = search_oe_witness(g0, floop, 1)
    assert w2 is not None and verify_oe_witness(w2).ok
    assert search_oe_witness(g0, e1, 2) is None


def test_conjugacy_examples(e1, f1):
    census_e = boundary_census(e1).points
    census_f = boundary_census(f1).points
    assert verify_conjugacy(e1, e1, {x: x for x in census_e})
    import itertools

    for perm in itertools.permutations(census_f):
        assert not verify_conjugacy(e1, f1, dict(zip(census_e, perm)))
    assert fixed_points(e1) == [pt(e1, "(b)*")]
    assert fixed_points(f1) == []


def test_conjugacy_witness_shape(e1):
    census = boundary_census(e1).points
    w = conjugacy_witness(e1, e1, {x: x for x in census})
    assert verify_oe_witness(w).ok
    assert set(w.k1.values()) <= {0} and set(w.l1.values()) <= {1}


from hypothesis import given, settings, strategies as st
from conftest import small_graph_st
from oeg.sampling import sample_points


@settings(max_examples=60, deadline=None)
@given(small_graph_st(max_vertices=3), st.integers(0, 10**6), st.integers(0, 3), st.integers(0, 3))
def test_shift_composes(g, seed, a, b):
    pts = sample_points(g, pre_len=3, per_len=3, limit=20)
    if not pts:
        return
    x = pts[seed % len(pts)]
    if x.length < a + b:
        return
    assert shift(g, x, a + b) == shift(g, shift(g, x, a), b)
