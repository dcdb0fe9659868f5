import pytest
from hypothesis import given, strategies as st

from drinfeld_slopes.algebra import FieldSpec, Poly
from drinfeld_slopes.tree import (
    GroupElem, OrientedEdge, act_edge, act_vertex, neighbors, reduce_edge, reduce_vertex,
    std_edge, std_stabilizer, std_vertex, vertex_of,
)
from strategies import polys

F = FieldSpec(3)


@st.composite
def sl2_elements(draw, steps=4):
    """Products of elementary matrices (1 b; 0 1), (1 0; c 1): all of SL_2(A)."""
    g = GroupElem.identity(F)
    one, zero = Poly.one(F), Poly.zero(F)
    for _ in range(draw(st.integers(0, steps))):
        x = draw(polys(F, 2))
        g = g * (GroupElem(one, x, zero, one) if draw(st.booleans()) else GroupElem(one, zero, x, one))
    return g


@st.composite
def vertices(draw):
    return act_vertex(draw(sl2_elements()), std_vertex(F, draw(st.integers(-3, 3))))


def test_standard_vertex_normal_form():
    v = std_vertex(F, 2)
    assert v.level == 2 and vertex_of(v.matrix()) == v


@given(sl2_elements(), sl2_elements(), vertices())
def test_action_is_a_group_action(g, h, v):
    assert act_vertex(g * h, v) == act_vertex(g, act_vertex(h, v))
    assert act_vertex(g.inverse(), act_vertex(g, v)) == v


@given(vertices())
def test_vertex_has_q_plus_1_distinct_neighbours(v):
    nb = neighbors(v)
    assert len(set(nb)) == F.q + 1
    assert all(v in neighbors(w) for w in nb)


@given(vertices())
def test_reduce_vertex_reaches_standard_vertex(v):
    i, g = reduce_vertex(v)
    assert g.in_SL2A()
    assert act_vertex(g, v) == std_vertex(F, i)


@given(sl2_elements(), st.integers(-2, 3))
def test_reduce_edge_reaches_standard_edge(g, i):
    e = act_edge(g, std_edge(F, i))
    j, forward, h = reduce_edge(e)
    assert h.in_SL2A()
    image = act_edge(h, e)
    assert image == (std_edge(F, j) if forward else std_edge(F, j).reverse())


@pytest.mark.parametrize("i,kind,order", [(0, "vertex", 24), (0, "edge", 6), (2, "vertex", 54)])
def test_stabilizer_orders(i, kind, order):
    stab = std_stabilizer(F, i, kind)
    assert len(stab) == order
    target = std_vertex(F, i) if kind == "vertex" else std_edge(F, i)
    for g in stab:
        moved = act_vertex(g, target) if kind == "vertex" else act_edge(g, target)
        assert moved == target


def test_edge_reverse_is_involutive():
    e = std_edge(F, 1)
    assert e.reverse().reverse() == e
    assert isinstance(-e, OrientedEdge) and (-e) == e.reverse()
