from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import SMALL_GROUPS, group_and_gens, k4
from dessinforge.cayley_trivalent import (EdgeTag, LabeledCubicGraph, VertexTag, build_trivalent, cayley_ball,
                                          cayley_graph, digraph_isomorphism, edge_gadget_size,
                                          free_group_oracle, integer_oracle, recover_cayley,
                                          remnant_components, triangles, validate_cubic)
from dessinforge.errors import NotInGrammar
from dessinforge.group_core import builtin_group, normalize_generators


def test_z2_vertex_count():
    G, gens = group_and_gens("cyclic:2")
    n = len(gens)
    N = n + 2
    # 2 vertex gadgets of size 2n and one edge gadget per arc
    expected = G.order * 2 * n + G.order * sum(2 * (N + i) + 8 for i in range(1, n + 1))
    assert expected == 216
    g = build_trivalent(G, gens)
    assert g.num_vertices == 216
    assert edge_gadget_size(N, 1) == 2 * (N + 1) + 8


@pytest.mark.parametrize("spec", SMALL_GROUPS)
def test_gadget_graph_is_valid_and_decodes(spec):
    G, gens = group_and_gens(spec)
    g = build_trivalent(G, gens)
    rep = validate_cubic(g)
    assert rep.ok, rep.witnesses
    assert len(g.edges) * 2 == 3 * g.num_vertices
    assert len(triangles(g)) == 4 * G.order * len(gens)
    C = cayley_graph(G, gens)
    phi = digraph_isomorphism(recover_cayley(g), C)
    assert phi is not None


def test_tags_are_unique_and_deterministic():
    G, gens = group_and_gens("symmetric:3")
    g1 = build_trivalent(G, gens)
    g2 = build_trivalent(G, gens)
    assert g1.edges == g2.edges and g1.tags == g2.tags
    assert len(set(g1.tags)) == g1.num_vertices
    assert str(VertexTag(0, 1, "in")) == "V(0,1,in)"


def test_validation_witnesses():
    g = k4()
    assert validate_cubic(g).ok
    broken = LabeledCubicGraph(4, g.edges[:-1])
    rep = validate_cubic(broken)
    assert not rep.cubic and rep.witnesses["cubic"]["degree"] == 2
    relabelled = LabeledCubicGraph(4, [(u, v, 1) for u, v, _ in g.edges])
    rep = validate_cubic(relabelled)
    assert not rep.properly_labeled and rep.cubic
    two_k4 = LabeledCubicGraph(8, g.edges + [(u + 4, v + 4, lab) for u, v, lab in g.edges])
    rep = validate_cubic(two_k4)
    assert not rep.connected and rep.witnesses["connected"]["unreached"] == 4
    parallel = LabeledCubicGraph(2, [(0, 1, 1), (0, 1, 2), (0, 1, 3)])
    assert not validate_cubic(parallel).simple


def test_recover_rejects_graphs_outside_the_grammar():
    with pytest.raises(NotInGrammar):
        recover_cayley(k4())
    with pytest.raises(NotInGrammar):
        recover_cayley(LabeledCubicGraph(4, k4().edges[:-1]))


def test_digraph_isomorphism_respects_labels():
    G, _ = builtin_group("cyclic:3")
    a = cayley_graph(G, normalize_generators(G, [1]))
    b = cayley_graph(G, normalize_generators(G, [2]))
    phi = digraph_isomorphism(a, b)
    assert phi == {0: 0, 1: 2, 2: 1}
    Z4, _ = builtin_group("cyclic:4")
    V4, _ = builtin_group("klein:4")
    assert digraph_isomorphism(cayley_graph(Z4, normalize_generators(Z4, [1])),
                               cayley_graph(V4, normalize_generators(V4, [1, 2]))) is None
    # same size, same labels, different structure
    assert digraph_isomorphism(cayley_graph(Z4, normalize_generators(Z4, [1, 2])),
                               cayley_graph(V4, normalize_generators(V4, [1, 2]))) is None


@pytest.mark.parametrize("radius", [0, 1, 3, 6])
def test_integer_ball(radius):
    mul, inv, e, s = integer_oracle()
    ball = cayley_ball([s] * 4, mul, inv, e, radius)
    assert ball.truncated
    assert sorted(ball.vertices) == list(range(-radius, radius + 1))
    assert len(ball.arcs) == 4 * 2 * radius


@pytest.mark.parametrize("radius", [1, 2, 3])
def test_free_group_ball(radius):
    mul, inv, e, gens = free_group_oracle(2)
    ball = cayley_ball(gens + gens[:1] * 3, mul, inv, e, radius)
    assert len(ball.vertices) == 1 + 4 * (3 ** radius - 1) // 2


@given(st.sampled_from(["cyclic:6", "klein:4", "symmetric:3", "dihedral:3", "quaternion:8"]),
       st.lists(st.integers(0, 7), max_size=3), st.randoms(use_true_random=False))
@settings(max_examples=15, deadline=None)
def test_any_generating_list_builds_and_decodes(spec, extra, rnd):
    G, S = builtin_group(spec)
    S = list(S) + [x % G.order for x in extra if x % G.order]
    rnd.shuffle(S)
    gens = normalize_generators(G, S)
    g = build_trivalent(G, gens)
    assert validate_cubic(g).ok
    assert digraph_isomorphism(recover_cayley(g), cayley_graph(G, gens)) is not None


@pytest.mark.parametrize("spec", ["cyclic:3", "klein:4", "dihedral:4"])
def test_remnant_sizes_and_gadget_count(spec):
    G, gens = group_and_gens(spec)
    g = build_trivalent(G, gens)
    n = len(gens)
    tri, on_tri, comps = remnant_components(g)
    # every triangle is inside an edge gadget
    assert all(isinstance(g.tags[v], EdgeTag) for t in tri for v in t)
    vertex_comps = [c for c in comps if all(isinstance(g.tags[v], VertexTag) for v in c)]
    assert len(vertex_comps) == G.order and all(len(c) == 2 * n for c in vertex_comps)
    assert all(len(c) > 2 * n for c in comps if c not in vertex_comps)
    assert len({(t.g, t.i) for t in g.tags if isinstance(t, EdgeTag)}) == G.order * n
