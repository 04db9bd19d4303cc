import random

import networkx as nx
import numpy as np
import pytest

import daisycube.embedder as embedder
from daisycube import (
    Graph,
    NotDaisyCubeError,
    bfs,
    build,
    embed_isometric,
    family,
    mark_extremal,
    minimal_shift,
    proper_embed,
    proper_embed_detailed,
    strip,
)
from daisycube.verifier import equivalent, is_isometric, is_proper, minimal_vertices_brute

from _support import cube_from, graph_from_networkx, random_instance, spider, vertex_with_label


def test_path_p3():
    g = Graph(3, [(0, 1), (1, 2)])
    beta, root = embed_isometric(g)
    assert root == 1
    assert beta.words() == ["10", "00", "01"]
    alpha, v = proper_embed(g)
    assert is_proper(g, alpha)
    assert alpha.labels[v] == 0


def test_single_vertex_and_single_edge():
    alpha, v = proper_embed(Graph(1, []))
    assert alpha.words() == ["0"] and v == 0
    alpha, v = proper_embed(Graph(2, [(0, 1)]))
    assert sorted(alpha.words()) == ["0", "1"]


def test_q3_is_a_bijection_onto_b3():
    g = build(family("hypercube", 3)).graph
    beta, _ = embed_isometric(g)
    assert sorted(beta.labels) == list(range(8))
    assert is_isometric(g, beta)


@pytest.mark.parametrize("name", ["hypercube", "qminus", "fibonacci", "lucas"])
@pytest.mark.parametrize("h", [3, 6])
def test_families_embed_properly(name, h):
    dc = build(family(name, h))
    g, _ = strip(dc, 5)
    beta, root = embed_isometric(g)
    assert is_isometric(g, beta)
    assert beta.labels[root] == 0
    alpha, v = proper_embed(g)
    assert is_proper(g, alpha)
    assert v in minimal_vertices_brute(g, alpha)


def test_qminus4_rooted_at_1100():
    dc = build(family("qminus", 4))
    u = vertex_with_label(dc, "1100")
    res = proper_embed_detailed(dc.graph, root=u)
    beta = res.isometric
    assert beta.labels[u] == 0
    assert sorted(beta.words()[v] for v in res.marks.marked()) == ["1101", "1110", "1111"]
    assert str(res.marked_shift) == "1100"
    assert not res.repaired
    assert res.embedding.labels == [b ^ 0b1100 for b in beta.labels]
    assert is_proper(dc.graph, res.embedding)
    # the shift lands on the vertex missing from the hypercube's antipode: the truth 0000
    assert dc.labels.labels[res.minimal_vertex] == 0


def test_qminus4_standalone_marking_and_shift():
    dc = build(family("qminus", 4))
    u = vertex_with_label(dc, "1100")
    beta, _ = embed_isometric(dc.graph, u)
    marks = mark_extremal(dc.graph, beta, u)
    assert sorted(beta.words()[v] for v in marks.marked()) == ["1101", "1110", "1111"]
    assert str(minimal_shift(beta, marks)) == "1100"


def test_mark_extremal_needs_a_zero_root():
    dc = build(family("qminus", 4))
    beta, root = embed_isometric(dc.graph)
    other = dc.graph.neighbors(root)[0]
    with pytest.raises(ValueError):
        mark_extremal(dc.graph, beta, other)


@pytest.mark.parametrize("h", range(1, 7))
def test_hypercube_marks_only_the_antipode(h):
    g = build(family("hypercube", h)).graph
    beta, u = embed_isometric(g)
    marks = mark_extremal(g, beta, u)
    assert [beta.labels[v] for v in marks.marked()] == [(1 << h) - 1]
    assert minimal_shift(beta, marks).bits == (1 << h) - 1


def brute_marked(dc, g, truth, u):
    """Y^u and Z^u from the generators and graph distances, independent of the embedder."""
    if g.n == 1:
        return set()  # by convention nothing is marked and the root is minimal
    lu = truth.labels[u]
    above = [x for x in dc.generators.antichain_bits if lu & ~x == 0]
    in_gu = [any(b & ~x == 0 for x in above) for b in truth.labels]
    dist = bfs(g, u).dist
    out = set()
    for v in range(g.n):
        up = [z for z in g.adj[v] if dist[z] == dist[v] + 1]
        if in_gu[v] and not any(in_gu[z] for z in up):
            out.add(v)
        elif not in_gu[v] and not up:
            out.add(v)
    return out


@pytest.mark.parametrize("i", range(40))
def test_marked_set_is_y_union_z(i):
    dc, g, truth = random_instance(i, 8)
    res = proper_embed_detailed(g)
    u = res.isometric.root
    assert set(res.marks.marked()) == brute_marked(dc, g, truth, u)


def test_marked_set_on_qminus4_is_y_union_z():
    dc = build(family("qminus", 4))
    u = vertex_with_label(dc, "1100")
    res = proper_embed_detailed(dc.graph, root=u)
    assert set(res.marks.marked()) == brute_marked(dc, dc.graph, dc.labels, u)


def test_shadowed_generator_needs_the_repair():
    dc = cube_from("01011", "10111", "11101", "11110")
    u = vertex_with_label(dc, "00101")
    raw = proper_embed_detailed(dc.graph, root=u, repair=False)
    assert not is_proper(dc.graph, raw.embedding)
    fixed = proper_embed_detailed(dc.graph, root=u)
    assert fixed.repaired
    assert fixed.marked_shift == raw.shift
    assert is_proper(dc.graph, fixed.embedding)
    assert fixed.minimal_vertex in minimal_vertices_brute(dc.graph, fixed.embedding)


def test_random_instance_needing_repair():
    dc = build(family("random-antichain", 10, 99))
    g, _ = strip(dc, 99)
    assert proper_embed_detailed(g).repaired
    alpha, v = proper_embed(g)
    assert is_proper(g, alpha)
    assert v in minimal_vertices_brute(g, alpha)


def test_root_already_minimal_means_zero_shift():
    for name in ("qminus", "fibonacci", "lucas"):
        dc = build(family(name, 5))
        res = proper_embed_detailed(dc.graph, root=0)
        assert res.shift.bits == 0
        assert res.minimal_vertex == 0


def k23():
    return Graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])


def c6():
    return Graph(6, [(i, (i + 1) % 6) for i in range(6)])


def petersen():
    return graph_from_networkx(nx.petersen_graph())


@pytest.mark.parametrize("engine", ["numpy", "python"])
@pytest.mark.parametrize("make", [spider, c6, k23, petersen], ids=["spider", "C6", "K23", "petersen"])
def test_non_daisy_graphs_are_rejected(make, engine):
    g = make()
    with pytest.raises(NotDaisyCubeError):
        proper_embed(g, engine=engine)
    for root in range(g.n):
        with pytest.raises(NotDaisyCubeError):
            embed_isometric(g, root, engine=engine)


def test_engine_argument_validation():
    g = Graph(2, [(0, 1)])
    with pytest.raises(ValueError):
        proper_embed(g, engine="gpu")


@pytest.mark.parametrize("i", range(60))
def test_engines_agree(i):
    _, g, _ = random_instance(i, 9)
    a = proper_embed_detailed(g, engine="numpy")
    b = proper_embed_detailed(g, engine="python", strict=True)
    assert a.isometric == b.isometric
    assert a.embedding == b.embedding
    assert a.minimal_vertex == b.minimal_vertex
    assert list(a.marks.q) == list(b.marks.q)


@pytest.mark.parametrize("i", range(30))
def test_fused_marks_match_the_standalone_pass(i):
    _, g, _ = random_instance(i, 9)
    res = proper_embed_detailed(g)
    for engine in ("numpy", "python"):
        marks = mark_extremal(g, res.isometric, res.isometric.root, strict=True, engine=engine)
        assert list(marks.q) == list(res.marks.q)


def test_small_blocks_give_the_same_answer(monkeypatch):
    expected = [proper_embed(random_instance(i, 9)[1]) for i in range(20)]
    monkeypatch.setattr(embedder, "_BLOCK", 8)
    for i in range(20):
        alpha, v = proper_embed(random_instance(i, 9)[1])
        assert alpha == expected[i][0] and v == expected[i][1]


def test_wide_words_use_the_python_engine():
    # a path of 64 leaves around a star needs 64 coordinates
    g = Graph(65, [(0, i) for i in range(1, 65)])
    alpha, v = proper_embed(g)
    assert alpha.width == 64
    assert v == 0
    assert is_proper(g, alpha)
    with pytest.raises(ValueError):
        proper_embed(g, engine="numpy")


def test_determinism():
    _, g, _ = random_instance(77, 10)
    a = proper_embed_detailed(g)
    b = proper_embed_detailed(g)
    assert a.embedding == b.embedding and a.minimal_vertex == b.minimal_vertex
    assert embed_isometric(g) == embed_isometric(g)


@pytest.mark.parametrize("seed", range(5))
def test_tie_break_seed_gives_an_equivalent_embedding(seed):
    _, g, _ = random_instance(40 + seed, 9)
    base, root = embed_isometric(g)
    for t in range(3):
        other, r2 = embed_isometric(g, tie_break_seed=100 * seed + t)
        assert r2 == root
        assert equivalent(g, base, other)


def test_flipping_at_a_minimal_vertex_permutes_the_label_set():
    for i in range(30):
        _, g, _ = random_instance(i, 8)
        alpha, _ = proper_embed(g)
        labels = alpha.label_set()
        for v in minimal_vertices_brute(g, alpha):
            s = alpha.labels[v]
            assert {b ^ s for b in labels} == labels


def test_connected_check_and_root_range():
    g = Graph(4, [(0, 1), (2, 3)], require_connected=False)
    from daisycube import GraphError

    with pytest.raises(GraphError):
        proper_embed(g)
    with pytest.raises(GraphError):
        embed_isometric(Graph(2, [(0, 1)]), 3)


def test_random_graphs_are_never_accepted_wrongly():
    rng = random.Random(11)
    for k in range(400):
        n = rng.randint(2, 12)
        nxg = nx.gnp_random_graph(n, rng.uniform(0.15, 0.6), seed=k)
        if not nx.is_connected(nxg):
            continue
        g = graph_from_networkx(nxg)
        try:
            alpha, v = proper_embed(g)
        except NotDaisyCubeError:
            continue
        assert is_proper(g, alpha)
        assert alpha.labels[v] == 0
