import pytest
from hypothesis import given
from hypothesis import strategies as st

from daisycube import CapExceededError, GeneratorSet, antichain_of, build, downward_closure, family, interval, strip
from daisycube.words import Word

from _support import all_antichains, brute_closure, gens


def words(*texts):
    return {Word.parse(t) for t in texts}


def texts(ws):
    return sorted(str(w) for w in ws)


def test_antichain_examples():
    assert antichain_of(words("110", "100", "011")) == words("110", "011")
    assert antichain_of(words("1111")) == words("1111")
    assert antichain_of(words("10011", "01011", "00111")) == words("10011", "01011", "00111")


def test_antichain_rejects_empty_and_mixed_widths():
    with pytest.raises(ValueError):
        antichain_of([])
    with pytest.raises(ValueError):
        antichain_of(words("10", "101"))


def test_downward_closure_examples():
    assert texts(downward_closure(words("110", "011"))) == ["000", "001", "010", "011", "100", "110"]
    assert len(downward_closure(words("11111"))) == 32
    assert texts(downward_closure(words("0000"))) == ["0000"]


@st.composite
def generator_sets(draw, max_width=9):
    h = draw(st.integers(1, max_width))
    raw = draw(st.lists(st.integers(0, (1 << h) - 1), min_size=1, max_size=6))
    return GeneratorSet(h, frozenset(Word(h, b) for b in raw))


@given(generator_sets())
def test_closure_matches_full_scan(gs):
    closure = {w.bits for w in downward_closure(gs.antichain)}
    assert closure == brute_closure(gs.antichain_bits, gs.width)


@given(generator_sets())
def test_generators_and_their_antichain_build_the_same_cube(gs):
    a = build(gs)
    b = build(GeneratorSet(gs.width, gs.antichain))
    assert a.labels == b.labels
    assert a.graph.edge_set() == b.graph.edge_set()


@given(generator_sets())
def test_antichain_invariants(gs):
    anti = gs.antichain_bits
    for x in anti:
        for y in anti:
            assert x == y or (x & ~y and y & ~x)
    for w in gs.words:
        assert any(w.bits & ~x == 0 for x in anti)


@given(generator_sets(max_width=8))
def test_built_cube_edges_are_exactly_hamming_one(gs):
    dc = build(gs)
    labels = dc.labels.labels
    expected = {
        (a, b)
        for a in range(len(labels))
        for b in range(a + 1, len(labels))
        if (labels[a] ^ labels[b]).bit_count() == 1
    }
    assert dc.graph.edge_set() == expected
    assert list(labels) == sorted(labels)
    assert dc.labels.root == 0


def test_three_generator_cube_has_sixteen_vertices():
    dc = build(gens("10011", "01011", "00111"))
    # 3*8 - 3*4 + 4 by inclusion-exclusion over the three intervals
    assert dc.graph.n == len(brute_closure(dc.generators.antichain_bits, 5)) == 16


@pytest.mark.parametrize("h", range(1, 9))
def test_hypercube_sizes(h):
    dc = build(family("hypercube", h))
    assert dc.graph.n == 2**h
    assert dc.graph.m == h * 2 ** (h - 1)


def test_qminus_4():
    gs = family("qminus", 4)
    assert texts(gs.antichain) == ["0111", "1011", "1101", "1110"]
    assert build(gs).graph.n == 15


def test_fibonacci_and_lucas():
    fib = family("fibonacci", 4)
    assert texts(fib.antichain) == ["0101", "1001", "1010"]
    assert build(fib).graph.n == 8
    fib_sizes = [build(family("fibonacci", h)).graph.n for h in range(1, 9)]
    assert fib_sizes == [2, 3, 5, 8, 13, 21, 34, 55]
    lucas_sizes = [build(family("lucas", h)).graph.n for h in range(2, 9)]
    assert lucas_sizes == [3, 4, 7, 11, 18, 29, 47]


def test_families_by_brute_force():
    for h in range(1, 8):
        fib = [b for b in range(1 << h) if not b & (b >> 1)]
        assert {w.bits for w in downward_closure(family("fibonacci", h).antichain)} == set(fib)
        if h >= 3:
            rot = lambda b: ((b >> 1) | ((b & 1) << (h - 1)))
            luc = [b for b in fib if not b & rot(b)]
            assert {w.bits for w in downward_closure(family("lucas", h).antichain)} == set(luc)


def test_family_errors():
    with pytest.raises(ValueError):
        family("petersen", 3)
    with pytest.raises(ValueError):
        family("random-antichain", 5)
    with pytest.raises(ValueError):
        family("hypercube", 0)


def test_random_antichain_is_deterministic_per_seed():
    assert family("random-antichain", 9, 4) == family("random-antichain", 9, 4)
    seen = {family("random-antichain", 9, s).antichain for s in range(10)}
    assert len(seen) > 1


def test_cap_exceeded():
    with pytest.raises(CapExceededError):
        build(family("hypercube", 10), cap=1000)


def test_interval_examples():
    assert texts(interval(Word.parse("00000"), Word.parse("00011"))) == ["00000", "00001", "00010", "00011"]
    u = Word.parse("0110")
    assert interval(u, u) == {u}
    assert texts(interval(Word.parse("000"), Word.parse("101"))) == ["000", "001", "100", "101"]


@pytest.mark.parametrize("h", [3, 4])
def test_interval_is_shortest_path_union(h):
    ws = [Word(h, b) for b in range(1 << h)]
    d = lambda a, b: (a.bits ^ b.bits).bit_count()
    for u in ws:
        for v in ws:
            assert interval(u, v) == {w for w in ws if d(u, w) + d(w, v) == d(u, v)}


def test_union_of_intervals_is_the_closure():
    for h in range(1, 4):
        for anti in all_antichains(h):
            union = set()
            for x in anti:
                union |= {w.bits for w in interval(Word(h, 0), Word(h, x))}
            assert union == {w.bits for w in downward_closure({Word(h, x) for x in anti})}


def test_strip_identity_seed():
    dc = build(family("fibonacci", 5))
    g, truth = strip(dc, 0)
    assert g.edges.tolist() == dc.graph.edges.tolist()
    assert truth == dc.labels


@pytest.mark.parametrize("seed", [1, 2, 17])
def test_strip_is_an_isomorphism_with_hidden_labels(seed):
    dc = build(family("random-antichain", 7, seed))
    g, truth = strip(dc, seed)
    assert g.n == dc.graph.n and g.m == dc.graph.m
    orig = {frozenset((dc.labels.labels[a], dc.labels.labels[b])) for a, b in dc.graph.edges.tolist()}
    new = {frozenset((truth.labels[a], truth.labels[b])) for a, b in g.edges.tolist()}
    assert orig == new
    assert sorted(truth.labels) == sorted(dc.labels.labels)
    assert strip(dc, seed)[0].edges.tolist() == g.edges.tolist()


def test_compressed_drops_unused_coordinates():
    gs = gens("01001", "01100")
    c = gs.compressed()
    assert c.width == 3
    assert texts(c.antichain) == ["101", "110"]
    assert build(c).graph.n * 1 == build(gs).graph.n


def test_meet_all_of_generators():
    assert str(family("qminus", 4).meet_all) == "0000"
    assert str(gens("10011", "01011", "00111").meet_all) == "00011"
