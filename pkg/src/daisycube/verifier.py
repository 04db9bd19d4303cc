"""Brute-force oracles for embeddings and the structural facts about daisy cubes.

Everything here is deliberately independent of the embedder: distances come
from scipy's shortest-path BFS or a plain per-vertex BFS, intervals from
distance sums, and the baseline tries every candidate root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path

from .daisy import LabeledDaisyCube
from .embedder import embed_isometric
from .embedding import Embedding
from .errors import CapExceededError, NotDaisyCubeError
from .graph import Graph, bfs
from .words import render

DEFAULT_VERIFY_CAP = 4096


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None

    def render(self) -> str:
        if self.passed:
            return f"PASS {self.name}"
        return f"FAIL {self.name} witness={self.witness}"


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, witness: Any = None) -> None:
        """Record ``name``; it fails exactly when a witness is given."""
        self.checks.append(Check(name, witness is None, witness))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        return "\n".join(c.render() for c in self.checks)


def _guard(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceededError(f"{n} vertices exceed the brute-force cap {cap}")


def _fmt(bits: int, h: int) -> str:
    return render(bits, h)


def all_pairs_distances(g: Graph) -> np.ndarray:
    mat = coo_matrix(
        (np.ones(g.m), (g.edges[:, 0], g.edges[:, 1])), shape=(g.n, g.n)
    ).tocsr()
    return shortest_path(mat, method="D", directed=False, unweighted=True)


def is_isometric(g: Graph, e: Embedding, cap: int = DEFAULT_VERIFY_CAP) -> VerificationReport:
    report = VerificationReport()
    if len(e) != g.n:
        report.add("isometric", f"{len(e)} labels for {g.n} vertices")
        return report
    _guard(g.n, cap)
    dist = all_pairs_distances(g)
    if e.width <= 63:
        lab = np.array(e.labels, dtype=np.uint64)
        ham = np.bitwise_count(lab[:, None] ^ lab[None, :]).astype(np.float64)
    else:
        ham = np.array([[(a ^ b).bit_count() for b in e.labels] for a in e.labels], dtype=np.float64)
    bad = np.argwhere(dist != ham)
    witness = None
    if len(bad):
        a, b = (int(x) for x in bad[0])
        witness = f"({a},{b}) d={dist[a, b]:g} hamming={ham[a, b]:g}"
    report.add("isometric", witness)
    return report


def _proper_checks(g: Graph, e: Embedding) -> VerificationReport:
    report = VerificationReport()
    h = e.width
    labels = e.labels
    if len(labels) != g.n:
        report.add("labels-cover-vertices", f"{len(labels)} labels for {g.n} vertices")
        return report
    index = e.index
    witness = None
    if len(index) != len(labels):
        seen: dict[int, int] = {}
        for v, b in enumerate(labels):
            if b in seen:
                witness = f"({seen[b]},{v}) label={_fmt(b, h)}"
                break
            seen[b] = v
    report.add("injective", witness)

    witness = None
    for a, b in g.edges.tolist():
        if (labels[a] ^ labels[b]).bit_count() != 1:
            witness = f"edge ({a},{b}) labels {_fmt(labels[a], h)} {_fmt(labels[b], h)}"
            break
    if witness is None:
        adj = g.adj
        for v, b in enumerate(labels):
            nbrs = set(adj[v])
            for k in range(h):
                w = index.get(b ^ (1 << k))
                if w is not None and w not in nbrs:
                    witness = f"non-edge ({v},{w}) labels {_fmt(b, h)} {_fmt(labels[w], h)}"
                    break
            if witness:
                break
    report.add("adjacency-iff-hamming-1", witness)

    witness = None
    for v, b in enumerate(labels):
        rest = b
        while rest:
            low = rest & -rest
            if b ^ low not in index:
                witness = f"vertex {v} label {_fmt(b, h)} missing {_fmt(b ^ low, h)}"
                break
            rest ^= low
        if witness:
            break
    report.add("downward-closed", witness)
    return report


def is_proper(g: Graph, e: Embedding) -> VerificationReport:
    return _proper_checks(g, e)


def maximal_labels(e: Embedding) -> list[int]:
    """Labels with no labelled word one bit above them."""
    index = e.index
    full = (1 << e.width) - 1
    out = []
    for b in e.labels:
        free = full & ~b
        while free:
            low = free & -free
            if b | low in index:
                break
            free ^= low
        else:
            out.append(b)
    return out


def minimal_vertices(e: Embedding, g: Graph | None = None) -> set[int]:
    """Vertices whose label lies below the meet of all maximal labels."""
    if g is not None:
        ok = bool(is_proper(g, e))
    else:
        ok = len(e.index) == len(e) and downward_closed(e)
    if not ok:
        raise ValueError("minimal_vertices needs a proper embedding")
    meet = (1 << e.width) - 1
    for b in maximal_labels(e):
        meet &= b
    return {v for v, b in enumerate(e.labels) if b & ~meet == 0}


def minimal_vertices_brute(g: Graph, e: Embedding, cap: int = DEFAULT_VERIFY_CAP) -> set[int]:
    """Intersection over maximal vertices x of the graph interval I(root, x).

    The interval is taken in ``g`` from BFS distances, not from labels.
    """
    _guard(g.n, cap)
    root = e.index.get(0)
    if root is None:
        raise ValueError("minimal_vertices_brute needs a proper embedding (no vertex labelled 0^h)")
    index = e.index
    tops = [index[b] for b in maximal_labels(e)]
    from_root = bfs(g, root).dist
    common = set(range(g.n))
    for x in tops:
        from_x = bfs(g, x).dist
        target = from_root[x]
        common &= {w for w in range(g.n) if from_root[w] + from_x[w] == target}
    return common


@dataclass
class Equivalence:
    equivalent: bool
    permutation: tuple[int, ...] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.equivalent


def _flip_classes(g: Graph, e: Embedding) -> list[frozenset[int]]:
    h = e.width
    labels = e.labels
    classes: list[set[int]] = [set() for _ in range(h)]
    for k, (a, b) in enumerate(g.edges.tolist()):
        diff = labels[a] ^ labels[b]
        for i in range(h):
            if diff >> (h - 1 - i) & 1:
                classes[i].add(k)
    return [frozenset(c) for c in classes]


def _match_coordinates(g: Graph, e1: Embedding, e2: Embedding) -> tuple[list[int] | None, str]:
    if e1.width != e2.width or len(e1) != len(e2):
        return None, "width or size differ"
    c1 = _flip_classes(g, e1)
    c2 = _flip_classes(g, e2)
    where: dict[frozenset[int], int] = {}
    for j, c in enumerate(c2):
        if c in where:
            return None, "degenerate"
        where[c] = j
    if len(set(c1)) != e1.width:
        return None, "degenerate"
    perm = []
    for c in c1:
        j = where.get(c)
        if j is None:
            return None, "flip-edge sets differ"
        perm.append(j)
    return perm, ""


def _permute(bits: int, perm: list[int], h: int) -> int:
    moved = 0
    for i, j in enumerate(perm):
        if bits >> (h - 1 - i) & 1:
            moved |= 1 << (h - 1 - j)
    return moved


def equivalent(g: Graph, e1: Embedding, e2: Embedding) -> Equivalence:
    """Whether ``e2`` is ``e1`` with its coordinates permuted.

    On success ``permutation[i]`` is the (0-based) coordinate of ``e2`` that
    carries coordinate ``i`` of ``e1``.
    """
    perm, reason = _match_coordinates(g, e1, e2)
    if perm is None:
        return Equivalence(False, reason=reason)
    h = e1.width
    for a, b in zip(e1.labels, e2.labels):
        if _permute(a, perm, h) != b:
            return Equivalence(False, reason="labels differ after matching coordinates")
    return Equivalence(True, tuple(perm))


def same_label_set(g: Graph, e1: Embedding, e2: Embedding) -> bool:
    """Whether the two label sets coincide once coordinates are matched by flip-edge sets.

    This is an observed regularity of proper embeddings, not a theorem; callers
    treat a ``False`` as a soft finding.
    """
    perm, _ = _match_coordinates(g, e1, e2)
    if perm is None:
        return False
    h = e1.width
    return {_permute(a, perm, h) for a in e1.labels} == e2.label_set()


def downward_closed(e: Embedding) -> bool:
    """Every label's one-bit-lower words are labels too (hash index, O(n h))."""
    index = e.index
    for b in e.labels:
        rest = b
        while rest:
            low = rest & -rest
            if b ^ low not in index:
                return False
            rest ^= low
    return True


def baseline_proper(g: Graph) -> Embedding:
    """Try every vertex of maximum degree as root until the labels are downward closed."""
    h = int(g.degrees.max()) if g.m else 0
    for u in np.flatnonzero(g.degrees == h).tolist():
        try:
            beta, _ = embed_isometric(g, u)
        except NotDaisyCubeError:
            continue
        if downward_closed(beta):
            return beta
    raise NotDaisyCubeError("not a daisy cube: no candidate root gives a downward-closed labelling")


def structural_audit(dc: LabeledDaisyCube, cap: int = DEFAULT_VERIFY_CAP) -> VerificationReport:
    g = dc.graph
    e = dc.labels
    _guard(g.n, cap)
    h = e.width
    labels = e.labels
    tops = dc.generators.antichain_bits
    adj = g.adj
    report = VerificationReport()

    # the instance itself: labels are exactly the downward closure, edges at Hamming distance 1
    definition = _proper_checks(g, e)
    witness = "; ".join(c.render() for c in definition.failures()) or None
    if witness is None:
        expected = {b for b in range(1 << h) if any(b & ~t == 0 for t in tops)} if h <= 16 else None
        if expected is not None and expected != set(labels):
            witness = f"label set differs from the closure of {[_fmt(t, h) for t in tops]}"
    report.add("daisy-definition", witness)

    weights = [b.bit_count() for b in labels]
    witness = None
    for v, b in enumerate(labels):
        down = sum(1 for z in adj[v] if weights[z] == weights[v] - 1)
        if down > weights[v]:
            witness = f"vertex {v} label {_fmt(b, h)} has {down} neighbours one weight lower"
            break
    report.add("kocka", witness)

    witness = None
    for a, b in g.edges.tolist():
        la, lb = labels[a], labels[b]
        for x, y in combinations(tops, 2):
            for p, q in ((la, lb), (lb, la)):
                in_x, in_y = p & ~x == 0, q & ~y == 0
                p_both = in_x and p & ~y == 0
                q_both = in_y and q & ~x == 0
                if in_x and in_y and not p_both and not q_both:
                    witness = f"edge ({a},{b}) joins I(0,{_fmt(x, h)}) and I(0,{_fmt(y, h)}) outside their intersection"
                    break
            if witness:
                break
        if witness:
            break
    report.add("edge", witness)

    full = (1 << h) - 1
    w_neighbor = w_degree = w_main = None
    for u in np.flatnonzero(g.degrees == h).tolist():
        lu = labels[u]
        above = [x for x in tops if lu & ~x == 0]
        if w_neighbor is None:
            for z in adj[u]:
                if not any(labels[z] & ~x == 0 for x in above):
                    w_neighbor = f"u={_fmt(lu, h)} neighbour {_fmt(labels[z], h)} outside G^u"
                    break
        if w_degree is None:
            union = 0
            for x in above:
                union |= x
            if union != full:
                w_degree = f"u={_fmt(lu, h)} X'={[_fmt(x, h) for x in above]} covers {union.bit_count()} < {h} coordinates"
        if w_main is None:
            dist = bfs(g, u).dist
            for v in range(g.n):
                if dist[v] >= 2:
                    down = sum(1 for z in adj[v] if dist[z] == dist[v] - 1)
                    if down < 2:
                        w_main = f"u={_fmt(lu, h)} vertex {_fmt(labels[v], h)} has {down} down-neighbour(s)"
                        break
    report.add("neighbor", w_neighbor)
    report.add("degree", w_degree)
    report.add("main", w_main)
    return report


def x_prime(dc: LabeledDaisyCube, u: int) -> list[str]:
    """Generators of the antichain lying above the label of ``u``."""
    h = dc.width
    lu = dc.labels.labels[u]
    return [_fmt(x, h) for x in dc.generators.antichain_bits if lu & ~x == 0]
