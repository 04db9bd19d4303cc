"""Linear-time isometric and proper embeddings of unlabelled daisy cubes.

``embed_isometric`` runs one BFS from a vertex of maximum degree ``h``: the
root gets 0^h, its neighbours get the unit words in adjacency order, and
every deeper vertex (which must have at least two down-neighbours) gets the
OR of the labels of all its down-neighbours.

``proper_embed`` then sweeps the weight levels of that labelling, marks the
vertices whose interval to the root is a maximal cube together with the
vertices that have no neighbour further from the root, and takes the meet
``s`` of all marked labels; ``s ^ label`` is meant to be a proper embedding.

The meet misses generators whose whole region is shadowed by other regions
(no vertex of it is a dead end), which first happens at h = 5, e.g. for the
antichain {01011, 10111, 11101, 11110} rooted at 00101. ``proper_embed``
therefore finishes with a linear pass over the edges: in a proper embedding
every vertex with a 1 in coordinate i has a neighbour differing exactly in
coordinate i, and any coordinate where that fails gets flipped.

Every pass works one BFS or weight level at a time. Up to 62 coordinates the
labels live in an int64 array and each level is a handful of vectorised
gathers; wider words fall back to the same passes over Python ints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .embedding import Embedding
from .errors import GraphError, NotDaisyCubeError
from .graph import Graph, max_degree_vertex
from .words import Word, render

# widest word the int64 kernels handle
ARRAY_MAX_WIDTH = 62


def _label_dtype(h: int) -> type:
    return np.int32 if h <= 30 else np.int64


@dataclass
class MarkState:
    """Weight levels W_0..W_{h+1} and the marks q of the proper-embedding sweep."""

    levels: list[Sequence[int]]
    q: Sequence[int]

    def marked(self) -> list[int]:
        return [v for v, mark in enumerate(self.q) if mark]


@dataclass
class ProperResult:
    embedding: Embedding
    minimal_vertex: int
    shift: Word
    isometric: Embedding
    marks: MarkState
    # meet of the marked labels; differs from ``shift`` when a flip was needed
    marked_shift: Word

    @property
    def repaired(self) -> bool:
        return self.shift != self.marked_shift


def _use_arrays(h: int, engine: str) -> bool:
    if engine == "auto":
        return h <= ARRAY_MAX_WIDTH
    if engine == "numpy":
        if h > ARRAY_MAX_WIDTH:
            raise ValueError(f"numpy engine handles at most {ARRAY_MAX_WIDTH} coordinates, got {h}")
        return True
    if engine == "python":
        return False
    raise ValueError(f"unknown engine {engine!r}")


# adjacency entries handled per vectorised step; keeps temporaries cache-sized
_BLOCK = 1 << 15


def _blocks(vs: np.ndarray, max_degree: int):
    step = max(1, _BLOCK // max(max_degree, 1))
    for i in range(0, len(vs), step):
        yield vs[i:i + step]


def _expand(indptr: np.ndarray, indices: np.ndarray, vs: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All (position-in-``vs``, neighbour) pairs for the vertices ``vs``, plus segment starts."""
    starts = indptr[vs]
    lens = indptr[vs + 1] - starts
    offsets = np.cumsum(lens) - lens
    seg = np.repeat(np.arange(len(vs), dtype=np.int32), lens)
    pos = np.arange(int(lens.sum())) + np.repeat(starts - offsets, lens)
    return seg, indices[pos], offsets


# per-vertex code in the sweep: -1 unseen, else BFS level plus _MARKED if marked
_MARKED = 64
_LEVEL = _MARKED - 1


def _sweep_array(
    g: Graph, root: int, h: int, rng: random.Random | None, strict: bool, mark: bool
) -> tuple[np.ndarray, MarkState | None]:
    """Isometric labels, and (if ``mark``) the marks of the weight-level sweep.

    Labels have weight equal to their BFS level (checked as we go), so weight
    level ``d`` is BFS level ``d`` and one read of each level's adjacency
    serves three purposes: it ORs the down-neighbour labels, discovers the
    next level, and decides the marks of the level. Level and mark share one
    byte per vertex so that each neighbour costs two random reads.
    """
    indptr, indices = g.csr
    n = g.n
    dtype = _label_dtype(h)
    label = np.zeros(n, dtype=dtype)
    code = np.full(n, -1, dtype=np.int8)
    code[root] = 0

    level = indices[indptr[root]:indptr[root + 1]].copy()
    if rng is not None:
        rng.shuffle(level)
    label[level] = np.left_shift(1, h - 1 - np.arange(len(level), dtype=dtype))
    code[level] = 1
    levels = [np.array([root], dtype=indices.dtype)]

    d = 1
    while len(level):
        levels.append(level)
        found = []
        covered = []
        target = d * (d - 1)
        for xs in _blocks(level, h):
            seg, nb, starts = _expand(indptr, indices, xs)
            c = code[nb]
            lvl = c & _LEVEL  # unseen (-1) reads as 63, never a real level
            same = np.flatnonzero(lvl == d)
            if len(same):
                k = int(same[0])
                raise NotDaisyCubeError(f"not bipartite: edge ({int(xs[seg[k]])},{int(nb[k])}) inside BFS level {d}")
            down = lvl == d - 1
            n_down = np.add.reduceat(down, starts, dtype=np.int16)
            if d > 1:
                lv = np.where(down, label[nb], 0)
                lx = np.bitwise_or.reduceat(lv, starts)
                lonely = np.flatnonzero(n_down < 2)
                if len(lonely):
                    v = int(xs[lonely[0]])
                    raise NotDaisyCubeError(
                        f"not a daisy cube rooted at {root}: vertex {v} at distance {d} has one down-neighbour"
                    )
                bad = np.flatnonzero(np.bitwise_count(lx) != d)
                if len(bad):
                    v = int(xs[bad[0]])
                    raise NotDaisyCubeError(
                        f"not a daisy cube rooted at {root}: vertex {v} at distance {d} got label {render(int(lx[bad[0]]), h)}"
                    )
                if strict:
                    lzd = lx[seg[down]]
                    lvd = lv[down]
                    if np.any((lzd & lvd) != lvd) or np.any(np.bitwise_count(lzd ^ lvd) != 1):
                        raise NotDaisyCubeError(f"not a daisy cube rooted at {root}: down-neighbours disagree at level {d}")
                label[xs] = lx
            z = nb[c < 0]
            # unseen vertices have no label yet, so their slot can hold a dedupe ticket
            ticket = np.arange(len(z), dtype=dtype)
            label[z] = ticket
            z = z[label[z] == ticket]
            code[z] = d + 1
            found.append(z)
            if mark:
                # only down-neighbours can be marked yet; each mark there is worth d-1
                # (on level 1 the only down-neighbour is the root, whose mark 0 = d-1 counts)
                if d == 1:
                    n_marked = n_down
                else:
                    n_marked = np.add.reduceat(down & (c >= _MARKED), starts, dtype=np.int16)
                cube = (d - 1) * n_marked == target
                has_up = np.logical_or.reduceat(~down, starts)
                if strict and np.any(((n_down == d) & (n_marked == d)) != cube):
                    raise AssertionError(f"mark sum disagrees with cube structure on weight level {d}")
                picked = xs[cube | ~has_up]
                code[picked] |= _MARKED
                covered.append(nb[cube[seg]])
        for nbs in covered:
            code[nbs] &= _LEVEL
        level = np.concatenate(found)
        d += 1

    if np.any(code < 0):
        raise GraphError(f"graph is not connected: vertex {int(np.argmin(code))} unreachable")
    if len(np.unique(label)) != n:
        raise NotDaisyCubeError(f"not a daisy cube rooted at {root}: two vertices got the same label")
    if not mark:
        return label, None
    q = np.where(code >= _MARKED, code & _LEVEL, 0).astype(np.int16)
    empty = levels[0][:0]
    levels.extend(empty for _ in range(h + 2 - len(levels)))
    return label, MarkState(levels, q)


def _mark_array(g: Graph, labels: np.ndarray, h: int, strict: bool) -> MarkState:
    indptr, indices = g.csr
    wt = np.bitwise_count(labels).astype(np.int16)
    by_weight = np.argsort(wt, kind="stable")
    bounds = np.searchsorted(wt[by_weight], np.arange(h + 3))
    levels = [by_weight[bounds[i]:bounds[i + 1]] for i in range(h + 2)]
    q = np.zeros(g.n, dtype=np.int16)

    for i in range(1, h + 1):
        covered = []
        for xs in _blocks(levels[i], h):
            k = len(xs)
            seg, nb, starts = _expand(indptr, indices, xs)
            qnb = q[nb]
            # level i+1 is still unmarked, so this sums the marks of the down-neighbours
            total = np.add.reduceat(qnb, starts)
            wnb = wt[nb]
            has_up = np.logical_or.reduceat(wnb > i, starts)
            cube = total == i * (i - 1)
            if strict:
                down = wnb == i - 1
                if np.any(~down & (wnb != i + 1)):
                    raise NotDaisyCubeError(f"a vertex of weight {i} has a neighbour off the adjacent levels")
                n_down = np.bincount(seg, weights=down, minlength=k)
                n_marked = np.bincount(seg, weights=down & (qnb == i - 1), minlength=k)
                structural = (n_down == i) & (n_marked == i)
                if np.any(structural != cube):
                    raise AssertionError(f"mark sum disagrees with cube structure on weight level {i}")
            q[xs[cube | ~has_up]] = i
            covered.append(nb[cube[seg]])
        for nbs in covered:
            q[nbs] = 0
    return MarkState(levels, q)


def _unmatched_array(g: Graph, labels: np.ndarray, h: int, strict: bool) -> tuple[int, int]:
    indptr, indices = g.csr
    n = g.n
    crossed = np.zeros(n, dtype=labels.dtype)
    step = max(1, _BLOCK // max(h, 1))
    for a in range(0, n if g.m else 0, step):
        b = min(n, a + step)
        lo, hi = int(indptr[a]), int(indptr[b])
        diff = np.repeat(labels[a:b], np.diff(indptr[a:b + 1])) ^ labels[indices[lo:hi]]
        if strict:
            bad = np.flatnonzero(np.bitwise_count(diff) != 1)
            if len(bad):
                k = lo + int(bad[0])
                u = int(np.searchsorted(indptr, k, side="right")) - 1
                raise NotDaisyCubeError(f"edge ({u},{int(indices[k])}) is not a hypercube edge")
        crossed[a:b] = np.bitwise_or.reduceat(diff, indptr[a:b] - lo)
    full = (1 << h) - 1
    free = ~crossed & full
    ones = int(np.bitwise_or.reduce(labels & free))
    zeros = int(np.bitwise_or.reduce(~labels & free))
    return ones, zeros


def embed_isometric(
    g: Graph,
    root: int | None = None,
    *,
    tie_break_seed: int | None = None,
    strict: bool = False,
    engine: str = "auto",
) -> tuple[Embedding, int]:
    """Isometric embedding rooted at ``root`` (default: first vertex of maximum degree).

    ``tie_break_seed`` shuffles the order in which the root's neighbours and
    each BFS level are processed; the result then differs only by a
    permutation of coordinates. ``strict`` checks that every pair of
    down-neighbours agrees on the label they induce. ``engine`` is ``auto``,
    ``numpy`` or ``python``.
    """
    labels, _, root, h = _isometric(g, root, tie_break_seed, strict, engine)
    if isinstance(labels, np.ndarray):
        labels = labels.tolist()
    return Embedding(h, labels, root=root), root


def _isometric(
    g: Graph, root: int | None, tie_break_seed: int | None, strict: bool, engine: str, mark: bool = False
) -> tuple[np.ndarray | list[int], MarkState | None, int, int]:
    first_max, h = max_degree_vertex(g)
    if root is None:
        root = first_max
    if not 0 <= root < g.n:
        raise GraphError(f"root {root} out of range")
    h = max(h, 1)
    rng = random.Random(tie_break_seed) if tie_break_seed is not None else None
    if _use_arrays(h, engine):
        labels, marks = _sweep_array(g, root, h, rng, strict, mark)
        return labels, marks, root, h
    labels = _isometric_python(g, root, h, rng, strict)
    marks = _mark_python(g, labels, h, strict) if mark else None
    return labels, marks, root, h


def mark_extremal(g: Graph, beta: Embedding, u: int, *, strict: bool = False, engine: str = "auto") -> MarkState:
    """Mark the maximal-cube vertices and the dead ends of ``beta`` (rooted at ``u``).

    Level ``i`` reads only the marks of level ``i-1`` as they stood when level
    ``i-1`` was finished; unmarking of covered vertices happens after the whole
    level has been decided.
    """
    if beta.labels[u] != 0:
        raise ValueError(f"root {u} is not labelled 0^h")
    if _use_arrays(beta.width, engine):
        return _mark_array(g, np.asarray(beta.labels, dtype=_label_dtype(beta.width)), beta.width, strict)
    return _mark_python(g, list(beta.labels), beta.width, strict)


def _meet_of_marked(labels: Sequence[int] | np.ndarray, q: Sequence[int] | np.ndarray, h: int) -> int:
    full = (1 << h) - 1
    if isinstance(labels, np.ndarray):
        picked = labels[np.asarray(q) > 0]
        # single-vertex graph: nothing gets marked and the root is minimal
        return int(np.bitwise_and.reduce(picked, initial=full)) if len(picked) else 0
    s = full
    marked = False
    for v, mark in enumerate(q):
        if mark:
            s &= labels[v]
            marked = True
    return s if marked else 0


def minimal_shift(beta: Embedding, marks: MarkState) -> Word:
    """Meet of the labels of all marked vertices, starting from 1^h."""
    return Word(beta.width, _meet_of_marked(beta.labels, marks.q, beta.width))


def unmatched_coordinates(
    g: Graph, labels: Sequence[int] | np.ndarray, h: int, *, strict: bool = False
) -> tuple[int, int]:
    """Coordinates with a vertex lacking a neighbour across that coordinate.

    Returns two masks: coordinates where such a vertex has bit 1, and where
    it has bit 0. ``labels`` must be an isometric labelling.
    """
    if isinstance(labels, np.ndarray):
        return _unmatched_array(g, labels, h, strict)
    return _unmatched_python(g, list(labels), h, strict)


def _isometric_python(g: Graph, root: int, h: int, rng: random.Random | None, strict: bool) -> list[int]:
    adj = g.adj
    n = g.n
    # state[z]: -1 unseen; ~k seen from one down-neighbour at level k-1; k labelled at level k
    label = [0] * n
    state = [-1] * n
    state[root] = 0

    frontier = list(adj[root])
    if rng is not None:
        rng.shuffle(frontier)
    for i, v in enumerate(frontier):
        label[v] = 1 << (h - 1 - i)
        state[v] = 1

    d = 1
    while frontier:
        if rng is not None:
            rng.shuffle(frontier)
        for v in frontier:
            if state[v] != d:
                raise NotDaisyCubeError(
                    f"not a daisy cube rooted at {root}: vertex {v} at distance {d} has one down-neighbour"
                )
            if label[v].bit_count() != d:
                raise NotDaisyCubeError(
                    f"not a daisy cube rooted at {root}: vertex {v} at distance {d} got label {render(label[v], h)}"
                )
        d1 = d + 1
        pending = ~d1
        nxt = []
        for v in frontier:
            lv = label[v]
            for z in adj[v]:
                sz = state[z]
                if sz == -1:
                    state[z] = pending
                    label[z] = lv
                    nxt.append(z)
                elif sz == pending:
                    # second down-neighbour: the two labels differ in one bit each from z's
                    label[z] |= lv
                    state[z] = d1
                elif sz == d:
                    raise NotDaisyCubeError(f"not bipartite: edge ({v},{z}) inside BFS level {d}")
                elif sz == d1:
                    lz = label[z]
                    if strict and (lz & lv != lv or (lz ^ lv).bit_count() != 1):
                        raise NotDaisyCubeError(
                            f"not a daisy cube rooted at {root}: down-neighbours of {z} disagree"
                        )
                    # a disagreeing third down-neighbour shows up in the weight check
                    label[z] = lz | lv
        frontier = nxt
        d = d1

    if -1 in state:
        raise GraphError(f"graph is not connected: vertex {state.index(-1)} unreachable")
    if len(set(label)) != n:
        raise NotDaisyCubeError(f"not a daisy cube rooted at {root}: two vertices got the same label")
    return label


def _mark_python(g: Graph, labels: list[int], h: int, strict: bool) -> MarkState:
    adj = g.adj
    wt = [b.bit_count() for b in labels]
    levels: list[list[int]] = [[] for _ in range(h + 2)]
    for v, w in enumerate(wt):
        levels[w].append(v)
    q = [0] * g.n
    get = q.__getitem__

    for i in range(1, h + 1):
        target = i * (i - 1)
        cubes = []
        for x in levels[i]:
            # neighbours sit on levels i-1 and i+1, and level i+1 is still unmarked,
            # so this is the sum over the down-neighbours
            total = sum(map(get, adj[x]))
            if strict:
                down = [y for y in adj[x] if wt[y] == i - 1]
                if len(down) + sum(1 for y in adj[x] if wt[y] == i + 1) != len(adj[x]):
                    raise NotDaisyCubeError(f"vertex {x} has a neighbour off the adjacent levels")
                structural = len(down) == i and all(q[y] == i - 1 for y in down)
                if structural != (total == target):
                    raise AssertionError(f"mark sum at vertex {x} disagrees with cube structure")
            if total == target:
                q[x] = i
                cubes.append(x)
            elif not any(wt[y] > i for y in adj[x]):
                q[x] = i
        for x in cubes:
            for y in adj[x]:
                q[y] = 0
    return MarkState(levels, q)


def _unmatched_python(g: Graph, labels: list[int], h: int, strict: bool) -> tuple[int, int]:
    adj = g.adj
    full = (1 << h) - 1
    degrees = g.degrees.tolist()
    ones = zeros = 0
    for w, b in enumerate(labels):
        if degrees[w] == h and not strict:
            continue
        crossed = 0
        for z in adj[w]:
            diff = b ^ labels[z]
            if strict and diff.bit_count() != 1:
                raise NotDaisyCubeError(f"edge ({w},{z}) is not a hypercube edge")
            crossed |= diff
        free = full & ~crossed
        ones |= b & free
        zeros |= ~b & free
    return ones, zeros & full




def proper_embed_detailed(
    g: Graph,
    *,
    root: int | None = None,
    strict: bool = False,
    repair: bool = True,
    engine: str = "auto",
) -> ProperResult:
    labels, marks, u, h = _isometric(g, root, None, strict, engine, mark=True)
    arrays = isinstance(labels, np.ndarray)
    s = marked = _meet_of_marked(labels, marks.q, h)
    if repair:
        shifted = labels ^ s if arrays else [b ^ s for b in labels]
        ones, zeros = unmatched_coordinates(g, shifted, h, strict=strict)
        if ones & zeros:
            raise NotDaisyCubeError(
                f"not a daisy cube: coordinate mask {render(ones & zeros, h)} is unmatched on both sides"
            )
        s ^= ones
    if arrays:
        hits = np.flatnonzero(labels == s)
        v = int(hits[0]) if len(hits) else -1
        beta_list = labels.tolist()
        alpha_list = (labels ^ s).tolist()
    else:
        v = labels.index(s) if s in labels else -1
        beta_list = labels
        alpha_list = [b ^ s for b in labels]
    if v < 0:
        raise NotDaisyCubeError(f"not a daisy cube: shift {render(s, h)} is no vertex label")
    beta = Embedding(h, beta_list, root=u)
    alpha = Embedding(h, alpha_list, root=v)
    return ProperResult(alpha, v, Word(h, s), beta, marks, Word(h, marked))


def proper_embed(g: Graph, *, strict: bool = False, engine: str = "auto") -> tuple[Embedding, int]:
    """Proper embedding of a daisy cube and the minimal vertex it maps to 0^h."""
    res = proper_embed_detailed(g, strict=strict, engine=engine)
    return res.embedding, res.minimal_vertex
