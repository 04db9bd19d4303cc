"""Labelled daisy cubes: generator sets, downward closures, named families."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .embedding import Embedding
from .errors import CapExceededError
from .graph import Graph
from .words import Word, WidthMismatchError, meet_all

DEFAULT_CAP = 1 << 22
FAMILIES = ("hypercube", "qminus", "fibonacci", "lucas", "random-antichain")

# numpy uint64 fast path; wider words fall back to Python ints
_NUMPY_MAX_WIDTH = 62


def _common_width(words: Iterable[Word]) -> tuple[int, list[Word]]:
    ws = list(words)
    if not ws:
        raise ValueError("empty word set")
    h = ws[0].width
    for w in ws:
        if w.width != h:
            raise WidthMismatchError(f"width {w.width} vs {h}")
    return h, ws


def _maximal_bits(bits: Iterable[int]) -> list[int]:
    """Maximal elements of a set of ints under bitwise inclusion."""
    kept: list[int] = []
    for b in sorted(set(bits), key=lambda b: (-b.bit_count(), b)):
        if all(b & ~k for k in kept):
            kept.append(b)
    return sorted(kept)


def antichain_of(words: Iterable[Word]) -> frozenset[Word]:
    h, ws = _common_width(words)
    return frozenset(Word(h, b) for b in _maximal_bits(w.bits for w in ws))


@dataclass(frozen=True)
class GeneratorSet:
    width: int
    words: frozenset[Word]

    def __post_init__(self) -> None:
        if not self.words:
            raise ValueError("a generator set needs at least one word")
        for w in self.words:
            if w.width != self.width:
                raise WidthMismatchError(f"width {w.width} vs {self.width}")

    @classmethod
    def of(cls, words: Iterable[Word | str]) -> GeneratorSet:
        h, ws = _common_width(w if isinstance(w, Word) else Word.parse(w) for w in words)
        return cls(h, frozenset(ws))

    @cached_property
    def antichain(self) -> frozenset[Word]:
        return antichain_of(self.words)

    @cached_property
    def antichain_bits(self) -> list[int]:
        return sorted(w.bits for w in self.antichain)

    @cached_property
    def meet_all(self) -> Word:
        return meet_all(self.antichain, self.width)

    def __repr__(self) -> str:
        return f"GeneratorSet({sorted(str(w) for w in self.antichain)})"

    def compressed(self) -> GeneratorSet:
        """Drop coordinates that are 0 in every generator.

        The result generates an isomorphic daisy cube whose order equals its
        isometric dimension.
        """
        used = 0
        for b in self.antichain_bits:
            used |= b
        if used == 0:
            return GeneratorSet(1, frozenset({Word(1, 0)}))
        keep = [k for k in range(self.width - 1, -1, -1) if used >> k & 1]
        h = len(keep)
        words = set()
        for b in self.antichain_bits:
            packed = 0
            for k in keep:
                packed = packed << 1 | (b >> k & 1)
            words.add(Word(h, packed))
        return GeneratorSet(h, frozenset(words))


@dataclass(frozen=True)
class LabeledDaisyCube:
    graph: Graph
    labels: Embedding
    generators: GeneratorSet

    @property
    def width(self) -> int:
        return self.labels.width


def _closure_numpy(h: int, tops: list[int], cap: int) -> np.ndarray:
    by_weight: dict[int, list[int]] = {}
    for b in tops:
        by_weight.setdefault(b.bit_count(), []).append(b)
    masks = [np.uint64(1 << k) for k in range(h)]
    top = max(by_weight)
    frontier = np.zeros(0, dtype=np.uint64)
    layers = []
    total = 0
    for wt in range(top, -1, -1):
        seeds = np.array(by_weight.get(wt, []), dtype=np.uint64)
        layer = np.unique(np.concatenate([frontier, seeds]))
        total += len(layer)
        if total > cap:
            raise CapExceededError(f"daisy cube has more than {cap} vertices")
        layers.append(layer)
        children = [layer[(layer & m) != 0] ^ m for m in masks]
        frontier = np.concatenate(children) if children else frontier[:0]
    return np.sort(np.concatenate(layers))


def _closure_python(tops: list[int], cap: int) -> list[int]:
    by_weight: dict[int, list[int]] = {}
    for b in tops:
        by_weight.setdefault(b.bit_count(), []).append(b)
    seen: set[int] = set()
    layer: set[int] = set()
    for wt in range(max(by_weight), -1, -1):
        layer |= set(by_weight.get(wt, ()))
        seen |= layer
        if len(seen) > cap:
            raise CapExceededError(f"daisy cube has more than {cap} vertices")
        nxt: set[int] = set()
        for b in layer:
            rest = b
            while rest:
                low = rest & -rest
                nxt.add(b ^ low)
                rest ^= low
        layer = nxt
    return sorted(seen)


def _closure_bits(h: int, tops: list[int], cap: int = DEFAULT_CAP) -> list[int]:
    """Sorted downward closure, descending one weight level at a time."""
    if h <= _NUMPY_MAX_WIDTH:
        return _closure_numpy(h, tops, cap).tolist()
    return _closure_python(tops, cap)


def downward_closure(antichain: Iterable[Word], cap: int = DEFAULT_CAP) -> frozenset[Word]:
    h, ws = _common_width(antichain)
    return frozenset(Word(h, b) for b in _closure_bits(h, [w.bits for w in ws], cap))


def _hypercube_edges(h: int, labels: list[int]) -> np.ndarray:
    """Pairs of ids whose labels differ in one bit; labels sorted and downward closed."""
    if h <= _NUMPY_MAX_WIDTH:
        arr = np.array(labels, dtype=np.uint64)
        ids = np.arange(len(arr), dtype=np.int64)
        parts = []
        for k in range(h):
            m = np.uint64(1 << k)
            sel = (arr & m) != 0
            lo = np.searchsorted(arr, arr[sel] ^ m)
            parts.append(np.stack([lo, ids[sel]], axis=1))
        edges = np.concatenate(parts) if parts else np.zeros((0, 2), dtype=np.int64)
    else:
        index = {b: i for i, b in enumerate(labels)}
        pairs = []
        for i, b in enumerate(labels):
            rest = b
            while rest:
                low = rest & -rest
                pairs.append((index[b ^ low], i))
                rest ^= low
        edges = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return edges[order]


def build(generators: GeneratorSet, cap: int = DEFAULT_CAP) -> LabeledDaisyCube:
    """The daisy cube generated by ``generators``, ids in sorted label order."""
    h = generators.width
    labels = _closure_bits(h, generators.antichain_bits, cap)
    graph = Graph(len(labels), _hypercube_edges(h, labels), require_connected=False)
    return LabeledDaisyCube(graph, Embedding(h, labels, root=0), generators)


def interval(u: Word, v: Word) -> frozenset[Word]:
    """Vertices of Q_h on shortest u,v-paths: agree with u and v where they agree."""
    if u.width != v.width:
        raise WidthMismatchError(f"width {u.width} vs {v.width}")
    h = u.width
    free = u.bits ^ v.bits
    fixed = u.bits & ~free
    out = []
    sub = free
    while True:
        out.append(Word(h, fixed | sub))
        if sub == 0:
            break
        sub = (sub - 1) & free
    return frozenset(out)


def _no_adjacent_ones(h: int, cyclic: bool) -> list[int]:
    words = [0]
    # grow left to right; bit 0 of the int is the rightmost coordinate
    for _ in range(h):
        words = [w << 1 for w in words] + [(w << 1) | 1 for w in words if not w & 1]
    if cyclic and h > 1:
        top = 1 << (h - 1)
        words = [w for w in words if not (w & 1 and w & top)]
    if cyclic and h == 1:
        words = [0]
    return words


def _random_antichain_bits(h: int, seed: int) -> list[int]:
    rng = np.random.default_rng(seed)
    k = max(2, h // 2)
    draws = rng.integers(0, 2, size=(k, h))
    return [int("".join(map(str, row)), 2) for row in draws.tolist()]


def family(name: str, h: int, seed: int | None = None) -> GeneratorSet:
    if h < 1:
        raise ValueError("family order h must be at least 1")
    full = (1 << h) - 1
    if name == "hypercube":
        bits = [full]
    elif name == "qminus":
        bits = [full ^ (1 << k) for k in range(h)]
    elif name == "fibonacci":
        bits = _maximal_bits(_no_adjacent_ones(h, cyclic=False))
    elif name == "lucas":
        bits = _maximal_bits(_no_adjacent_ones(h, cyclic=True))
    elif name == "random-antichain":
        if seed is None:
            raise ValueError("random-antichain needs a seed")
        bits = _maximal_bits(_random_antichain_bits(h, seed))
    else:
        raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    return GeneratorSet(h, frozenset(Word(h, b) for b in bits))


def strip(dc: LabeledDaisyCube, seed: int) -> tuple[Graph, Embedding]:
    """Renumber vertices and shuffle edges; return the graph and the withheld labels.

    Seed 0 is the identity: same ids, same edge order.
    """
    g = dc.graph
    if seed == 0:
        return Graph(g.n, g.edges, require_connected=False), dc.labels
    rng = np.random.default_rng(seed)
    perm = rng.permutation(g.n)
    order = rng.permutation(g.m)
    stripped = g.relabeled(perm, order)
    truth = [0] * g.n
    for old, new in enumerate(perm.tolist()):
        truth[new] = dc.labels.labels[old]
    return stripped, Embedding(dc.labels.width, truth)
