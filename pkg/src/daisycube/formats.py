"""Text formats for graphs, labels and generator words.

Graph file::

    daisy-graph 1
    <n> <m>
    <u> <v>          (m lines, 0 <= u < v < n)

Labels file: ``daisy-labels 1``, then ``<n> <h>``, then one h-character word
per vertex. Words file: ``daisy-words 1``, then ``<k> <h>``, then k words.
Lines starting with ``#`` and blank lines are ignored everywhere.
"""

from __future__ import annotations

from typing import Iterable, TextIO

import numpy as np

from .daisy import GeneratorSet
from .embedding import Embedding
from .errors import FormatError, GraphError
from .graph import Graph
from .words import Word, render

GRAPH_MAGIC = "daisy-graph 1"
LABELS_MAGIC = "daisy-labels 1"
WORDS_MAGIC = "daisy-words 1"


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _header(lines: list[str], magic: str) -> tuple[int, int]:
    if not lines or lines[0].split() != magic.split():
        raise FormatError(f"expected header {magic!r}")
    if len(lines) < 2:
        raise FormatError("missing size line")
    parts = lines[1].split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise FormatError(f"bad size line {lines[1]!r}")
    return int(parts[0]), int(parts[1])


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    n, m = _header(lines, GRAPH_MAGIC)
    body = lines[2:]
    if len(body) != m:
        raise FormatError(f"header announces {m} edges, found {len(body)}")
    try:
        flat = np.array(" ".join(body).split(), dtype=np.int64) if m else np.zeros(0, dtype=np.int64)
    except ValueError as exc:
        raise FormatError(f"non-integer in edge list: {exc}") from None
    if any(len(ln.split()) != 2 for ln in body):
        raise FormatError("every edge line needs exactly two ids")
    edges = flat.reshape(-1, 2)
    if m and np.any(edges[:, 0] >= edges[:, 1]):
        k = int(np.flatnonzero(edges[:, 0] >= edges[:, 1])[0])
        raise FormatError(f"edge line {k + 1} is not u < v: {body[k]!r}")
    try:
        return Graph(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def format_graph(g: Graph) -> str:
    out = [GRAPH_MAGIC, f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges.tolist())
    return "\n".join(out) + "\n"


def _parse_word_lines(lines: list[str], count: int, width: int, what: str) -> list[int]:
    if len(lines) != count:
        raise FormatError(f"header announces {count} {what}, found {len(lines)}")
    if width < 1:
        raise FormatError("word width must be positive")
    try:
        return [Word.parse(ln, width).bits for ln in lines]
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def parse_labels(text: str) -> Embedding:
    lines = _content_lines(text)
    n, h = _header(lines, LABELS_MAGIC)
    if n < 1:
        raise FormatError("labels file lists no vertices")
    return Embedding(h, _parse_word_lines(lines[2:], n, h, "labels"))


def format_labels(e: Embedding) -> str:
    out = [LABELS_MAGIC, f"{len(e)} {e.width}"]
    out.extend(render(b, e.width) for b in e.labels)
    return "\n".join(out) + "\n"


def parse_words(text: str) -> GeneratorSet:
    lines = _content_lines(text)
    k, h = _header(lines, WORDS_MAGIC)
    if k < 1:
        raise FormatError("words file lists no words")
    bits = _parse_word_lines(lines[2:], k, h, "words")
    return GeneratorSet(h, frozenset(Word(h, b) for b in bits))


def format_words(words: Iterable[Word]) -> str:
    ws = sorted(words)
    if not ws:
        raise ValueError("no words to write")
    out = [WORDS_MAGIC, f"{len(ws)} {ws[0].width}"]
    out.extend(str(w) for w in ws)
    return "\n".join(out) + "\n"


def read_text(path: str, stdin: TextIO | None = None) -> str:
    if path == "-":
        import sys

        return (stdin or sys.stdin).read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def write_text(path: str, text: str, stdout: TextIO | None = None) -> None:
    if path == "-":
        import sys

        (stdout or sys.stdout).write(text)
        return
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
