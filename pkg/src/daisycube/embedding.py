from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .words import Word, render


@dataclass(frozen=True, eq=False)
class Embedding:
    """A labelling of vertices ``0..n-1`` by width-``width`` words.

    ``labels[v]`` is the int form of the word of vertex ``v``; ``root`` is the
    vertex labelled 0^h when there is one, else ``None``.
    """

    width: int
    labels: Sequence[int]
    root: int | None = field(default=None)

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError("embedding width must be positive")
        if self.root is None:
            object.__setattr__(self, "root", self.index.get(0))

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Embedding):
            return NotImplemented
        return self.width == other.width and list(self.labels) == list(other.labels)

    __hash__ = None  # type: ignore[assignment]

    def word(self, v: int) -> Word:
        return Word(self.width, self.labels[v])

    def words(self) -> list[str]:
        return [render(b, self.width) for b in self.labels]

    @cached_property
    def index(self) -> dict[int, int]:
        """Label -> vertex. Later vertices win on duplicate labels."""
        return {b: v for v, b in enumerate(self.labels)}

    def label_set(self) -> frozenset[int]:
        return frozenset(self.labels)

    def vertex_of(self, w: Word | int) -> int | None:
        return self.index.get(w.bits if isinstance(w, Word) else w)

    def xor_shift(self, s: int) -> Embedding:
        return Embedding(self.width, [b ^ s for b in self.labels])

    @classmethod
    def from_words(cls, words: Sequence[str | Word]) -> Embedding:
        ws = [w if isinstance(w, Word) else Word.parse(w) for w in words]
        if not ws:
            raise ValueError("empty embedding")
        h = ws[0].width
        if any(w.width != h for w in ws):
            raise ValueError("labels of different widths")
        return cls(h, [w.bits for w in ws])
