"""Fixed-width binary words and the lattice operations on B^h.

A word of width ``h`` is stored as a Python int together with its width.
Coordinate 1 is the leftmost character of the string form, so the int value
of a word is exactly ``int(str(word), 2)`` and lexicographic order on strings
agrees with integer order for words of equal width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class WidthMismatchError(ValueError):
    """Two words of different widths were combined."""


@dataclass(frozen=True, order=True)
class Word:
    width: int
    bits: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError(f"word width must be positive, got {self.width}")
        if self.bits < 0 or self.bits >> self.width:
            raise ValueError(f"bits {self.bits:#x} do not fit in width {self.width}")

    @classmethod
    def parse(cls, text: str, width: int | None = None) -> Word:
        text = text.strip()
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"not a binary word: {text!r}")
        if width is not None and len(text) != width:
            raise ValueError(f"word {text!r} has length {len(text)}, expected {width}")
        return cls(len(text), int(text, 2))

    def __str__(self) -> str:
        return format(self.bits, f"0{self.width}b")

    def __len__(self) -> int:
        return self.width

    def __getitem__(self, i: int) -> int:
        """Coordinate ``i`` in 1-based, left-to-right numbering."""
        if not 1 <= i <= self.width:
            raise IndexError(i)
        return (self.bits >> (self.width - i)) & 1


def _same_width(u: Word, v: Word) -> int:
    if u.width != v.width:
        raise WidthMismatchError(f"width {u.width} vs {v.width}")
    return u.width


def zeros(h: int) -> Word:
    return Word(h, 0)


def ones(h: int) -> Word:
    return Word(h, (1 << h) - 1)


def unit(h: int, i: int) -> Word:
    """The word 0^{i-1} 1 0^{h-i}."""
    if not 1 <= i <= h:
        raise IndexError(i)
    return Word(h, 1 << (h - i))


def hamming(x: Word, y: Word) -> int:
    _same_width(x, y)
    return (x.bits ^ y.bits).bit_count()


def weight(u: Word) -> int:
    return u.bits.bit_count()


def leq(u: Word, v: Word) -> bool:
    _same_width(u, v)
    return u.bits & ~v.bits == 0


def meet(u: Word, v: Word) -> Word:
    return Word(_same_width(u, v), u.bits & v.bits)


def join(u: Word, v: Word) -> Word:
    return Word(_same_width(u, v), u.bits | v.bits)


def xor(u: Word, v: Word) -> Word:
    return Word(_same_width(u, v), u.bits ^ v.bits)


def meet_all(words: Iterable[Word], width: int) -> Word:
    """Meet of ``words``, starting from 1^width (so the empty meet is 1^width)."""
    acc = (1 << width) - 1
    for w in words:
        if w.width != width:
            raise WidthMismatchError(f"width {w.width} vs {width}")
        acc &= w.bits
    return Word(width, acc)


def support(x: Word) -> frozenset[int]:
    h = x.width
    return frozenset(i for i in range(1, h + 1) if (x.bits >> (h - i)) & 1)


def flip_under(v: Word, u: Word) -> Word:
    """Complement the coordinates of ``u`` where ``v`` has a 1.

    This is the involution that swaps 0^h and ``v``; it is plain xor.
    """
    return xor(u, v)


def bit_of(h: int, i: int) -> int:
    """Int mask of coordinate ``i`` (1-based) in a width-``h`` word."""
    return 1 << (h - i)


def render(bits: int, h: int) -> str:
    return format(bits, f"0{h}b")
