"""Daisy cubes: construction, linear-time proper embedding, brute-force oracles."""

from .daisy import GeneratorSet, LabeledDaisyCube, antichain_of, build, downward_closure, family, interval, strip
from .embedder import embed_isometric, mark_extremal, minimal_shift, proper_embed, proper_embed_detailed
from .embedding import Embedding
from .errors import CapExceededError, DaisyError, FormatError, GraphError, NotDaisyCubeError
from .graph import Graph, bfs, down_neighbors, max_degree_vertex
from .words import Word

__all__ = [
    "CapExceededError",
    "DaisyError",
    "Embedding",
    "FormatError",
    "GeneratorSet",
    "Graph",
    "GraphError",
    "LabeledDaisyCube",
    "NotDaisyCubeError",
    "Word",
    "antichain_of",
    "bfs",
    "build",
    "down_neighbors",
    "downward_closure",
    "embed_isometric",
    "family",
    "interval",
    "mark_extremal",
    "max_degree_vertex",
    "minimal_shift",
    "proper_embed",
    "proper_embed_detailed",
    "strip",
]
