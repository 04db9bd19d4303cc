from __future__ import annotations

import gc
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .daisy import DEFAULT_CAP, build, family, strip
from .embedder import proper_embed
from .graph import Graph
from .verifier import baseline_proper

CSV_HEADER = ("family", "h", "n", "m", "algo", "ns", "reps")

ALGORITHMS: dict[str, Callable[[Graph], object]] = {
    "linear": proper_embed,
    "baseline": baseline_proper,
}


@dataclass(frozen=True)
class BenchRecord:
    family: str
    h: int
    n: int
    m: int
    algorithm: str
    wall_time_ns: int
    repetitions: int

    def row(self) -> tuple:
        return (self.family, self.h, self.n, self.m, self.algorithm, self.wall_time_ns, self.repetitions)


def time_ns(fn: Callable[[], object], reps: int) -> int:
    """Median wall time of ``reps`` calls, garbage collector paused while timing."""
    samples = []
    for _ in range(reps):
        gc.collect()
        gc.disable()
        try:
            t0 = time.perf_counter_ns()
            fn()
            samples.append(time.perf_counter_ns() - t0)
        finally:
            gc.enable()
    return max(1, int(statistics.median(samples)))


def instance(name: str, h: int, seed: int, cap: int = DEFAULT_CAP) -> Graph:
    """The stripped benchmark graph for ``name`` at order ``h``; deterministic per seed."""
    g, _ = strip(build(family(name, h, seed), cap), seed)
    g.adj  # adjacency is part of loading, not of the timed algorithm
    return g


def run_bench(
    name: str,
    orders: Sequence[int],
    algorithms: Sequence[str],
    reps: int = 5,
    seed: int = 1,
    cap: int = DEFAULT_CAP,
) -> Iterator[BenchRecord]:
    for h in orders:
        g = instance(name, h, seed, cap)
        for algo in algorithms:
            fn = ALGORITHMS[algo]
            ns = time_ns(lambda: fn(g), reps)
            yield BenchRecord(name, h, g.n, g.m, algo, ns, reps)
