"""Timing harness: conjugacy decisions on planted instances."""

from __future__ import annotations

import csv
import math
import random
import time
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, TextIO

from .conjugacy import conjugacy
from .group import make_group
from .oracle import random_conjugate_pair, random_unimodular

CSV_HEADER = ("n", "s", "coord_bound", "seed", "outcome", "wall_time_s")


@dataclass(frozen=True)
class BenchRecord:
    n: int
    s: int
    coord_bound: int
    seed: int
    outcome: str
    wall_time: float

    def row(self):
        return (self.n, self.s, self.coord_bound, self.seed, self.outcome, f"{self.wall_time:.6f}")


def instance_seeds(seed: int, configs: int, trials: int) -> List[List[int]]:
    """Per-configuration trial seeds, drawn in a fixed order."""
    rng = random.Random(seed)
    return [[rng.randrange(2**32) for _ in range(trials)] for _ in range(configs)]


def run_bench(
    ns: Sequence[int],
    ss: Sequence[int],
    trials: int,
    seed: int = 0,
    coord_bound: int = 2**16,
    ops: int = 20,
) -> Iterator[BenchRecord]:
    """One record per trial, in (n, s, trial) order.

    Each trial draws ``phi`` from ``ops`` elementary operations and plants a
    conjugator whose exponent is bounded by ``|s|``, so every decision runs
    the full search.
    """
    configs = [(n, s) for n in ns for s in ss]
    seeds = instance_seeds(seed, len(configs), trials)
    for (n, s), config_seeds in zip(configs, seeds):
        for inst_seed in config_seeds:
            G = make_group(n, random_unimodular(n, ops, inst_seed))
            bundle = random_conjugate_pair(G, inst_seed, coord_bound, abs(s), s=s)
            start = time.perf_counter()
            witness = conjugacy(G, bundle.u, bundle.v)
            elapsed = time.perf_counter() - start
            outcome = "conjugate" if witness is not None else "not-conjugate"
            yield BenchRecord(n, s, coord_bound, inst_seed, outcome, elapsed)


def write_csv(records: Iterable[BenchRecord], out: TextIO) -> int:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    count = 0
    for rec in records:
        writer.writerow(rec.row())
        out.flush()
        count += 1
    return count


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(max(y, 1e-9)) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    num = sum((a - mx) * (b - my) for a, b in zip(lx, ly))
    den = sum((a - mx) ** 2 for a in lx)
    return num / den
