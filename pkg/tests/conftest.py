"""Shared generators and independent oracles."""

from __future__ import annotations

import itertools
import random

from triplesys import TripleSystem, complete_triple_system, min_positive_codegree


def random_host(n: int, rng: random.Random, density: float = 0.5) -> TripleSystem:
    """Uniformly random edge subset of the complete host."""
    edges = [t for t in itertools.combinations(range(n), 3) if rng.random() < density]
    return TripleSystem(n, edges)


def random_host_above(n: int, threshold: int, rng: random.Random) -> TripleSystem:
    """Random edge deletions from the complete host, rejection-sampled so the
    minimum positive co-degree never drops below the threshold."""
    edges = set(complete_triple_system(n).edges)
    order = sorted(edges)
    rng.shuffle(order)
    for t in order:
        trial = edges - {t}
        host = TripleSystem(n, trial)
        delta = min_positive_codegree(host)
        if delta is not None and delta >= threshold:
            edges = trial
    return TripleSystem(n, edges)


def scan_min_positive_codegree(host: TripleSystem) -> int | None:
    """Direct per-pair edge scan, independent of the bitmask machinery."""
    best = None
    for u in range(host.n):
        for v in range(u + 1, host.n):
            count = sum(1 for e in host.edges if u in e and v in e)
            if count and (best is None or count < best):
                best = count
    return best
