"""Forbidden-configuration catalog and injective embedding search.

Containment is non-induced: a pattern occurs in a host when every pattern
edge maps to a host edge; extra host edges among the image vertices are
permitted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import TripleSystem


@dataclass(frozen=True)
class Pattern:
    """A small labeled 3-uniform configuration."""

    name: str
    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for e in self.edges:
            if len(set(e)) != 3 or not all(0 <= v < self.vertex_count for v in e):
                raise ValueError(f"bad pattern edge {e}")
        if len(set(self.edges)) != len(self.edges):
            raise ValueError("duplicate pattern edge")

    # Pattern edges that become fully mapped when vertex i is placed,
    # given as the pair of earlier vertices.  Drives the candidate-mask
    # intersection in find_embedding.
    def closing_pairs(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for e in self.edges:
            top = max(e)
            rest = tuple(v for v in e if v != top)
            out[top].append(rest)
        return out


# Vertex labels a..e map to indices 0..4.
K4MINUS = Pattern("k4minus", 4, ((0, 1, 2), (1, 2, 3), (0, 2, 3)))
K4 = Pattern("k4", 4, ((0, 1, 2), (1, 2, 3), (0, 2, 3), (0, 1, 3)))
C5MINUS = Pattern("c5minus", 5, ((0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 3, 4)))
C5 = Pattern("c5", 5, ((0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 3, 4), (0, 1, 4)))
F32 = Pattern("f32", 5, ((0, 1, 2), (0, 3, 4), (1, 3, 4), (2, 3, 4)))

CATALOG: dict[str, Pattern] = {p.name: p for p in (K4MINUS, K4, C5MINUS, C5, F32)}


def pattern_by_name(name: str) -> Pattern:
    """Look up a catalog pattern; names are case-insensitive."""
    try:
        return CATALOG[name.lower()]
    except KeyError:
        raise KeyError(f"unknown pattern {name!r}; choose from {sorted(CATALOG)}") from None


@dataclass(frozen=True)
class Embedding:
    """An injective map from pattern vertices into a host.

    ``map[i]`` is the host vertex assigned to pattern vertex i.  Instances
    are plain records; use validate_embedding to check the invariants.
    """

    pattern: Pattern
    host: TripleSystem
    map: tuple[int, ...]

    def image_edges(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(
            tuple(sorted((self.map[x], self.map[y], self.map[z]))) for x, y, z in self.pattern.edges
        )


def validate_embedding(emb: Embedding) -> bool:
    """True iff the map is injective, in range, and carries every pattern edge."""
    m = emb.map
    if len(m) != emb.pattern.vertex_count or len(set(m)) != len(m):
        return False
    if not all(0 <= v < emb.host.n for v in m):
        return False
    return all(emb.host.has_edge(m[x], m[y], m[z]) for x, y, z in emb.pattern.edges)


def find_embedding(host: TripleSystem, pattern: Pattern) -> Embedding | None:
    """Lexicographically least embedding of the pattern, or None.

    Backtracks over pattern vertices in index order; candidates for each
    vertex are the intersection of the pair neighborhoods of every pattern
    edge it completes, scanned in ascending host order.  The returned map
    is therefore the minimum under tuple order, which makes certificates
    reproducible.
    """
    m = search_maps(host.neighborhood_mask, host.n, pattern, {})
    return None if m is None else Embedding(pattern, host, m)


def search_maps(nbr, n: int, pattern: Pattern, partial: dict[int, int]) -> tuple[int, ...] | None:
    """Backtracking core over any pair-neighborhood source.

    ``nbr(u, v)`` must return the bitmask of vertices completing {u, v} to
    an edge.  Entries of ``partial`` pin pattern vertices to host vertices.
    Returns the least completing map in tuple order, or None.
    """
    p = pattern.vertex_count
    if p > n:
        return None
    closing = pattern.closing_pairs()
    full = (1 << n) - 1
    assigned = [-1] * p
    used = 0
    for i, v in partial.items():
        assigned[i] = v
        used |= 1 << v

    def rec(i: int) -> bool:
        nonlocal used
        if i == p:
            return True
        if assigned[i] >= 0:
            # pre-assigned: just check the edges it closes
            v = assigned[i]
            for x, y in closing[i]:
                if assigned[x] < 0 or assigned[y] < 0:
                    return False
                if not nbr(assigned[x], assigned[y]) >> v & 1:
                    return False
            return rec(i + 1)
        cand = full
        for x, y in closing[i]:
            if assigned[x] < 0 or assigned[y] < 0:
                return False
            cand &= nbr(assigned[x], assigned[y])
        cand &= ~used
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            assigned[i] = v
            used |= low
            if rec(i + 1):
                return True
            assigned[i] = -1
            used ^= low
        return False

    if rec(0):
        return tuple(assigned)
    return None


def has_embedding_with_partial(host: TripleSystem, pattern: Pattern, partial: dict[int, int]) -> bool:
    """Existence check with some pattern vertices pre-assigned (injectively)."""
    if len(set(partial.values())) != len(partial):
        return False
    return search_maps(host.neighborhood_mask, host.n, pattern, partial) is not None


def embeds_through_edge(host: TripleSystem, pattern: Pattern, edge) -> bool:
    """True iff some embedding uses the given host edge as a pattern edge.

    The incremental check behind single-edge moves: after toggling one edge
    on, any new pattern copy must pass through it.
    """
    t = tuple(edge)
    for pe in pattern.edges:
        for img in itertools.permutations(t):
            partial = dict(zip(pe, img))
            if search_maps(host.neighborhood_mask, host.n, pattern, partial) is not None:
                return True
    return False


def is_free(host: TripleSystem, pattern: Pattern) -> bool:
    """True iff the host contains no copy of the pattern."""
    return find_embedding(host, pattern) is None


def naive_find_embedding(host: TripleSystem, pattern: Pattern) -> Embedding | None:
    """Independent oracle: trial of every injective map in lexicographic order.

    Only sensible for small hosts; used to cross-check find_embedding.
    """
    for m in itertools.permutations(range(host.n), pattern.vertex_count):
        if all(host.has_edge(m[x], m[y], m[z]) for x, y, z in pattern.edges):
            return Embedding(pattern, host, m)
    return None
