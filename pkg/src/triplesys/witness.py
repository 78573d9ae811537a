"""Witness extraction for hosts above the extremal co-degree thresholds.

Each extractor replays a constructive case analysis step by step: starting
from a 4-vertex anchor configuration it scans pair neighborhoods for the
vertex the counting argument promises, and assembles the forbidden
configuration named by the matching case.  In the boundary regime where the
minimum positive co-degree equals exactly n/2, the analysis either surfaces
a tight 5-cycle or produces a structure certificate (an A/B partition of
the vertex set with an involutive pairing of equivalence classes) whose
arithmetic forces n to be divisible by 4.

Every existential scan picks the least-index qualifying vertex and anchor
searches use the lexicographic embedding order, so certificates are
reproducible run to run.  InternalContradiction marks states the underlying
mathematics proves unreachable; it firing on a valid input would falsify
the theory, so it carries the complete local state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import TripleSystem, mask_vertices, min_positive_codegree
from .errors import InternalContradiction, PreconditionViolated
from .patterns import C5, C5MINUS, K4, K4MINUS, Embedding, find_embedding, validate_embedding

#: Index pairs of a 4-vertex base, lexicographic.
IDX_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

#: The six base pairs grouped into the three complementary pairings.
PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))

FACT_NAMES = {
    1: "pair-codegrees-half",
    2: "pairing-complement",
    3: "cross-pair-neighborhoods",
    4: "balanced-difference",
    5: "apex-neighborhood-exclusion",
    6: "size-arithmetic",
    7: "empty-pair-characterization",
    8: "partner-in-b",
    9: "inherited-nonempty",
    10: "equivalence-classes",
}


class _FoundC5(Exception):
    """Internal control flow: a tight 5-cycle surfaced inside the machinery."""

    def __init__(self, map5):
        super().__init__("found C5")
        self.map5 = tuple(map5)


@dataclass(frozen=True)
class Mij:
    """Neighborhood of one base pair with the complementary base vertices removed."""

    base: tuple[int, int, int, int]
    pair: tuple[int, int]
    vertices: frozenset[int]


def compute_mij(host: TripleSystem, base, pair) -> Mij:
    base = tuple(base)
    i, j = pair
    base_mask = 0
    for v in base:
        base_mask |= 1 << v
    m = host.neighborhood_mask(base[i], base[j]) & ~base_mask
    return Mij(base, (i, j), frozenset(mask_vertices(m)))


@dataclass(frozen=True)
class FactReport:
    """Outcome of checking one structural fact literally, as quantified."""

    fact_id: int
    name: str
    hypothesis_met: bool
    holds: bool
    counterexample: tuple | None = None
    c5_found: Embedding | None = None
    detail: str = ""


@dataclass(frozen=True)
class StructureCertificate:
    """A/B partition data around a base K4 that forces 4 | n.

    a_sets[i] and b_sets[i] are indexed by base position: a_sets[i] is the
    triple intersection of the pair neighborhoods avoiding base[i], and
    b_sets[i] the triple intersection of those through base[i].  classes
    partitions the unique nonempty B-set by the empty-pair relation, and
    pairing is a fixed-point-free involution on class indices matching
    classes of equal size, so the nonempty B-set has even size and
    n = 4q + 2*r0 is divisible by 4.
    """

    host: TripleSystem
    base: tuple[int, int, int, int]
    a_sets: tuple[frozenset[int], frozenset[int], frozenset[int], frozenset[int]]
    b_sets: tuple[frozenset[int], frozenset[int], frozenset[int], frozenset[int]]
    q: int
    r0: int
    classes: tuple[frozenset[int], ...]
    pairing: tuple[tuple[int, int], ...]

    def verify(self) -> bool:
        """Re-check every invariant from scratch; True iff all hold."""
        host, base = self.host, self.base
        n = host.n
        if len(set(base)) != 4 or not all(0 <= v < n for v in base):
            return False
        if not _is_k4(host, base):
            return False
        cells = list(self.a_sets) + list(self.b_sets)
        if sum(len(c) for c in cells) != n:
            return False
        union: set[int] = set()
        for c in cells:
            union |= c
        if union != set(range(n)):
            return False
        nm = _neighbor_matrix(host, base)
        for i in range(4):
            others = [x for x in range(4) if x != i]
            a_mask = -1
            for j, k in ((others[0], others[1]), (others[1], others[2]), (others[0], others[2])):
                a_mask &= nm[j][k]
            b_mask = -1
            for j in others:
                b_mask &= nm[i][j]
            if self.a_sets[i] != frozenset(mask_vertices(a_mask & ((1 << n) - 1))):
                return False
            if self.b_sets[i] != frozenset(mask_vertices(b_mask & ((1 << n) - 1))):
                return False
            if base[i] not in self.a_sets[i]:
                return False
        nonempty = [i for i in range(4) if self.b_sets[i]]
        if len(nonempty) > 1:
            return False
        if not nonempty:
            if self.r0 != 0 or self.classes or self.pairing:
                return False
            if any(len(a) != self.q for a in self.a_sets):
                return False
        else:
            i = nonempty[0]
            if self.r0 != len(self.b_sets[i]) or self.r0 == 0:
                return False
            if any(len(self.a_sets[j]) != self.q for j in range(4) if j != i):
                return False
            if len(self.a_sets[i]) != self.q + self.r0:
                return False
            covered: set[int] = set()
            for cls in self.classes:
                if not cls or covered & cls:
                    return False
                covered |= cls
            if covered != self.b_sets[i]:
                return False
            # class semantics: empty pair neighborhoods inside, nonempty across
            for ci, cls in enumerate(self.classes):
                for a in cls:
                    for b in cls:
                        if a < b and host.neighborhood_mask(a, b):
                            return False
                    for cj in range(ci + 1, len(self.classes)):
                        for b in self.classes[cj]:
                            if not host.neighborhood_mask(a, b):
                                return False
            seen: set[int] = set()
            for x, y in self.pairing:
                if x == y or x in seen or y in seen:
                    return False
                if not 0 <= x < len(self.classes) or not 0 <= y < len(self.classes):
                    return False
                if len(self.classes[x]) != len(self.classes[y]):
                    return False
                seen |= {x, y}
            if seen != set(range(len(self.classes))):
                return False
        if n != 4 * self.q + 2 * self.r0:
            return False
        return self.r0 % 2 == 0 and n % 4 == 0


def _neighbor_matrix(host: TripleSystem, base):
    nm = [[0] * 4 for _ in range(4)]
    for i, j in IDX_PAIRS:
        m = host.neighborhood_mask(base[i], base[j])
        nm[i][j] = m
        nm[j][i] = m
    return nm


def _is_k4(host: TripleSystem, base) -> bool:
    a, b, c, d = base
    return (
        host.has_edge(a, b, c)
        and host.has_edge(a, b, d)
        and host.has_edge(a, c, d)
        and host.has_edge(b, c, d)
    )


def _base_mask(base) -> int:
    m = 0
    for v in base:
        m |= 1 << v
    return m


def _c5_from_quad(base, nm, v5) -> tuple[int, int, int, int, int] | None:
    """C5 through a K4 base and a vertex lying in both sets of a pairing.

    Requires v5 to also lie in one of the four crossing sets; scans pairings
    and crossings in fixed order, so the result is deterministic.
    """
    for (a, b), (c, d) in PAIRINGS:
        if nm[a][b] >> v5 & 1 and nm[c][d] >> v5 & 1:
            for x, y in ((a, c), (a, d), (b, c), (b, d)):
                if nm[x][y] >> v5 & 1:
                    px = a + b - x
                    py = c + d - y
                    return (base[px], base[x], v5, base[y], base[py])
    return None


def _set_state(host, base, nm) -> dict:
    return {
        "base": tuple(base),
        "neighborhoods": {
            (base[i], base[j]): mask_vertices(nm[i][j]) for i, j in IDX_PAIRS
        },
    }


def _k4minus_base(host: TripleSystem) -> tuple[int, int, int, int]:
    """Anchor base (apex first) from the least embedding of the 3-of-4 configuration.

    Pattern vertex 2 is the one covered by all three pattern edges, so it
    maps to the apex; the possibly-missing edge is the other three vertices.
    """
    emb = find_embedding(host, K4MINUS)
    if emb is None:
        raise InternalContradiction(
            "no K4-minus found although the co-degree threshold guarantees one",
            {"n": host.n, "min_positive_codegree": min_positive_codegree(host)},
        )
    apex = emb.map[2]
    rest = sorted((emb.map[0], emb.map[1], emb.map[3]))
    return (apex, rest[0], rest[1], rest[2])


def find_c5minus_witness(host: TripleSystem) -> Embedding:
    """Locate a tight 5-cycle minus one edge in a host with co-degree above n/3.

    Follows the two-case analysis: anchor a 3-of-4 configuration
    v1v2v3, v1v2v4, v1v3v4; if v2v3v4 is absent, scan for a fifth vertex in
    two of N(v2,v1), N(v2,v3), N(v2,v4); otherwise scan the six reduced
    neighborhoods M_{i,j} of the resulting K4 and dispatch on whether the
    two hosting index pairs overlap.
    """
    n = host.n
    if n < 6:
        raise PreconditionViolated(f"need n >= 6, got n={n}")
    delta = min_positive_codegree(host)
    threshold = n // 3 + 1
    if delta is None or delta < threshold:
        raise PreconditionViolated(
            f"need min positive co-degree >= {threshold} (strictly above n/3), got {delta}"
        )
    base = _k4minus_base(host)
    bmask = _base_mask(base)
    outside = ((1 << n) - 1) & ~bmask
    if not host.has_edge(base[1], base[2], base[3]):
        # Case 1: pivot v2 = base[1]; the three sets through it.
        sets = (
            host.neighborhood_mask(base[1], base[0]),
            host.neighborhood_mask(base[1], base[2]),
            host.neighborhood_mask(base[1], base[3]),
        )
        for v5 in mask_vertices(outside):
            flags = tuple(s >> v5 & 1 for s in sets)
            if sum(flags) < 2:
                continue
            if flags[0] and flags[1]:
                m = (base[2], base[3], base[0], base[1], v5)
            elif flags[0] and flags[2]:
                m = (base[3], base[2], base[0], base[1], v5)
            else:
                m = (base[3], base[0], base[2], base[1], v5)
            return _validated(host, C5MINUS, m)
        raise InternalContradiction(
            "no fifth vertex in two of the pivot neighborhoods",
            {"base": base, "sets": [mask_vertices(s) for s in sets], "delta": delta},
        )
    # Case 2: the anchor is a full K4; use the reduced neighborhoods.
    nm = _neighbor_matrix(host, base)
    red = {p: nm[p[0]][p[1]] & ~bmask for p in IDX_PAIRS}
    for v5 in mask_vertices(outside):
        containing = [p for p in IDX_PAIRS if red[p] >> v5 & 1]
        if len(containing) < 2:
            continue
        p1, p2 = containing[0], containing[1]
        common = set(p1) & set(p2)
        if common:
            c = common.pop()
            o1 = p1[0] + p1[1] - c
            o2 = p2[0] + p2[1] - c
            rem = 6 - c - o1 - o2
            m = (base[o2], base[rem], base[o1], base[c], v5)
        else:
            m = (v5, base[p1[0]], base[p1[1]], base[p2[0]], base[p2[1]])
        return _validated(host, C5MINUS, m)
    raise InternalContradiction(
        "no fifth vertex in two of the reduced neighborhoods",
        {"base": base, "reduced": {p: mask_vertices(v) for p, v in red.items()}, "delta": delta},
    )


def _validated(host: TripleSystem, pattern, map_tuple) -> Embedding:
    emb = Embedding(pattern, host, tuple(map_tuple))
    if not validate_embedding(emb):
        raise InternalContradiction(
            "extracted embedding failed validation",
            {"pattern": pattern.name, "map": tuple(map_tuple)},
        )
    return emb


def _extract_c5_k4free(host: TripleSystem) -> tuple[int, ...]:
    """Tight 5-cycle in a K4-free host with co-degree at least n/2.

    Anchors a 3-of-4 configuration, finds a fifth vertex in four of the six
    base-pair neighborhoods, and branches on how many of the three apex
    neighborhoods contain it (three is impossible in a K4-free host).
    """
    base = _k4minus_base(host)
    nm = _neighbor_matrix(host, base)
    outside = ((1 << host.n) - 1) & ~_base_mask(base)
    for v5 in mask_vertices(outside):
        count = sum(nm[i][j] >> v5 & 1 for i, j in IDX_PAIRS)
        if count < 4:
            continue
        apex_hits = [t for t in (1, 2, 3) if nm[0][t] >> v5 & 1]
        state = {"base": base, "v5": v5, "apex_hits": apex_hits, **_set_state(host, base, nm)}
        if len(apex_hits) == 3:
            raise InternalContradiction(
                "fifth vertex in all apex neighborhoods of a K4-free host", state
            )
        if len(apex_hits) == 0:
            raise InternalContradiction(
                "fifth vertex in four sets but no apex neighborhood", state
            )
        if len(apex_hits) == 2:
            x, y = apex_hits
            z = 6 - x - y
            if nm[x][y] >> v5 & 1:
                raise InternalContradiction("hidden K4 in a host reported K4-free", state)
            if not (nm[x][z] >> v5 & 1 and nm[y][z] >> v5 & 1):
                raise InternalContradiction("membership count inconsistent", state)
            return (base[z], v5, base[y], base[0], base[x])
        x = apex_hits[0]
        y, z = sorted(t for t in (1, 2, 3) if t != x)
        if not (nm[x][z] >> v5 & 1 and nm[y][z] >> v5 & 1):
            raise InternalContradiction("membership count inconsistent", state)
        return (base[0], base[x], v5, base[z], base[y])
    raise InternalContradiction(
        "no fifth vertex in four of the six base neighborhoods",
        {"base": base, **_set_state(host, base, nm)},
    )


def find_c5_witness(host: TripleSystem) -> Embedding:
    """Locate a tight 5-cycle in a host with co-degree strictly above n/2.

    If the host is K4-free, runs the apex-count branch analysis on a 3-of-4
    anchor; otherwise scans for a fifth vertex in four of the six pair
    neighborhoods of a K4 and closes the cycle through the pairing that
    contains it twice.
    """
    n = host.n
    if n < 6:
        raise PreconditionViolated(f"need n >= 6, got n={n}")
    delta = min_positive_codegree(host)
    threshold = n // 2 + 1
    if delta is None or delta < threshold:
        raise PreconditionViolated(
            f"need min positive co-degree >= {threshold} (strictly above n/2), got {delta}"
        )
    k4 = find_embedding(host, K4)
    if k4 is None:
        return _validated(host, C5, _extract_c5_k4free(host))
    base = k4.map
    nm = _neighbor_matrix(host, base)
    outside = ((1 << n) - 1) & ~_base_mask(base)
    for v5 in mask_vertices(outside):
        if sum(nm[i][j] >> v5 & 1 for i, j in IDX_PAIRS) < 4:
            continue
        m = _c5_from_quad(base, nm, v5)
        if m is None:
            raise InternalContradiction(
                "fifth vertex in four sets but no doubled pairing with a crossing",
                {"base": base, "v5": v5, **_set_state(host, base, nm)},
            )
        return _validated(host, C5, m)
    raise InternalContradiction(
        "no fifth vertex in four of the six base neighborhoods",
        {"base": base, "delta": delta, **_set_state(host, base, nm)},
    )


# ---------------------------------------------------------------------------
# Boundary regime: minimum positive co-degree exactly n/2
# ---------------------------------------------------------------------------


@dataclass
class _Ctx:
    """A base K4 whose six neighborhoods passed the half-degree fact checks."""

    base: tuple[int, int, int, int]
    nm: list  # 4x4 symmetric neighborhood masks
    amask: list  # per base position: triple intersection avoiding it
    bmask: list  # per base position: triple intersection through it
    qdiff: int  # the common value |A_i| - |B_i|

    @property
    def nonempty(self) -> list[int]:
        return [i for i in range(4) if self.bmask[i]]


class _HalfDegreeAnalyzer:
    """Shared machinery for hosts with minimum positive co-degree exactly n/2.

    Every public step either completes its literal verification, raises
    _FoundC5 with an explicit tight 5-cycle, or raises InternalContradiction
    from a state the theory proves unreachable.
    """

    def __init__(self, host: TripleSystem, on_fact: Callable[[str], None] | None = None):
        self.host = host
        self.n = host.n
        self.full = (1 << host.n) - 1
        self._on_fact = on_fact

    def fact(self, fact_id: int) -> None:
        if self._on_fact is not None:
            self._on_fact(FACT_NAMES[fact_id])

    def analyzed_nm(self, base):
        """Verify the six neighborhoods of a K4 base, hunting for a C5 first.

        Confirms that every pair neighborhood has size exactly n/2 and that
        the three pairings are complementary; any vertex lying in both sets
        of a pairing yields a C5 instead.
        """
        host, n = self.host, self.n
        if not _is_k4(host, base):
            raise InternalContradiction("base is not a K4", {"base": tuple(base)})
        nm = _neighbor_matrix(host, base)
        outside = self.full & ~_base_mask(base)
        for v in mask_vertices(outside):
            m5 = _c5_from_quad(base, nm, v)
            if m5 is not None:
                raise _FoundC5(m5)
        for i, j in IDX_PAIRS:
            if nm[i][j].bit_count() * 2 != n:
                raise InternalContradiction(
                    "base pair with co-degree different from n/2 and no doubled vertex",
                    {"pair": (base[i], base[j]), **_set_state(host, base, nm)},
                )
        for (a, b), (c, d) in PAIRINGS:
            if nm[a][b] ^ nm[c][d] != self.full:
                raise InternalContradiction(
                    "pairing is not complementary despite exact sizes",
                    _set_state(host, base, nm),
                )
        self.fact(1)
        self.fact(2)
        return nm

    def make_ctx(self, base) -> _Ctx:
        base = tuple(base)
        nm = self.analyzed_nm(base)
        amask = []
        bmask = []
        for i in range(4):
            others = [x for x in range(4) if x != i]
            j, k, l = others
            amask.append(nm[j][k] & nm[k][l] & nm[l][j])
            bmask.append(nm[i][j] & nm[i][k] & nm[i][l])
        cells = amask + bmask
        if sum(c.bit_count() for c in cells) != self.n or _or_all(cells) != self.full:
            raise InternalContradiction(
                "A/B cells do not partition the vertex set",
                {"base": base, "cells": [mask_vertices(c) for c in cells]},
            )
        for i in range(4):
            if not amask[i] >> base[i] & 1:
                raise InternalContradiction(
                    "base vertex missing from its own A-cell", {"base": base, "i": i}
                )
        diffs = {amask[i].bit_count() - bmask[i].bit_count() for i in range(4)}
        if len(diffs) != 1:
            raise InternalContradiction(
                "A/B size differences disagree across base positions",
                {"base": base, "diffs": sorted(diffs)},
            )
        self.fact(4)
        return _Ctx(base, nm, amask, bmask, diffs.pop())

    def aaa_equal(self, ctx: _Ctx, a: int, i: int, b: int, j: int) -> None:
        """Verify N(a,b) == N(vi,vj) for a in the i-th and b in the j-th A-cell.

        Walks through the two derived K4 bases; each is re-analyzed, so any
        failure surfaces a C5.  Returning normally means the equality was
        established literally.
        """
        host, ctx_nm = self.host, ctx.nm
        others = [x for x in range(4) if x not in (i, j)]
        k, l = others
        vj, vk, vl = ctx.base[j], ctx.base[k], ctx.base[l]
        state = {"a": a, "b": b, "i": i, "j": j, "base": ctx.base}
        if not ctx.amask[i] >> a & 1 or not ctx.amask[j] >> b & 1:
            raise InternalContradiction("cross-pair arguments not in their A-cells", state)
        base2 = (a, vj, vk, vl)
        self.analyzed_nm(base2)
        if host.neighborhood_mask(a, vk) != ctx_nm[i][k] or host.neighborhood_mask(a, vl) != ctx_nm[i][l]:
            raise InternalContradiction(
                "substituted base vertex has different neighborhoods", state
            )
        if not (
            host.neighborhood_mask(a, vk) >> b & 1
            and host.neighborhood_mask(a, vl) >> b & 1
            and ctx_nm[k][l] >> b & 1
        ):
            raise InternalContradiction("second A-cell member lost its memberships", state)
        base3 = (a, b, vk, vl)
        self.analyzed_nm(base3)
        if host.neighborhood_mask(a, b) != ctx_nm[i][j]:
            raise InternalContradiction(
                "cross-pair neighborhood differs although both derived bases verified", state
            )

    def two_nonempty_hunt(self, ctx: _Ctx):
        """At least two nonempty B-cells: a C5 must surface; never returns."""
        self.fact(5)
        host = self.host
        for i in range(4):
            for a in mask_vertices(ctx.bmask[i]):
                for jj in range(4):
                    if jj == i:
                        continue
                    nav = host.neighborhood_mask(a, ctx.base[jj])
                    for kk in range(4):
                        if kk in (i, jj):
                            continue
                        hit_b = nav & ctx.bmask[kk]
                        if hit_b:
                            b = (hit_b & -hit_b).bit_length() - 1
                            raise _FoundC5((a, ctx.base[i], ctx.base[kk], b, ctx.base[jj]))
                        for w in mask_vertices(nav & ctx.amask[kk]):
                            self.aaa_equal(ctx, w, kk, ctx.base[jj], jj)
                            raise InternalContradiction(
                                "B-cell member adjacent into a foreign A-cell with verified equalities",
                                {"a": a, "w": w, "base": ctx.base, "i": i, "jj": jj, "kk": kk},
                            )
        raise InternalContradiction(
            "two nonempty B-cells but every exclusion check passed",
            {
                "base": ctx.base,
                "B": [mask_vertices(m) for m in ctx.bmask],
                "A": [mask_vertices(m) for m in ctx.amask],
                "n": self.n,
            },
        )

    def ensure_pair_empty(self, ctx: _Ctx, a: int, b: int, jpos: int) -> None:
        """Members of one A-cell (of a unique-nonempty-B base) span no edge."""
        host = self.host
        m = host.neighborhood_mask(a, b)
        if m == 0:
            return
        for mm in range(4):
            if mm == jpos:
                continue
            for w in mask_vertices(m & ctx.amask[mm]):
                self.aaa_equal(ctx, w, mm, b, jpos)
                raise InternalContradiction(
                    "A-cell pair with a neighbor in a foreign A-cell despite verified equalities",
                    {"a": a, "b": b, "w": w, "jpos": jpos, "base": ctx.base},
                )
        raise InternalContradiction(
            "support pair inside an A-cell with co-degree below n/2",
            {"a": a, "b": b, "jpos": jpos, "neighborhood": mask_vertices(m), "base": ctx.base},
        )

    def k4_partner(self, ctx: _Ctx, a: int, istar: int, j2: int) -> int:
        """Least b in the nonempty B-cell forming a K4 with a and two base vertices."""
        host = self.host
        vi, vj = ctx.base[istar], ctx.base[j2]
        cand = (
            ctx.bmask[istar]
            & ~(1 << a)
            & host.neighborhood_mask(a, vi)
            & host.neighborhood_mask(a, vj)
        )
        if cand:
            return (cand & -cand).bit_length() - 1
        # The counting argument says a partner must exist; re-derive it, which
        # either surfaces a C5 or proves the state impossible.
        self.fact(8)
        nav_j = host.neighborhood_mask(a, vj)
        for mm in range(4):
            if mm == istar:
                continue
            hits = nav_j & ctx.amask[mm]
            if not hits:
                continue
            if mm == j2:
                for w in mask_vertices(hits):
                    self.ensure_pair_empty(ctx, w, vj, j2)
                    raise InternalContradiction(
                        "apex neighborhood meets the pivot A-cell with empty pair verified",
                        {"a": a, "w": w, "base": ctx.base},
                    )
            else:
                for w in mask_vertices(hits):
                    self.aaa_equal(ctx, w, mm, vj, j2)
                    raise InternalContradiction(
                        "apex neighborhood meets a foreign A-cell with verified equalities",
                        {"a": a, "w": w, "base": ctx.base},
                    )
        nav_i = host.neighborhood_mask(a, vi)
        k2 = min(x for x in range(4) if x not in (istar, j2))
        for c in mask_vertices(nav_i & ctx.amask[istar]):
            self.aaa_equal(ctx, c, istar, ctx.base[k2], k2)
            raise _FoundC5((vi, a, c, ctx.base[k2], vj))
        raise InternalContradiction(
            "no K4 partner although the counting argument guarantees one",
            {
                "a": a,
                "istar": istar,
                "j2": j2,
                "base": ctx.base,
                "B": mask_vertices(ctx.bmask[istar]),
            },
        )

    def secondary_ctx(self, ctx: _Ctx, istar: int, j2: int, v5: int, v6: int) -> _Ctx:
        """Analyzed context for the base (v_istar, v_j2, v5, v6) with nonempty apex B."""
        s_base = (ctx.base[istar], ctx.base[j2], v5, v6)
        sctx = self.make_ctx(s_base)
        self.fact(9)
        if not sctx.bmask[0]:
            ne = sctx.nonempty
            if len(ne) >= 2:
                self.two_nonempty_hunt(sctx)
            raise InternalContradiction(
                "secondary base lost its apex B-cell",
                {
                    "secondary_base": s_base,
                    "nonempty_positions": ne,
                    "A_sizes": [m.bit_count() for m in sctx.amask],
                    "primary_base": ctx.base,
                    "n": self.n,
                },
            )
        if len(sctx.nonempty) > 1:
            self.two_nonempty_hunt(sctx)
        return sctx

    def certificate(self, ctx: _Ctx) -> StructureCertificate:
        """Build the structure certificate for a base with at most one nonempty B-cell."""
        host, n = self.host, self.n
        nonempty = ctx.nonempty
        if not nonempty:
            q = ctx.amask[0].bit_count()
            if any(m.bit_count() != q for m in ctx.amask) or 4 * q != n:
                raise InternalContradiction(
                    "empty B-cells but unbalanced A-cells",
                    {"base": ctx.base, "A_sizes": [m.bit_count() for m in ctx.amask]},
                )
            self.fact(6)
            return self._emit(ctx, q, 0, (), ())
        istar = nonempty[0]
        r0 = ctx.bmask[istar].bit_count()
        q = ctx.qdiff
        if (
            any(ctx.amask[j].bit_count() != q for j in range(4) if j != istar)
            or ctx.amask[istar].bit_count() != q + r0
            or n != 4 * q + 2 * r0
        ):
            raise InternalContradiction(
                "size arithmetic broken for the unique nonempty B-cell",
                {"base": ctx.base, "q": q, "r0": r0, "n": n},
            )
        # Cross-pair neighborhood sweep
        self.fact(3)
        for i in range(4):
            for j in range(i + 1, 4):
                target = ctx.nm[i][j]
                for a in mask_vertices(ctx.amask[i]):
                    for b in mask_vertices(ctx.amask[j]):
                        if host.neighborhood_mask(a, b) != target:
                            self.aaa_equal(ctx, a, i, b, j)
                            raise InternalContradiction(
                                "cross-pair neighborhood differs but derivation verified",
                                {"a": a, "b": b, "i": i, "j": j, "base": ctx.base},
                            )
        # Apex exclusion sweep
        self.fact(5)
        for a in mask_vertices(ctx.bmask[istar]):
            for jj in range(4):
                if jj == istar:
                    continue
                nav = host.neighborhood_mask(a, ctx.base[jj])
                for kk in range(4):
                    if kk in (istar, jj):
                        continue
                    for w in mask_vertices(nav & ctx.amask[kk]):
                        self.aaa_equal(ctx, w, kk, ctx.base[jj], jj)
                        raise InternalContradiction(
                            "apex exclusion violated with verified equalities",
                            {"a": a, "w": w, "jj": jj, "kk": kk, "base": ctx.base},
                        )
        # Empty pairs inside each balanced A-cell
        self.fact(6)
        for j in range(4):
            if j == istar:
                continue
            members = mask_vertices(ctx.amask[j])
            for x in range(len(members)):
                for y in range(x + 1, len(members)):
                    self.ensure_pair_empty(ctx, members[x], members[y], j)
        # Equivalence classes of the empty-pair relation on the B-cell
        self.fact(10)
        bbits = mask_vertices(ctx.bmask[istar])
        j2 = min(x for x in range(4) if x != istar)
        sim: dict[int, int] = {}
        for a in bbits:
            m = 1 << a
            for b in bbits:
                if b != a and host.neighborhood_mask(a, b) == 0:
                    m |= 1 << b
            sim[a] = m
        for a in bbits:
            for b in mask_vertices(sim[a]):
                if b == a or sim[b] == sim[a]:
                    continue
                diff = (sim[a] ^ sim[b]) & ~(1 << a) & ~(1 << b)
                c = (diff & -diff).bit_length() - 1
                if sim[a] >> c & 1:
                    v5, v7, v8 = a, b, c
                else:
                    v5, v7, v8 = b, a, c
                self._transitivity(ctx, istar, j2, v5, v7, v8)
                raise InternalContradiction(
                    "empty-pair relation not transitive and no C5 surfaced",
                    {"triple": (v5, v7, v8), "base": ctx.base},
                )
        class_masks: list[int] = []
        for a in bbits:
            if sim[a] not in class_masks:
                class_masks.append(sim[a])
        class_masks.sort(key=lambda m: m & -m)
        # Involutive pairing of classes through K4 partners
        f: dict[int, int] = {}
        for ci, cmask in enumerate(class_masks):
            v5 = (cmask & -cmask).bit_length() - 1
            v6 = self.k4_partner(ctx, v5, istar, j2)
            sctx = self.secondary_ctx(ctx, istar, j2, v5, v6)
            self.fact(7)
            a5s = sctx.amask[2]
            a6s = sctx.amask[3]
            if a5s & ~ctx.bmask[istar] or a6s & ~ctx.bmask[istar]:
                raise InternalContradiction(
                    "secondary A-cell leaves the primary B-cell",
                    {"secondary_base": sctx.base, "primary_base": ctx.base},
                )
            for a in mask_vertices(a5s & ~cmask):
                self.ensure_pair_empty(sctx, a, v5, 2)
                raise InternalContradiction(
                    "secondary A-cell member empty-paired with the class representative "
                    "yet outside the class",
                    {"a": a, "v5": v5, "secondary_base": sctx.base},
                )
            if cmask != a5s:
                raise InternalContradiction(
                    "class does not match the secondary A-cell",
                    {"class": mask_vertices(cmask), "a5s": mask_vertices(a5s)},
                )
            fmask = sim[v6]
            for a in mask_vertices(a6s & ~fmask):
                self.ensure_pair_empty(sctx, a, v6, 3)
                raise InternalContradiction(
                    "secondary A-cell member empty-paired with the partner "
                    "yet outside its class",
                    {"a": a, "v6": v6, "secondary_base": sctx.base},
                )
            if fmask != a6s:
                raise InternalContradiction(
                    "partner class does not match the secondary A-cell",
                    {"class": mask_vertices(fmask), "a6s": mask_vertices(a6s)},
                )
            f[ci] = class_masks.index(fmask)
        for ci, cj in f.items():
            if ci == cj or f[cj] != ci or class_masks[ci].bit_count() != class_masks[cj].bit_count():
                raise InternalContradiction(
                    "class pairing is not a size-preserving fixed-point-free involution",
                    {"pairing": f, "sizes": [m.bit_count() for m in class_masks]},
                )
        pairing = tuple(sorted((min(ci, cj), max(ci, cj)) for ci, cj in f.items() if ci < cj))
        if r0 % 2 or n % 4:
            raise InternalContradiction(
                "divisibility conclusion failed despite a verified pairing",
                {"r0": r0, "n": n},
            )
        classes = tuple(frozenset(mask_vertices(m)) for m in class_masks)
        return self._emit(ctx, q, r0, classes, pairing)

    def _transitivity(self, ctx: _Ctx, istar: int, j2: int, v5: int, v7: int, v8: int):
        """Transitivity failed literally: surface the C5 it implies; never returns."""
        v6 = self.k4_partner(ctx, v5, istar, j2)
        sctx = self.secondary_ctx(ctx, istar, j2, v5, v6)
        self.fact(7)
        a5s = sctx.amask[2]
        if not (a5s >> v7 & 1 and a5s >> v8 & 1):
            raise InternalContradiction(
                "empty-paired vertices missing from the secondary A-cell",
                {"v5": v5, "v7": v7, "v8": v8, "secondary_base": sctx.base},
            )
        self.ensure_pair_empty(sctx, v7, v8, 2)
        raise InternalContradiction(
            "non-adjacent class members turned adjacent",
            {"v7": v7, "v8": v8, "secondary_base": sctx.base},
        )

    def _emit(self, ctx: _Ctx, q: int, r0: int, classes, pairing) -> StructureCertificate:
        cert = StructureCertificate(
            host=self.host,
            base=ctx.base,
            a_sets=tuple(frozenset(mask_vertices(m)) for m in ctx.amask),
            b_sets=tuple(frozenset(mask_vertices(m)) for m in ctx.bmask),
            q=q,
            r0=r0,
            classes=classes,
            pairing=pairing,
        )
        if not cert.verify():
            raise InternalContradiction(
                "assembled certificate failed self-validation",
                {"base": ctx.base, "q": q, "r0": r0},
            )
        return cert


def _or_all(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def analyze_half_degree(
    host: TripleSystem, on_fact: Callable[[str], None] | None = None
) -> Embedding | StructureCertificate:
    """Boundary analysis for hosts with minimum positive co-degree exactly n/2.

    Returns either a validated tight 5-cycle embedding or a structure
    certificate proving n is divisible by 4.  K4-free hosts are handled by
    the apex-count branch extraction directly.  ``on_fact`` receives the
    name of each structural fact as it is exercised.
    """
    n = host.n
    if n % 2:
        raise PreconditionViolated(f"need even n, got n={n}")
    delta = min_positive_codegree(host)
    if delta is None or delta != n // 2:
        raise PreconditionViolated(
            f"need min positive co-degree exactly n/2 = {n // 2}, got {delta}"
        )
    k4 = find_embedding(host, K4)
    if k4 is None:
        return _validated(host, C5, _extract_c5_k4free(host))
    analyzer = _HalfDegreeAnalyzer(host, on_fact)
    try:
        ctx = analyzer.make_ctx(k4.map)
        if len(ctx.nonempty) >= 2:
            analyzer.two_nonempty_hunt(ctx)
        return analyzer.certificate(ctx)
    except _FoundC5 as found:
        return _validated(host, C5, found.map5)


# ---------------------------------------------------------------------------
# Literal fact checks
# ---------------------------------------------------------------------------


def check_fact(host: TripleSystem, base, fact_id: int) -> FactReport:
    """Check one structural fact literally, as quantified, over a K4 base.

    The report records whether the fact-specific hypotheses hold (they are
    never assumed), whether the statement itself holds, a concrete
    counterexample tuple when it fails, and a validated C5 embedding when
    the failure mode directly exhibits one.
    """
    base = tuple(base)
    if len(set(base)) != 4 or not all(0 <= v < host.n for v in base):
        raise PreconditionViolated(f"base must be 4 distinct vertices, got {base}")
    if not _is_k4(host, base):
        raise PreconditionViolated(f"base {base} is not a K4 in the host")
    if fact_id not in FACT_NAMES:
        raise PreconditionViolated(f"fact_id must be in 1..10, got {fact_id}")
    n = host.n
    delta = min_positive_codegree(host)
    ambient = n % 2 == 0 and delta == n // 2
    nm = _neighbor_matrix(host, base)
    full = (1 << n) - 1
    amask = []
    bmask = []
    for i in range(4):
        others = [x for x in range(4) if x != i]
        j, k, l = others
        amask.append(nm[j][k] & nm[k][l] & nm[l][j])
        bmask.append(nm[i][j] & nm[i][k] & nm[i][l])
    nonempty = [i for i in range(4) if bmask[i]]
    unique = ambient and len(nonempty) == 1
    name = FACT_NAMES[fact_id]

    def quad_c5() -> Embedding | None:
        for v in range(n):
            if v in base:
                continue
            m5 = _c5_from_quad(base, nm, v)
            if m5 is not None:
                emb = Embedding(C5, host, m5)
                if validate_embedding(emb):
                    return emb
        return None

    if fact_id == 1:
        holds, cex = True, None
        for i, j in IDX_PAIRS:
            if nm[i][j].bit_count() * 2 != n:
                holds, cex = False, (base[i], base[j], nm[i][j].bit_count())
                break
        if holds:
            for v in range(n):
                c = sum(nm[i][j] >> v & 1 for i, j in IDX_PAIRS)
                if c != 3:
                    holds, cex = False, (v, c)
                    break
        return FactReport(fact_id, name, ambient, holds, cex, None if holds else quad_c5())

    if fact_id == 2:
        holds, cex = True, None
        for (a, b), (c, d) in PAIRINGS:
            if nm[a][b] ^ nm[c][d] != full:
                bad = (nm[a][b] ^ nm[c][d] ^ full) & full
                v = (bad & -bad).bit_length() - 1
                holds, cex = False, ((base[a], base[b]), (base[c], base[d]), v)
                break
        return FactReport(fact_id, name, ambient, holds, cex, None if holds else quad_c5())

    if fact_id == 3:
        for i in range(4):
            for j in range(i + 1, 4):
                for a in mask_vertices(amask[i]):
                    for b in mask_vertices(amask[j]):
                        if host.neighborhood_mask(a, b) != nm[i][j]:
                            return FactReport(fact_id, name, ambient, False, (a, b))
        return FactReport(fact_id, name, ambient, True)

    if fact_id == 4:
        diffs = tuple(amask[i].bit_count() - bmask[i].bit_count() for i in range(4))
        holds = len(set(diffs)) == 1
        return FactReport(fact_id, name, ambient, holds, None if holds else diffs)

    if fact_id == 5:
        for i in range(4):
            for a in mask_vertices(bmask[i]):
                for jj in range(4):
                    if jj == i:
                        continue
                    nav = host.neighborhood_mask(a, base[jj])
                    for kk in range(4):
                        if kk in (i, jj):
                            continue
                        hit = nav & (amask[kk] | bmask[kk])
                        if hit:
                            w = (hit & -hit).bit_length() - 1
                            c5 = None
                            if nav & bmask[kk]:
                                b = (nav & bmask[kk]) & -(nav & bmask[kk])
                                b = b.bit_length() - 1
                                emb = Embedding(C5, host, (a, base[i], base[kk], b, base[jj]))
                                if validate_embedding(emb):
                                    c5 = emb
                            return FactReport(
                                fact_id, name, ambient, False, (a, base[jj], w), c5
                            )
        for i in range(4):
            if not bmask[i]:
                continue
            for jj in range(4):
                if jj == i:
                    continue
                total = (
                    amask[i].bit_count()
                    + amask[jj].bit_count()
                    + bmask[i].bit_count()
                    + bmask[jj].bit_count()
                )
                if 2 * total < 2 + n:
                    return FactReport(fact_id, name, ambient, False, (base[i], base[jj], total))
        return FactReport(fact_id, name, ambient, True)

    if fact_id == 6:
        if not unique:
            return FactReport(
                fact_id, name, False, True,
                detail="needs exactly one nonempty B-cell under the n/2 regime",
            )
        i = nonempty[0]
        r = bmask[i].bit_count()
        sizes = {amask[j].bit_count() for j in range(4) if j != i}
        if len(sizes) != 1:
            return FactReport(fact_id, name, True, False, tuple(sorted(sizes)))
        q = sizes.pop()
        if n != 4 * q + 2 * r:
            return FactReport(fact_id, name, True, False, (q, r, n))
        if not (4 * amask[i].bit_count() > n > 4 * q):
            return FactReport(fact_id, name, True, False, (amask[i].bit_count(), q))
        for j in range(4):
            if j == i:
                continue
            members = mask_vertices(amask[j])
            for x in range(len(members)):
                for y in range(x + 1, len(members)):
                    if host.neighborhood_mask(members[x], members[y]):
                        return FactReport(
                            fact_id, name, True, False, (members[x], members[y])
                        )
        return FactReport(fact_id, name, True, True)

    if fact_id == 7:
        if not unique:
            return FactReport(
                fact_id, name, False, True,
                detail="needs exactly one nonempty B-cell under the n/2 regime",
            )
        i = nonempty[0]
        for j in range(4):
            if j == i:
                continue
            for a in range(n):
                empty = host.neighborhood_mask(a, base[j]) == 0
                member = bool(amask[j] >> a & 1)
                if empty != member:
                    return FactReport(fact_id, name, True, False, (a, base[j]))
        return FactReport(fact_id, name, True, True)

    if fact_id == 8:
        if not unique:
            return FactReport(
                fact_id, name, False, True,
                detail="needs exactly one nonempty B-cell under the n/2 regime",
            )
        i = nonempty[0]
        for a in mask_vertices(bmask[i]):
            for j in range(4):
                if j == i:
                    continue
                cand = (
                    bmask[i]
                    & ~(1 << a)
                    & host.neighborhood_mask(a, base[i])
                    & host.neighborhood_mask(a, base[j])
                )
                if not cand:
                    return FactReport(fact_id, name, True, False, (a, base[j]))
        return FactReport(fact_id, name, True, True)

    if fact_id == 9:
        if not unique:
            return FactReport(
                fact_id, name, False, True,
                detail="needs exactly one nonempty B-cell under the n/2 regime",
            )
        i = nonempty[0]
        members = mask_vertices(bmask[i])
        for j in range(4):
            if j == i:
                continue
            for x in range(len(members)):
                for y in range(x + 1, len(members)):
                    a, b = members[x], members[y]
                    if not _is_k4(host, (base[i], base[j], a, b)):
                        continue
                    s_nm = _neighbor_matrix(host, (base[i], base[j], a, b))
                    apex_b = s_nm[0][1] & s_nm[0][2] & s_nm[0][3]
                    if not apex_b:
                        return FactReport(fact_id, name, True, False, (base[j], a, b))
        return FactReport(fact_id, name, True, True)

    # fact_id == 10
    if not unique:
        return FactReport(
            fact_id, name, False, True,
            detail="needs exactly one nonempty B-cell under the n/2 regime",
        )
    i = nonempty[0]
    members = mask_vertices(bmask[i])
    empty = {
        (a, b): host.neighborhood_mask(a, b) == 0 for a in members for b in members if a != b
    }
    for a in members:
        for b in members:
            for c in members:
                if len({a, b, c}) != 3:
                    continue
                if empty[(a, b)] and empty[(b, c)] and not empty[(a, c)]:
                    return FactReport(fact_id, name, True, False, (a, b, c))
    return FactReport(fact_id, name, True, True)
