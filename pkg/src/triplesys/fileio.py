"""Plain-text host files and JSON certificates.

The host format is line-oriented for diff-ability: a header ``n <count>``
followed by one edge per line as three ascending vertex indices separated
by single spaces.  ``#`` starts a comment line; blank lines are skipped;
duplicate edges are rejected.  Serialization is byte-stable (LF endings,
ASCII, lexicographic edge order), so parse(serialize(H)) == H.
"""

from __future__ import annotations

import json
import re

from .core import TripleSystem
from .patterns import Embedding, pattern_by_name, validate_embedding
from .witness import StructureCertificate

_EDGE_LINE = re.compile(r"^(\d+) (\d+) (\d+)$")
_HEADER_LINE = re.compile(r"^n (\d+)$")


class ParseError(ValueError):
    """Malformed host file; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_hypergraph(text: str) -> TripleSystem:
    n = None
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            m = _HEADER_LINE.match(line)
            if not m:
                raise ParseError(lineno, f"expected header 'n <count>', got {line!r}")
            n = int(m.group(1))
            if n > 64:
                raise ParseError(lineno, f"vertex count {n} exceeds the cap of 64")
            continue
        m = _EDGE_LINE.match(line)
        if not m:
            raise ParseError(
                lineno, f"expected three space-separated integers, got {line!r}"
            )
        t = tuple(int(g) for g in m.groups())
        if not t[0] < t[1] < t[2]:
            raise ParseError(lineno, f"vertices must be distinct and ascending: {line!r}")
        if t[2] >= n:
            raise ParseError(lineno, f"vertex {t[2]} out of range 0..{n - 1}")
        if t in seen:
            raise ParseError(lineno, f"duplicate edge {line!r}")
        seen.add(t)
        edges.append(t)
    if n is None:
        raise ParseError(1, "missing header 'n <count>'")
    return TripleSystem(n, edges)


def serialize_hypergraph(host: TripleSystem) -> str:
    lines = [f"n {host.n}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in host.edges)
    return "\n".join(lines) + "\n"


def read_hypergraph(path: str) -> TripleSystem:
    with open(path, "r", encoding="ascii") as fh:
        return parse_hypergraph(fh.read())


def write_hypergraph(path: str, host: TripleSystem) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(serialize_hypergraph(host))


def embedding_to_json(emb: Embedding) -> dict:
    return {
        "kind": "embedding",
        "pattern": emb.pattern.name,
        "map": list(emb.map),
        "edges": [list(e) for e in emb.image_edges()],
    }


def certificate_to_json(cert: StructureCertificate) -> dict:
    return {
        "kind": "structure",
        "base": list(cert.base),
        "A": [sorted(s) for s in cert.a_sets],
        "B": [sorted(s) for s in cert.b_sets],
        "q": cert.q,
        "r0": cert.r0,
        "classes": [sorted(c) for c in cert.classes],
        "pairing": [list(p) for p in cert.pairing],
        "conclusion": "n divisible by 4",
    }


def result_to_json(result) -> dict:
    """Serialize an extractor result (embedding or structure certificate)."""
    if isinstance(result, Embedding):
        return embedding_to_json(result)
    return certificate_to_json(result)


def result_from_json(data: dict, host: TripleSystem):
    """Rebuild and re-validate a certificate against its host.

    Raises ValueError when the payload is malformed or fails validation.
    """
    kind = data.get("kind")
    if kind == "embedding":
        emb = Embedding(pattern_by_name(data["pattern"]), host, tuple(data["map"]))
        if not validate_embedding(emb):
            raise ValueError("embedding certificate failed validation")
        if sorted(tuple(e) for e in data["edges"]) != sorted(emb.image_edges()):
            raise ValueError("embedding certificate edges do not match its map")
        return emb
    if kind == "structure":
        cert = StructureCertificate(
            host=host,
            base=tuple(data["base"]),
            a_sets=tuple(frozenset(s) for s in data["A"]),
            b_sets=tuple(frozenset(s) for s in data["B"]),
            q=data["q"],
            r0=data["r0"],
            classes=tuple(frozenset(c) for c in data["classes"]),
            pairing=tuple(tuple(p) for p in data["pairing"]),
        )
        if not cert.verify():
            raise ValueError("structure certificate failed validation")
        return cert
    raise ValueError(f"unknown certificate kind {kind!r}")


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
