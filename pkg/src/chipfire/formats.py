"""Text and JSON formats for distributions, witnesses and certificates.

Vertex lists in JSON follow the graph file's vertex order; witness vertices
are 1-based.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ParseError
from .game import GameTrace
from .graph import Vector
from .halting import HaltingCertificate
from .reach import ReachCertificate


def parse_distribution(text: str) -> Vector:
    """Whitespace- or comma-separated nonnegative integers; '#' starts a comment."""
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.replace(",", " ").split())
    if not tokens:
        raise ParseError("empty distribution")
    try:
        values = tuple(int(t) for t in tokens)
    except ValueError:
        raise ParseError(f"non-integer in distribution: {text.strip()!r}") from None
    if any(v < 0 for v in values):
        raise ParseError("distribution entries must be nonnegative")
    return values


def format_vector(v) -> str:
    return " ".join(map(str, v))


def certificate_to_json(cert: ReachCertificate) -> dict[str, Any]:
    return {"type": "nonreach", "f": list(cert.f), "g": list(cert.g)}


def halting_certificate_to_json(cert: HaltingCertificate) -> dict[str, Any]:
    return {"type": "nonterminating", "y": list(cert.y)}


def witness_to_json(trace: GameTrace) -> dict[str, Any]:
    return {"type": "game", "firings": [[v + 1, c] for v, c in trace.firings]}


def _int_list(obj: Any, key: str) -> list[int]:
    val = obj.get(key)
    if not isinstance(val, list) or not all(
            isinstance(a, int) and not isinstance(a, bool) for a in val):
        raise ParseError(f"field {key!r} must be a list of integers")
    return val


def load_json(text: str) -> dict[str, Any]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "type" not in obj:
        raise ParseError("expected a JSON object with a 'type' field")
    return obj


def certificate_from_json(text: str) -> ReachCertificate:
    obj = load_json(text)
    if obj["type"] != "nonreach":
        raise ParseError(f"expected a nonreach certificate, got {obj['type']!r}")
    return ReachCertificate(tuple(_int_list(obj, "f")), tuple(_int_list(obj, "g")))


def halting_certificate_from_json(text: str) -> HaltingCertificate:
    obj = load_json(text)
    if obj["type"] != "nonterminating":
        raise ParseError(f"expected a nonterminating certificate, got {obj['type']!r}")
    return HaltingCertificate(tuple(_int_list(obj, "y")))


def witness_from_json(text: str) -> tuple[tuple[int, int], ...]:
    """Run-length firings as 0-based (vertex, count) pairs."""
    obj = load_json(text)
    if obj["type"] != "game":
        raise ParseError(f"expected a game witness, got {obj['type']!r}")
    runs = obj.get("firings")
    if not isinstance(runs, list):
        raise ParseError("field 'firings' must be a list")
    out = []
    for item in runs:
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(a, int) for a in item) or item[0] < 1 or item[1] < 0):
            raise ParseError(f"bad firing run {item!r}")
        out.append((item[0] - 1, item[1]))
    return tuple(out)


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, so identical inputs give identical bytes."""
    return json.dumps(obj, sort_keys=True)
