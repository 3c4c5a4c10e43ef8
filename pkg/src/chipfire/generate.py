"""Random and exhaustive instance generators.

Everything takes an explicit ``random.Random`` so a seed fixes the output.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .errors import ValidationError
from .graph import Digraph, _weakly_connected

_MAX_TRIES = 10_000


def random_digraph(n: int, rng: random.Random, max_mult: int = 3,
                   edges: int | None = None) -> Digraph:
    """A random weakly connected digraph.

    With ``edges`` given, that many edge copies are dropped on random
    ordered pairs (capped at ``max_mult`` per pair); otherwise each ordered
    pair gets a multiplicity in 0..max_mult, zero with probability 1/2.
    """
    if n == 1:
        return Digraph(((0,),))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for _ in range(_MAX_TRIES):
        adj = [[0] * n for _ in range(n)]
        if edges is None:
            for u, v in pairs:
                if rng.random() < 0.5:
                    adj[u][v] = rng.randint(1, max_mult)
        else:
            free = [p for p in pairs]
            for _ in range(edges):
                free = [p for p in free if adj[p[0]][p[1]] < max_mult]
                if not free:
                    break
                u, v = rng.choice(free)
                adj[u][v] += 1
        if _weakly_connected(tuple(map(tuple, adj))):
            return Digraph(tuple(map(tuple, adj)))
    raise ValidationError(f"could not generate a connected digraph on {n} vertices")


def random_strongly_connected(n: int, rng: random.Random, max_mult: int = 3) -> Digraph:
    for _ in range(_MAX_TRIES):
        g = random_digraph(n, rng, max_mult=max_mult)
        if len(g.scc) == 1:
            return g
    raise ValidationError("could not generate a strongly connected digraph")


def random_eulerian(n: int, rng: random.Random, walks: int | None = None,
                    max_len: int = 4) -> Digraph:
    """Superpose random closed walks; every walk adds equal in- and out-degree."""
    if n == 1:
        return Digraph(((0,),))
    walks = walks if walks is not None else max(1, n - 1)
    for _ in range(_MAX_TRIES):
        adj = [[0] * n for _ in range(n)]
        for _ in range(walks):
            length = rng.randint(2, max(2, max_len))
            walk = [rng.randrange(n)]
            for _ in range(length - 1):
                walk.append(rng.choice([v for v in range(n) if v != walk[-1]]))
            if walk[-1] == walk[0]:
                walk.pop()
            if len(walk) < 2:
                continue
            for u, v in zip(walk, walk[1:] + walk[:1]):
                adj[u][v] += 1
        if _weakly_connected(tuple(map(tuple, adj))):
            return Digraph(tuple(map(tuple, adj)))
    raise ValidationError(f"could not generate a connected Eulerian digraph on {n} vertices")


def random_distribution(n: int, chips: int, rng: random.Random) -> tuple[int, ...]:
    """Uniform over distributions of exactly ``chips`` chips (stars and bars)."""
    bars = sorted(rng.sample(range(chips + n - 1), n - 1))
    edges = [-1] + bars + [chips + n - 1]
    return tuple(edges[i + 1] - edges[i] - 1 for i in range(n))


def distributions(n: int, total: int) -> Iterator[tuple[int, ...]]:
    """All distributions of exactly ``total`` chips on n vertices."""
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in distributions(n - 1, total - first):
            yield (first,) + rest


def _canonical(adj: list[list[int]]) -> tuple[int, ...]:
    n = len(adj)
    return min(
        tuple(adj[p[u]][p[v]] for u in range(n) for v in range(n))
        for p in itertools.permutations(range(n)))


def _bounded_matrices(n: int, max_total: int) -> Iterator[list[list[int]]]:
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    adj = [[0] * n for _ in range(n)]

    def rec(i: int, budget: int):
        if i == len(pairs):
            yield adj
            return
        u, v = pairs[i]
        for m in range(budget + 1):
            adj[u][v] = m
            yield from rec(i + 1, budget - m)
        adj[u][v] = 0

    yield from rec(0, max_total)


def all_digraphs(n: int, max_total: int, eulerian_only: bool = False,
                 up_to_isomorphism: bool = True) -> Iterator[Digraph]:
    """Every connected digraph on n vertices with at most ``max_total`` edges."""
    seen = set()
    for adj in _bounded_matrices(n, max_total):
        if eulerian_only and any(
                sum(adj[u]) != sum(adj[w][u] for w in range(n)) for u in range(n)):
            continue
        frozen = tuple(map(tuple, adj))
        if not _weakly_connected(frozen):
            continue
        if up_to_isomorphism:
            key = _canonical(adj)
            if key in seen:
                continue
            seen.add(key)
        yield Digraph(frozen)
