"""Directed multigraphs, strongly connected components and the Laplacian.

Vertices are 0-based indices internally. File formats and human-readable
output use 1-based names (``v1``, ``v2``, ...).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ParseError, ValidationError

Vector = tuple[int, ...]


@dataclass(frozen=True)
class Digraph:
    """A weakly connected loopless directed multigraph.

    ``adj[u][v]`` is the number of parallel edges u -> v.
    """

    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        adj = tuple(tuple(int(a) for a in row) for row in self.adj)
        object.__setattr__(self, "adj", adj)
        n = len(adj)
        if n == 0:
            raise ValidationError("graph must have at least one vertex")
        for u, row in enumerate(adj):
            if len(row) != n:
                raise ValidationError(
                    f"row {u + 1} has {len(row)} entries, expected {n}")
            if row[u] != 0:
                raise ValidationError(f"loop at vertex v{u + 1}")
            if any(a < 0 for a in row):
                raise ValidationError(f"negative multiplicity in row {u + 1}")
        if not _weakly_connected(adj):
            raise ValidationError("graph is not weakly connected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        """Build from 0-based (tail, head) pairs; repeated pairs add up."""
        adj = [[0] * n for _ in range(n)]
        for u, v in edges:
            adj[u][v] += 1
        return cls(tuple(map(tuple, adj)))

    @property
    def n(self) -> int:
        return len(self.adj)

    @cached_property
    def out_degree(self) -> Vector:
        return tuple(sum(row) for row in self.adj)

    @cached_property
    def in_degree(self) -> Vector:
        return tuple(sum(row[v] for row in self.adj) for v in range(self.n))

    @cached_property
    def out_neighbors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the (head, multiplicity) pairs with multiplicity > 0."""
        return tuple(
            tuple((v, a) for v, a in enumerate(row) if a)
            for row in self.adj
        )

    @cached_property
    def laplacian(self) -> "Laplacian":
        return laplacian(self)

    @cached_property
    def scc(self) -> "SccDecomposition":
        return scc_decompose(self)

    @cached_property
    def eulerian(self) -> bool:
        return self.out_degree == self.in_degree

    def induced(self, vertices: Sequence[int]) -> "Digraph":
        """Subgraph on ``vertices``, relabelled 0..k-1 in the given order."""
        return Digraph(tuple(
            tuple(self.adj[u][v] for v in vertices) for u in vertices))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, edges={sum(self.out_degree)})"


def _weakly_connected(adj: tuple[tuple[int, ...], ...]) -> bool:
    n = len(adj)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in range(n):
            if v not in seen and (adj[u][v] or adj[v][u]):
                seen.add(v)
                stack.append(v)
    return len(seen) == n


def parse_digraph(text: str) -> Digraph:
    """Parse the graph file format.

    Lines starting with ``#`` are comments. The first remaining line holds
    the vertex count n, followed by n rows of n multiplicities.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty graph file")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError(f"expected vertex count, got {lines[0]!r}") from None
    if n <= 0:
        raise ParseError("vertex count must be positive")
    if len(lines) - 1 != n:
        raise ValidationError(
            f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:], start=1):
        try:
            row = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise ParseError(f"non-integer entry in row {i}") from None
        rows.append(row)
    return Digraph(tuple(rows))


def format_digraph(g: Digraph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(str(g.n))
    out.extend(" ".join(map(str, row)) for row in g.adj)
    return "\n".join(out) + "\n"


# -- strongly connected components -------------------------------------------

@dataclass(frozen=True)
class SccDecomposition:
    """Components in topological order: edges only go from V_i to V_j, i <= j."""

    components: tuple[tuple[int, ...], ...]
    component_of: tuple[int, ...]
    is_sink: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.components)

    @property
    def sinks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c, s in zip(self.components, self.is_sink) if s)


def _tarjan(g: Digraph) -> list[list[int]]:
    # Iterative Tarjan; recursion depth would otherwise grow with n.
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    result = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            nbrs = g.out_neighbors[v]
            recurse = False
            while i < len(nbrs):
                w = nbrs[i][0]
                i += 1
                if index[w] == -1:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                result.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return result


def scc_decompose(g: Digraph) -> SccDecomposition:
    """Strongly connected components, topologically sorted.

    Among components whose predecessors are all placed, the one containing
    the smallest vertex index comes first, so the output is deterministic.
    """
    comps = _tarjan(g)
    comp_of = [0] * g.n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    k = len(comps)
    succ: list[set[int]] = [set() for _ in range(k)]
    indeg = [0] * k
    for u in range(g.n):
        for v, _ in g.out_neighbors[u]:
            a, b = comp_of[u], comp_of[v]
            if a != b and b not in succ[a]:
                succ[a].add(b)
                indeg[b] += 1
    heap = [(comps[c][0], c) for c in range(k) if indeg[c] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, c = heapq.heappop(heap)
        order.append(c)
        for d in succ[c]:
            indeg[d] -= 1
            if indeg[d] == 0:
                heapq.heappush(heap, (comps[d][0], d))
    rank = {c: i for i, c in enumerate(order)}
    return SccDecomposition(
        components=tuple(tuple(comps[c]) for c in order),
        component_of=tuple(rank[comp_of[v]] for v in range(g.n)),
        is_sink=tuple(not succ[c] for c in order),
    )


def is_strongly_connected(g: Digraph) -> bool:
    return len(g.scc) == 1


def is_eulerian(g: Digraph) -> bool:
    return g.eulerian


# -- Laplacian ---------------------------------------------------------------

@dataclass(frozen=True)
class Laplacian:
    """L(u, v) = -outdeg(v) on the diagonal, mult(v -> u) off it.

    Firing v adds column v to a chip distribution.
    """

    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        u, v = idx
        return self.entries[u][v]

    def column(self, v: int) -> Vector:
        return tuple(row[v] for row in self.entries)

    def apply(self, f: Sequence[int]) -> Vector:
        """The matrix-vector product L f."""
        return tuple(sum(a * b for a, b in zip(row, f) if a)
                     for row in self.entries)


def laplacian(g: Digraph) -> Laplacian:
    n = g.n
    rows = []
    for u in range(n):
        rows.append(tuple(
            -g.out_degree[v] if u == v else g.adj[v][u] for v in range(n)))
    return Laplacian(tuple(rows))


def vertex_name(v: int) -> str:
    return f"v{v + 1}"
