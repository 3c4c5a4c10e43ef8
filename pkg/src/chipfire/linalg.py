"""Exact integer and rational linear algebra over graph Laplacians.

Nothing here touches floating point. Integer lattice membership uses a
column-style Hermite reduction with unimodular transforms; the Eulerian
firing-vector solve uses a cached rational inverse of the pinned Laplacian,
whose operation count depends on the graph alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Sequence

from .errors import InvalidComponent, ValidationError
from .graph import Digraph, Vector

PINNED_VERTEX = 0


class OpCounter:
    """Tally of unit-cost arithmetic operations (add, mul, div, compare)."""

    def __init__(self) -> None:
        self.ops = 0

    def tick(self, k: int = 1) -> None:
        self.ops += k


class _NullCounter(OpCounter):
    def tick(self, k: int = 1) -> None:
        pass


_NULL = _NullCounter()


@dataclass(frozen=True)
class PeriodVector:
    p: Vector
    primitive: bool = True

    def __iter__(self):
        return iter(self.p)

    def __len__(self) -> int:
        return len(self.p)

    def __getitem__(self, i: int) -> int:
        return self.p[i]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def integer_solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """Some integer z with A z = b, or None if no integer solution exists.

    Column operations reduce A to a lower echelon form H = A U with U
    unimodular; A z = b then becomes H w = b, solved by forward substitution
    with exact divisibility checks, and z = U w.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    H = [list(row) for row in A]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def combine(c: int, j: int, s: int, t: int, u: int, w: int) -> None:
        # (col_c, col_j) <- (s*col_c + t*col_j, u*col_c + w*col_j)
        for M in (H, U):
            for row in M:
                a, bb = row[c], row[j]
                row[c] = s * a + t * bb
                row[j] = u * a + w * bb

    pivots: list[tuple[int, int]] = []
    c = 0
    for r in range(m):
        if c >= n:
            break
        for j in range(c + 1, n):
            bj = H[r][j]
            if bj == 0:
                continue
            a = H[r][c]
            g, s, t = _xgcd(a, bj)
            combine(c, j, s, t, -bj // g, a // g)
        if H[r][c] != 0:
            if H[r][c] < 0:
                for M in (H, U):
                    for row in M:
                        row[c] = -row[c]
            pivots.append((r, c))
            c += 1

    w = [0] * n
    pivot_at = dict(pivots)
    done = 0
    for r in range(m):
        acc = sum(H[r][k] * w[k] for k in range(done))
        if r in pivot_at:
            col = pivot_at[r]
            q, rem = divmod(b[r] - acc, H[r][col])
            if rem:
                return None
            w[col] = q
            done = col + 1
        elif acc != b[r]:
            return None
    return [sum(U[i][k] * w[k] for k in range(n)) for i in range(n)]


def _rational_inverse(M: list[list[int]], counter: OpCounter) -> list[list[Fraction]]:
    """Gauss-Jordan inverse. Pivot choice looks at M only."""
    n = len(M)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        counter.tick(n - col)
        if piv is None:
            raise ValidationError("pinned Laplacian is singular")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        counter.tick(1 + 2 * n)
        for r in range(n):
            if r != col:
                factor = A[r][col]
                A[r] = [a - factor * p for a, p in zip(A[r], A[col])]
                counter.tick(4 * n)
    return [row[n:] for row in A]


@lru_cache(maxsize=4096)
def _pinned_inverse(g: Digraph) -> tuple[tuple[tuple[Fraction, ...], ...], int]:
    keep = [u for u in range(g.n) if u != PINNED_VERTEX]
    L = g.laplacian.entries
    M = [[L[u][v] for v in keep] for u in keep]
    counter = OpCounter()
    inv = _rational_inverse(M, counter)
    return tuple(map(tuple, inv)), counter.ops


# -- period vectors ----------------------------------------------------------

@lru_cache(maxsize=4096)
def _primitive_period(g: Digraph, component: tuple[int, ...]) -> Vector:
    h = g.induced(component)
    if len(h.scc) != 1:
        raise InvalidComponent(
            f"vertex set {[v + 1 for v in component]} is not strongly connected")
    k = h.n
    local: list[int]
    if h.eulerian:
        local = [1] * k
    else:
        # Pin the first vertex to 1 and solve the remaining rows; the
        # kernel is one-dimensional for a strongly connected graph.
        inv, _ = _pinned_inverse(h)
        L = h.laplacian.entries
        rhs = [-L[u][PINNED_VERTEX] for u in range(1, k)]
        rest = [sum(inv[i][j] * rhs[j] for j in range(k - 1)) for i in range(k - 1)]
        vals = [Fraction(1)] + rest
        den = 1
        for q in vals:
            den = den * q.denominator // gcd(den, q.denominator)
        ints = [int(q * den) for q in vals]
        d = 0
        for a in ints:
            d = gcd(d, a)
        local = [a // d for a in ints]
        if local[0] < 0:
            local = [-a for a in local]
    full = [0] * g.n
    for v, a in zip(component, local):
        full[v] = a
    return tuple(full)


def primitive_period_vector(g: Digraph, component: Sequence[int] | None = None) -> PeriodVector:
    """Unique primitive period vector of the subgraph induced by ``component``.

    Returned as a full-length vector, zero outside the component. Defaults
    to the whole vertex set.
    """
    comp = tuple(sorted(component)) if component is not None else tuple(range(g.n))
    if not comp or len(set(comp)) != len(comp) or comp[0] < 0 or comp[-1] >= g.n:
        raise InvalidComponent(f"bad vertex set {list(component or [])}")
    return PeriodVector(_primitive_period(g, comp))


def sink_periods(g: Digraph) -> list[Vector]:
    return [primitive_period_vector(g, c).p for c in g.scc.sinks]


def period(g: Digraph) -> int:
    """per(G): primitive period entry sums, added over all components."""
    return sum(sum(primitive_period_vector(g, c).p) for c in g.scc.components)


# -- equivalence and firing vectors ------------------------------------------

def _check_lengths(g: Digraph, *vecs: Sequence[int]) -> None:
    for vec in vecs:
        if len(vec) != g.n:
            raise ValidationError(
                f"vector of length {len(vec)} on a graph with {g.n} vertices")


def linear_equivalent(g: Digraph, x: Sequence[int], y: Sequence[int]) -> Vector | None:
    """An integer z with x = y + L z, or None when x and y are not equivalent."""
    _check_lengths(g, x, y)
    z = integer_solve(g.laplacian.entries, [a - b for a, b in zip(x, y)])
    return None if z is None else tuple(z)


def is_reduced(g: Digraph, f: Sequence[int]) -> bool:
    if any(a < 0 for a in f):
        return False
    for p in sink_periods(g):
        if all(f[v] >= p[v] for v in range(g.n) if p[v]):
            return False
    return True


def reduce_firing_vector(g: Digraph, f: Sequence[int]) -> Vector:
    """Subtract the largest multiple of each sink period that f dominates."""
    _check_lengths(g, f)
    if any(a < 0 for a in f):
        raise ValidationError("firing vector has a negative entry")
    out = list(f)
    for p in sink_periods(g):
        m = min(out[v] // p[v] for v in range(g.n) if p[v])
        if m:
            for v in range(g.n):
                out[v] -= m * p[v]
    return tuple(out)


def _solve_eulerian(g: Digraph, x: Sequence[int], y: Sequence[int],
                    counter: OpCounter) -> Vector | None:
    n = g.n
    counter.tick(2 * n)
    if sum(x) != sum(y):
        return None
    inv, inv_ops = _pinned_inverse(g)
    counter.tick(inv_ops)
    keep = [u for u in range(n) if u != PINNED_VERTEX]
    diff = [y[u] - x[u] for u in keep]
    counter.tick(len(keep))
    h = [Fraction(0)] * n
    for i, u in enumerate(keep):
        h[u] = sum((inv[i][j] * diff[j] for j in range(len(keep))), Fraction(0))
    counter.tick(2 * len(keep) ** 2)
    # All solutions are h + c*1; the smallest nonnegative one is reduced.
    # The shift is computed before the integrality verdict so both outcomes
    # cost the same.
    low = min(h)
    shifted = [q - low for q in h]
    counter.tick(3 * n)
    if any(q.denominator != 1 for q in shifted):
        return None
    return tuple(int(q) for q in shifted)


def _solve_general(g: Digraph, x: Sequence[int], y: Sequence[int]) -> Vector | None:
    z = integer_solve(g.laplacian.entries, [b - a for a, b in zip(x, y)])
    if z is None:
        return None
    scc = g.scc
    for v in range(g.n):
        if not scc.is_sink[scc.component_of[v]] and z[v] < 0:
            return None
    # Shift each sink component by a multiple of its period: the result is
    # nonnegative there and no longer dominates the period.
    for p in sink_periods(g):
        m = min(z[v] // p[v] for v in range(g.n) if p[v])
        for v in range(g.n):
            z[v] -= m * p[v]
    return tuple(z)


def solve_nonneg_firing(g: Digraph, x: Sequence[int], y: Sequence[int],
                        counter: OpCounter | None = None) -> Vector | None:
    """The reduced nonnegative f with y = x + L f, or None if none exists.

    Eulerian graphs take the strongly polynomial route through the pinned
    rational inverse; ``counter`` (if given) tallies its arithmetic.
    """
    _check_lengths(g, x, y)
    if g.eulerian:
        return _solve_eulerian(g, x, y, counter or _NULL)
    return _solve_general(g, x, y)
