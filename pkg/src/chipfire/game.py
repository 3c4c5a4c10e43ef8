"""Legal firings, bounded games and firing-sequence surgery."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import IllegalFiring, ReplayFailure, StepBudgetExceeded, ValidationError
from .graph import Digraph, Vector, vertex_name

# "lowest" / "highest" fire the extreme-index candidate in a maximal burst;
# a Random instance picks uniformly among candidates, one firing at a time.
TieBreak = Union[str, random.Random]

Runs = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class GameTrace:
    """A legal game, with firings stored as (vertex, repeat count) runs."""

    initial: Vector
    firings: Runs
    final: Vector
    firing_vector: Vector

    def __len__(self) -> int:
        return sum(c for _, c in self.firings)

    def sequence(self) -> Iterator[int]:
        for v, c in self.firings:
            for _ in range(c):
                yield v

    def describe(self) -> str:
        return format_runs(self.firings)


def compress(seq: Iterable[int] | Iterable[tuple[int, int]]) -> Runs:
    """Run-length encode vertices (or merge adjacent (vertex, count) runs)."""
    out: list[list[int]] = []
    for item in seq:
        v, c = item if isinstance(item, tuple) else (item, 1)
        if c <= 0:
            continue
        if out and out[-1][0] == v:
            out[-1][1] += c
        else:
            out.append([v, c])
    return tuple((v, c) for v, c in out)


def format_runs(runs: Runs) -> str:
    return ", ".join(f"{vertex_name(v)} x{c}" for v, c in runs)


def _check(g: Digraph, x: Sequence[int]) -> None:
    if len(x) != g.n:
        raise ValidationError(
            f"distribution of length {len(x)} on a graph with {g.n} vertices")
    if any(a < 0 for a in x):
        raise ValidationError("chip distribution has a negative entry")


def _fire_times(g: Digraph, x: list[int], v: int, times: int) -> None:
    x[v] -= times * g.out_degree[v]
    for w, a in g.out_neighbors[v]:
        x[w] += times * a


def fire(g: Digraph, x: Sequence[int], v: int) -> Vector:
    """x + L 1_v, provided v holds at least its out-degree."""
    _check(g, x)
    if x[v] < g.out_degree[v]:
        raise IllegalFiring(
            f"{vertex_name(v)} holds {x[v]} chips, needs {g.out_degree[v]}")
    out = list(x)
    _fire_times(g, out, v, 1)
    return tuple(out)


def legal_firings(g: Digraph, x: Sequence[int]) -> frozenset[int]:
    return frozenset(v for v in range(g.n) if x[v] >= g.out_degree[v])


def replay(g: Digraph, initial: Sequence[int], firings: Runs) -> GameTrace:
    """Play ``firings`` from ``initial``, raising IllegalFiring on the first bad step."""
    _check(g, initial)
    x = list(initial)
    fv = [0] * g.n
    for v, c in firings:
        # v never feeds itself, so c consecutive firings need c*outdeg chips.
        if x[v] < c * g.out_degree[v]:
            raise IllegalFiring(f"{vertex_name(v)} cannot fire {c} time(s) in a row")
        _fire_times(g, x, v, c)
        fv[v] += c
    return GameTrace(tuple(initial), compress(firings), tuple(x), tuple(fv))


def run_bounded_game(g: Digraph, x: Sequence[int], bound: Sequence[int] | None,
                     step_cap: int | None = None,
                     tie_break: TieBreak = "lowest") -> GameTrace:
    """Play a maximal legal game in which v fires at most ``bound[v]`` times.

    ``bound=None`` means unbounded; then ``step_cap`` is mandatory because
    the game may never end. StepBudgetExceeded is raised as soon as more than
    ``step_cap`` firings are known to be needed.
    """
    _check(g, x)
    n = g.n
    if bound is None:
        if step_cap is None:
            raise ValueError("an unbounded game needs a step_cap")
        remaining = None
    else:
        if len(bound) != n or any(b < 0 for b in bound):
            raise ValidationError("bound must be a nonnegative vector over the vertices")
        remaining = list(bound)
    cur = list(x)
    fv = [0] * n
    runs: list[tuple[int, int]] = []
    steps = 0
    deg = g.out_degree
    rng = tie_break if isinstance(tie_break, random.Random) else None
    if rng is None and tie_break not in ("lowest", "highest"):
        raise ValueError(f"unknown tie-break policy {tie_break!r}")
    order = range(n - 1, -1, -1) if tie_break == "highest" else range(n)

    def open_(v: int) -> bool:
        return cur[v] >= deg[v] and (remaining is None or remaining[v] > 0)

    while True:
        if rng is not None:
            cands = [v for v in range(n) if open_(v)]
            if not cands:
                break
            v = rng.choice(cands)
            times = 1
        else:
            v = next((u for u in order if open_(u)), None)
            if v is None:
                break
            limit = remaining[v] if remaining is not None else None
            if deg[v]:
                times = cur[v] // deg[v]
                if limit is not None:
                    times = min(times, limit)
            elif limit is not None:
                times = limit
            else:
                times = step_cap + 1
        if step_cap is not None and steps + times > step_cap:
            raise StepBudgetExceeded(f"game needs more than {step_cap} firings")
        _fire_times(g, cur, v, times)
        fv[v] += times
        if remaining is not None:
            remaining[v] -= times
        steps += times
        if runs and runs[-1][0] == v:
            runs[-1] = (v, runs[-1][1] + times)
        else:
            runs.append((v, times))
    return GameTrace(tuple(x), tuple(runs), tuple(cur), tuple(fv))


def delete_period_prefix(g: Digraph, trace: GameTrace, p: Sequence[int]) -> GameTrace:
    """Drop the first p(v) occurrences of every vertex v and replay the rest.

    For a period vector p the shortened sequence is legal from the same start;
    failure to replay raises ReplayFailure.
    """
    left = list(p)
    kept = []
    for v, c in trace.firings:
        drop = min(c, left[v])
        left[v] -= drop
        kept.append((v, c - drop))
    try:
        return replay(g, trace.initial, compress(kept))
    except IllegalFiring as exc:
        raise ReplayFailure(str(exc)) from exc
