"""Deciding whether one chip distribution can reach another.

Four deciders share the ``ReachResult`` type:

* ``reach_eulerian`` -- strongly polynomial, via an ascending chain of
  vertex sets, each checked once at its last occurrence;
* ``reach_recurrent_target`` -- sufficient condition for targets that are
  recurrent on every component where the firing vector is nonzero;
* ``reach_greedy_general`` -- complete for every digraph, but runs a
  bounded game whose length is the size of the firing vector;
* ``reach_oracle_bfs`` -- exhaustive search of the state graph.

``reach_decide`` chains the first three.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (InternalContradiction, NotEulerian, NotStronglyConnected,
                     StateBudgetExceeded, StepBudgetExceeded, ValidationError)
from .game import GameTrace, Runs, _check, compress, replay, run_bounded_game
from .graph import Digraph, Vector
from .linalg import OpCounter, is_reduced, primitive_period_vector, solve_nonneg_firing

DEFAULT_STEP_CAP = 1_000_000
DEFAULT_STATE_CAP = 1_000_000
# Witnesses longer than this are kept only in block form.
DEFAULT_MAX_WITNESS = 100_000


class Verdict(enum.Enum):
    YES = "YES"
    NO = "NO"
    UNDECIDED_BUDGET = "UNDECIDED_BUDGET"
    NOT_APPLICABLE = "NOT_APPLICABLE"


class Method(enum.Enum):
    NO_NONNEG_F = "no_nonneg_f"
    EULERIAN = "eulerian"
    RECURRENT = "recurrent"
    GREEDY_GENERAL = "greedy_general"
    ORACLE = "oracle"


@dataclass(frozen=True)
class ReachCertificate:
    """Witness that x cannot reach y: a reduced f with y = x + Lf and a
    stuck partial firing vector g."""

    f: Vector
    g: Vector


@dataclass(frozen=True)
class AscendingChainPlan:
    """Level sets of a firing vector f that has a zero entry.

    ``sets[i]`` is the set S_j for ``starts[i] <= j < starts[i+1]``, with
    ``starts`` 1-based and ending at t + 1.
    """

    f: Vector
    t: int
    sets: tuple[frozenset[int], ...]
    starts: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.sets)

    def level_set(self, j: int) -> frozenset[int]:
        if not 1 <= j <= self.t:
            raise IndexError(j)
        for i in range(self.k):
            if self.starts[i] <= j < self.starts[i + 1]:
                return self.sets[i]
        raise AssertionError("unreachable")

    def cumulative(self, j: int) -> Vector:
        """Firing vector of the first j - 1 level sets."""
        n = len(self.f)
        out = [0] * n
        for i in range(self.k):
            a, b = self.starts[i], self.starts[i + 1]
            if j <= a:
                break
            reps = min(j, b) - a
            for v in self.sets[i]:
                out[v] += reps
        return tuple(out)

    def distribution(self, g: Digraph, x: Sequence[int], j: int) -> Vector:
        """x_j, the distribution after firing S_1, ..., S_{j-1}."""
        delta = g.laplacian.apply(self.cumulative(j))
        return tuple(a + d for a, d in zip(x, delta))


def ascending_chain_plan(f: Sequence[int]) -> AscendingChainPlan:
    f = tuple(f)
    if any(a < 0 for a in f) or (f and min(f) != 0):
        raise ValidationError("plan needs a nonnegative vector with a zero entry")
    t = max(f, default=0)
    values = sorted({a for a in f if a > 0}, reverse=True)
    sets = tuple(frozenset(v for v, a in enumerate(f) if a >= u) for u in values)
    starts = tuple(t - u + 1 for u in values) + (t + 1,)
    return AscendingChainPlan(f, t, sets, starts)


@dataclass(frozen=True)
class ReachResult:
    verdict: Verdict
    method: Method
    witness: GameTrace | None = None
    certificate: ReachCertificate | None = None
    firing_vector: Vector | None = None
    plan: AscendingChainPlan | None = None
    # Eulerian YES: (firing order of a level set, repetitions), in play order.
    schedule: tuple[tuple[tuple[int, ...], int], ...] | None = None
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def reachable(self) -> bool | None:
        if self.verdict is Verdict.YES:
            return True
        if self.verdict is Verdict.NO:
            return False
        return None


def _vec(g: Digraph, x: Sequence[int], y: Sequence[int]) -> tuple[Vector, Vector]:
    _check(g, x)
    _check(g, y)
    return tuple(x), tuple(y)


def _expand_schedule(schedule, limit: int) -> Runs | None:
    total = sum(len(block) * reps for block, reps in schedule)
    if total > limit:
        return None
    seq: list[tuple[int, int]] = []
    for block, reps in schedule:
        if len(block) == 1:
            seq.append((block[0], reps))
        else:
            seq.extend((v, 1) for _ in range(reps) for v in block)
    return compress(seq)


def reach_eulerian(g: Digraph, x: Sequence[int], y: Sequence[int],
                   max_witness: int = DEFAULT_MAX_WITNESS) -> ReachResult:
    """Strongly polynomial reachability test for connected Eulerian digraphs.

    Every level set is checked at its last occurrence; all k <= n checks are
    run even after a failure so the amount of work never depends on chip
    magnitudes. ``stats`` records ``set_checks`` and ``steps``.
    """
    if not g.eulerian:
        raise NotEulerian("reach_eulerian needs an Eulerian digraph")
    x, y = _vec(g, x, y)
    counter = OpCounter()
    f = solve_nonneg_firing(g, x, y, counter=counter)
    if f is None:
        return ReachResult(Verdict.NO, Method.NO_NONNEG_F,
                           stats={"set_checks": 0, "steps": counter.ops})
    # The solver already returns f with a zero entry; normalise regardless.
    low = min(f)
    f = tuple(a - low for a in f)
    counter.tick(2 * g.n)
    plan = ascending_chain_plan(f)
    counter.tick(g.n * g.n)
    ok = True
    blocks = []
    for i in range(plan.k):
        xj = plan.distribution(g, x, plan.starts[i + 1] - 1)
        counter.tick(2 * g.n * g.n)
        bound = tuple(int(v in plan.sets[i]) for v in range(g.n))
        game = run_bounded_game(g, xj, bound)
        counter.tick(g.n * (len(game) + 1))
        if game.firing_vector != bound:
            ok = False
        blocks.append((tuple(game.sequence()), plan.starts[i + 1] - plan.starts[i]))
    stats = {"set_checks": plan.k, "steps": counter.ops}
    if not ok:
        return ReachResult(Verdict.NO, Method.EULERIAN, firing_vector=f,
                           plan=plan, stats=stats)
    schedule = tuple(blocks)
    runs = _expand_schedule(schedule, max_witness)
    witness = replay(g, x, runs) if runs is not None else None
    if witness is not None and witness.final != y:
        raise InternalContradiction("ascending chain witness does not end at y")
    return ReachResult(Verdict.YES, Method.EULERIAN, witness=witness,
                       firing_vector=f, plan=plan, schedule=schedule, stats=stats)


def is_recurrent(g: Digraph, x: Sequence[int],
                 step_cap: int | None = DEFAULT_STEP_CAP) -> bool:
    """True iff a non-empty legal game brings x back to itself.

    Equivalent to the game bounded by the primitive period vector firing
    that vector in full.
    """
    if len(g.scc) != 1:
        raise NotStronglyConnected("recurrence is defined here for strongly connected graphs")
    _check(g, x)
    p = primitive_period_vector(g).p
    game = run_bounded_game(g, x, p, step_cap=step_cap)
    return game.firing_vector == p


def reach_recurrent_target(g: Digraph, x: Sequence[int], y: Sequence[int],
                           step_cap: int | None = DEFAULT_STEP_CAP) -> ReachResult:
    """YES when y is recurrent on every component where f is nonzero.

    Returns NOT_APPLICABLE when some such component is not recurrent; that
    is not a NO. When the witness game exceeds ``step_cap`` the verdict
    stays YES (the theorem guarantees it) but the witness is omitted.
    """
    x, y = _vec(g, x, y)
    f = solve_nonneg_firing(g, x, y)
    if f is None:
        return ReachResult(Verdict.NO, Method.NO_NONNEG_F)
    scc = g.scc
    for comp in scc.components:
        if all(f[v] == 0 for v in comp):
            continue
        sub = g.induced(comp)
        if not is_recurrent(sub, [y[v] for v in comp], step_cap=step_cap):
            return ReachResult(Verdict.NOT_APPLICABLE, Method.RECURRENT, firing_vector=f)
    cur = x
    runs: list[tuple[int, int]] = []
    spent = 0
    try:
        for comp in scc.components:
            members = set(comp)
            fi = tuple(f[v] if v in members else 0 for v in range(g.n))
            if not any(fi):
                continue
            cap = None if step_cap is None else step_cap - spent
            game = run_bounded_game(g, cur, fi, step_cap=cap)
            if game.firing_vector != fi:
                raise InternalContradiction(
                    f"component {[v + 1 for v in comp]} stalled before firing its share of f")
            spent += len(game)
            runs.extend(game.firings)
            cur = game.final
    except StepBudgetExceeded:
        return ReachResult(Verdict.YES, Method.RECURRENT, firing_vector=f,
                           stats={"witness": "omitted: step budget"})
    witness = replay(g, x, compress(runs))
    if witness.final != y:
        raise InternalContradiction("component-wise witness does not end at y")
    return ReachResult(Verdict.YES, Method.RECURRENT, witness=witness, firing_vector=f)


def reach_greedy_general(g: Digraph, x: Sequence[int], y: Sequence[int],
                         step_cap: int | None = DEFAULT_STEP_CAP) -> ReachResult:
    """Complete decider: play the maximal game bounded by the reduced f."""
    x, y = _vec(g, x, y)
    f = solve_nonneg_firing(g, x, y)
    if f is None:
        return ReachResult(Verdict.NO, Method.NO_NONNEG_F)
    try:
        game = run_bounded_game(g, x, f, step_cap=step_cap)
    except StepBudgetExceeded:
        return ReachResult(Verdict.UNDECIDED_BUDGET, Method.GREEDY_GENERAL, firing_vector=f)
    if game.firing_vector == f:
        return ReachResult(Verdict.YES, Method.GREEDY_GENERAL, witness=game, firing_vector=f)
    cert = ReachCertificate(f, game.firing_vector)
    return ReachResult(Verdict.NO, Method.GREEDY_GENERAL, certificate=cert, firing_vector=f)


def verify_nonreach_certificate(g: Digraph, x: Sequence[int], y: Sequence[int],
                                cert: ReachCertificate) -> bool:
    """Check the three certificate conditions; True proves x cannot reach y."""
    n = g.n
    f, gv = tuple(cert.f), tuple(cert.g)
    if any(len(v) != n for v in (x, y, f, gv)):
        return False
    if any(a < 0 for a in x) or any(a < 0 for a in y):
        return False
    L = g.laplacian
    # 1. y = x + Lf, f >= 0, f reduced
    if tuple(a + d for a, d in zip(x, L.apply(f))) != tuple(y):
        return False
    if not is_reduced(g, f):
        return False
    # 2. 0 <= g <= f, g != f
    if any(not 0 <= a <= b for a, b in zip(gv, f)) or gv == f:
        return False
    # 3. every vertex still owed firings is stuck at x + Lg
    xg = [a + d for a, d in zip(x, L.apply(gv))]
    return all(gv[v] == f[v] or xg[v] < g.out_degree[v] for v in range(n))


def reachable_states(g: Digraph, x: Sequence[int],
                     max_states: int = DEFAULT_STATE_CAP) -> set[Vector]:
    """All distributions reachable from x by legal games (x included)."""
    start = tuple(x)
    seen = {start}
    queue = deque([start])
    deg = g.out_degree
    nbrs = g.out_neighbors
    while queue:
        s = queue.popleft()
        for v in range(g.n):
            if s[v] < deg[v]:
                continue
            t = list(s)
            t[v] -= deg[v]
            for w, a in nbrs[v]:
                t[w] += a
            t = tuple(t)
            if t not in seen:
                seen.add(t)
                if len(seen) > max_states:
                    raise StateBudgetExceeded(f"more than {max_states} reachable states")
                queue.append(t)
    return seen


def reach_oracle_bfs(g: Digraph, x: Sequence[int], y: Sequence[int],
                     max_states: int = DEFAULT_STATE_CAP) -> bool:
    """Breadth-first search from x; stops as soon as y is found."""
    x, y = _vec(g, x, y)
    if sum(x) != sum(y):
        return False
    if x == y:
        return True
    seen = {x}
    queue = deque([x])
    deg = g.out_degree
    nbrs = g.out_neighbors
    while queue:
        s = queue.popleft()
        for v in range(g.n):
            if s[v] < deg[v]:
                continue
            t = list(s)
            t[v] -= deg[v]
            for w, a in nbrs[v]:
                t[w] += a
            t = tuple(t)
            if t == y:
                return True
            if t not in seen:
                seen.add(t)
                if len(seen) > max_states:
                    raise StateBudgetExceeded(f"more than {max_states} reachable states")
                queue.append(t)
    return False


def reach_decide(g: Digraph, x: Sequence[int], y: Sequence[int],
                 step_cap: int | None = DEFAULT_STEP_CAP,
                 max_witness: int = DEFAULT_MAX_WITNESS) -> ReachResult:
    """Dispatch: nonnegative solve, Eulerian algorithm, recurrent-target
    theorem, then the greedy decider."""
    x, y = _vec(g, x, y)
    f = solve_nonneg_firing(g, x, y)
    if f is None:
        return ReachResult(Verdict.NO, Method.NO_NONNEG_F)
    if g.eulerian:
        res = reach_eulerian(g, x, y, max_witness=max_witness)
        if res.verdict is Verdict.NO and res.firing_vector is not None:
            greedy = reach_greedy_general(g, x, y, step_cap=step_cap)
            if greedy.verdict is Verdict.YES:
                raise InternalContradiction("Eulerian NO contradicted by a complete game")
            if greedy.certificate is not None:
                return ReachResult(Verdict.NO, Method.EULERIAN,
                                   certificate=greedy.certificate,
                                   firing_vector=res.firing_vector,
                                   plan=res.plan, stats=res.stats)
        return res
    try:
        res = reach_recurrent_target(g, x, y, step_cap=step_cap)
    except StepBudgetExceeded:
        res = None
    if res is not None and res.verdict is not Verdict.NOT_APPLICABLE:
        return res
    return reach_greedy_general(g, x, y, step_cap=step_cap)


def oracle_result(g: Digraph, x: Sequence[int], y: Sequence[int],
                  max_states: int = DEFAULT_STATE_CAP) -> ReachResult:
    """BFS oracle wrapped as a ReachResult (no witness)."""
    try:
        ok = reach_oracle_bfs(g, x, y, max_states=max_states)
    except StateBudgetExceeded:
        return ReachResult(Verdict.UNDECIDED_BUDGET, Method.ORACLE)
    return ReachResult(Verdict.YES if ok else Verdict.NO, Method.ORACLE)
