"""Halting: does every legal game from x eventually stop?"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import NotEulerian, StateBudgetExceeded
from .game import GameTrace, TieBreak, _check, compress
from .graph import Digraph, Vector
from .linalg import linear_equivalent
from .reach import DEFAULT_STATE_CAP, is_recurrent


class HaltingVerdict(enum.Enum):
    TERMINATING = "TERMINATING"
    NON_TERMINATING = "NON_TERMINATING"
    UNDECIDED_BUDGET = "UNDECIDED_BUDGET"


@dataclass(frozen=True)
class HaltingResult:
    """``distribution`` is the stuck final state (TERMINATING) or the first
    repeated state (NON_TERMINATING); ``firing_vector`` is that of the game
    from x up to it. ``cycle`` is the game from the repeated state back to
    itself."""

    verdict: HaltingVerdict
    distribution: Vector | None = None
    firing_vector: Vector | None = None
    cycle: GameTrace | None = None
    steps: int = 0


@dataclass(frozen=True)
class HaltingCertificate:
    y: Vector


def decide_halting(g: Digraph, x: Sequence[int], state_cap: int = DEFAULT_STATE_CAP,
                   tie_break: TieBreak = "lowest") -> HaltingResult:
    """Play one maximal legal game, watching for a repeated distribution.

    One game settles the question: either every legal game from x stops or
    none does.
    """
    _check(g, x)
    n = g.n
    deg = g.out_degree
    nbrs = g.out_neighbors
    rng = tie_break if isinstance(tie_break, random.Random) else None
    order = list(range(n - 1, -1, -1)) if tie_break == "highest" else list(range(n))
    cur = list(x)
    fv = [0] * n
    seen: dict[Vector, int] = {tuple(cur): 0}
    history: list[int] = []
    prefix_fv: list[Vector] = [tuple(fv)]
    while True:
        if rng is not None:
            cands = [v for v in range(n) if cur[v] >= deg[v]]
            v = rng.choice(cands) if cands else None
        else:
            v = next((u for u in order if cur[u] >= deg[u]), None)
        if v is None:
            return HaltingResult(HaltingVerdict.TERMINATING, tuple(cur), tuple(fv),
                                 steps=len(history))
        cur[v] -= deg[v]
        for w, a in nbrs[v]:
            cur[w] += a
        fv[v] += 1
        history.append(v)
        state = tuple(cur)
        if state in seen:
            start = seen[state]
            cycle_runs = compress(history[start:])
            cycle_fv = tuple(a - b for a, b in zip(fv, prefix_fv[start]))
            cycle = GameTrace(state, cycle_runs, state, cycle_fv)
            return HaltingResult(HaltingVerdict.NON_TERMINATING, state,
                                 prefix_fv[start], cycle, steps=len(history))
        if len(seen) >= state_cap:
            return HaltingResult(HaltingVerdict.UNDECIDED_BUDGET, steps=len(history))
        seen[state] = len(history)
        prefix_fv.append(tuple(fv))


def make_halting_certificate(g: Digraph, x: Sequence[int],
                             state_cap: int = DEFAULT_STATE_CAP) -> HaltingCertificate | None:
    """First repeated distribution of the greedy game, or None if x halts."""
    if not g.eulerian:
        raise NotEulerian("halting certificates are defined for Eulerian digraphs")
    res = decide_halting(g, x, state_cap=state_cap)
    if res.verdict is HaltingVerdict.UNDECIDED_BUDGET:
        raise StateBudgetExceeded(f"no repeat within {state_cap} states")
    if res.verdict is HaltingVerdict.TERMINATING:
        return None
    return HaltingCertificate(res.distribution)


def verify_halting_certificate(g: Digraph, x: Sequence[int],
                               cert: HaltingCertificate) -> bool:
    """True iff cert.y is recurrent and linearly equivalent to x, which
    proves x never terminates."""
    if not g.eulerian:
        raise NotEulerian("halting certificates are defined for Eulerian digraphs")
    y = tuple(cert.y)
    if len(y) != g.n or any(a < 0 for a in y) or len(x) != g.n:
        return False
    # Eulerian recurrence needs at most n firings.
    return is_recurrent(g, y, step_cap=None) and linear_equivalent(g, x, y) is not None
