import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chipfire import (Digraph, HaltingCertificate, HaltingVerdict, NotEulerian, StateBudgetExceeded,
                      decide_halting, make_halting_certificate, replay,
                      verify_halting_certificate)
from chipfire.generate import random_digraph, random_distribution, random_eulerian
from chipfire.reach import reachable_states
from conftest import SIX_X


def test_zero_distribution_terminates(six, triangle):
    for g in (six, triangle):
        r = decide_halting(g, (0,) * g.n)
        assert r.verdict is HaltingVerdict.TERMINATING
        assert r.steps == 0


def test_triangle_cycles(triangle):
    r = decide_halting(triangle, (1, 0, 0))
    assert r.verdict is HaltingVerdict.NON_TERMINATING
    assert r.distribution == (1, 0, 0)
    assert list(r.cycle.sequence()) == [0, 1, 2]
    assert r.firing_vector == (0, 0, 0)


def test_six_sink_cycles(six):
    r = decide_halting(six, SIX_X)
    assert r.verdict is HaltingVerdict.NON_TERMINATING
    assert r.distribution == SIX_X
    assert list(r.cycle.sequence()) == [4, 5]


def test_terminating_evidence():
    g = Digraph(((0, 0, 1), (0, 0, 1), (1, 1, 0)))
    r = decide_halting(g, (1, 0, 0))
    assert r.verdict is HaltingVerdict.TERMINATING
    assert r.distribution == (0, 0, 1) and r.firing_vector == (1, 0, 0)


def test_state_cap():
    g = random_eulerian(4, random.Random(3), walks=4)
    r = decide_halting(g, (20, 0, 0, 0), state_cap=1)
    assert r.verdict is HaltingVerdict.UNDECIDED_BUDGET


def test_certificates(triangle, doubled):
    assert make_halting_certificate(triangle, (1, 0, 0)) == HaltingCertificate((1, 0, 0))
    assert make_halting_certificate(doubled, (1, 1)) is None
    assert make_halting_certificate(doubled, (2, 2)) == HaltingCertificate((2, 2))


def test_certificate_needs_eulerian(six):
    with pytest.raises(NotEulerian):
        make_halting_certificate(six, SIX_X)
    with pytest.raises(NotEulerian):
        verify_halting_certificate(six, SIX_X, HaltingCertificate(SIX_X))


def test_certificate_budget():
    g = random_eulerian(4, random.Random(3), walks=4)
    with pytest.raises(StateBudgetExceeded):
        make_halting_certificate(g, (20, 0, 0, 0), state_cap=1)


def test_verify_examples(triangle, doubled):
    assert verify_halting_certificate(triangle, (1, 0, 0), HaltingCertificate((1, 0, 0)))
    assert verify_halting_certificate(triangle, (1, 0, 0), HaltingCertificate((0, 1, 0)))
    assert not verify_halting_certificate(doubled, (1, 1), HaltingCertificate((1, 1)))
    # recurrent but not equivalent
    assert not verify_halting_certificate(triangle, (1, 0, 0), HaltingCertificate((2, 0, 0)))


def _has_stuck_state(g, x):
    return any(all(s[v] < g.out_degree[v] for v in range(g.n))
               for s in reachable_states(g, x))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**6))
def test_halting_against_state_graph(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    g = random_eulerian(n, rng) if seed % 2 else random_digraph(n, rng, max_mult=2)
    x = random_distribution(n, rng.randint(0, 6), rng)
    verdicts = {decide_halting(g, x, tie_break=t).verdict
                for t in ("lowest", "highest", random.Random(seed))}
    assert len(verdicts) == 1
    verdict = verdicts.pop()
    # every game from x stops or none does, so "some reachable stuck state"
    # decides termination
    assert (verdict is HaltingVerdict.TERMINATING) == _has_stuck_state(g, x)
    r = decide_halting(g, x)
    if verdict is HaltingVerdict.NON_TERMINATING:
        assert replay(g, r.distribution, r.cycle.firings).final == r.distribution
        assert len(r.cycle) > 0
        if g.eulerian:
            cert = make_halting_certificate(g, x)
            assert verify_halting_certificate(g, x, cert)
    elif g.eulerian:
        assert make_halting_certificate(g, x) is None
