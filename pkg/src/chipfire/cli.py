"""``chipfire`` command line.

Exit codes: 0 yes/true, 1 no/false, 2 usage or validation error,
3 budget exhausted or undecided.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from pathlib import Path
from typing import Sequence

from . import formats
from .errors import BudgetExceeded, ChipFiringError
from .game import format_runs
from .generate import (random_digraph, random_distribution, random_eulerian,
                       random_strongly_connected)
from .graph import Digraph, format_digraph, parse_digraph, vertex_name
from .halting import (HaltingVerdict, decide_halting, make_halting_certificate,
                      verify_halting_certificate)
from .linalg import period, primitive_period_vector
from .reach import (DEFAULT_STATE_CAP, DEFAULT_STEP_CAP, ReachResult, Verdict,
                    is_recurrent, oracle_result, reach_decide, reach_eulerian,
                    reach_greedy_general, reach_oracle_bfs, reach_recurrent_target,
                    verify_nonreach_certificate)

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "CHIPFIRE_DEFAULT_BUDGET"


def _default_budget(fallback: int) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return fallback
    try:
        value = int(raw)
    except ValueError:
        raise ChipFiringError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}") from None
    if value <= 0:
        raise ChipFiringError(f"{BUDGET_ENV} must be positive")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _load_graph(path: str) -> Digraph:
    return parse_digraph(Path(path).read_text(encoding="utf-8"))


def _load_dist(arg: str, g: Digraph) -> tuple[int, ...]:
    """Inline integer list, or a path to a distribution file."""
    p = Path(arg)
    text = p.read_text(encoding="utf-8") if p.is_file() else arg
    x = formats.parse_distribution(text)
    if len(x) != g.n:
        raise ChipFiringError(f"distribution has {len(x)} entries, graph has {g.n} vertices")
    return x


def _emit(args, payload: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(formats.dumps(payload))
    else:
        for line in lines:
            print(line)


def _reach_exit(verdict: Verdict) -> int:
    return {Verdict.YES: EXIT_YES, Verdict.NO: EXIT_NO}.get(verdict, EXIT_BUDGET)


def cmd_reach(args) -> int:
    g = _load_graph(args.graph)
    x, y = _load_dist(args.from_, g), _load_dist(args.to, g)
    step_cap = args.step_cap or _default_budget(DEFAULT_STEP_CAP)
    method = args.method
    if method == "auto":
        res = reach_decide(g, x, y, step_cap=step_cap)
    elif method == "eulerian":
        res = reach_eulerian(g, x, y)
    elif method == "recurrent":
        res = reach_recurrent_target(g, x, y, step_cap=step_cap)
    elif method == "greedy":
        res = reach_greedy_general(g, x, y, step_cap=step_cap)
    else:
        res = oracle_result(g, x, y, max_states=_default_budget(DEFAULT_STATE_CAP))
    return _report_reach(args, res)


def _report_reach(args, res: ReachResult) -> int:
    payload: dict = {"verdict": res.verdict.value, "method": res.method.value}
    lines = [f"verdict: {res.verdict.value}", f"method: {res.method.value}"]
    if res.firing_vector is not None:
        payload["firing_vector"] = list(res.firing_vector)
        lines.append(f"firing vector: {formats.format_vector(res.firing_vector)}")
    if res.plan is not None:
        payload["set_checks"] = res.plan.k
        lines.append(f"level sets: {res.plan.k} distinct, t = {res.plan.t}")
    if res.witness is not None:
        w = formats.witness_to_json(res.witness)
        payload["witness"] = w
        lines.append(f"witness: {format_runs(res.witness.firings) or '(empty game)'}")
        if args.witness:
            Path(args.witness).write_text(formats.dumps(w) + "\n", encoding="utf-8")
            lines.append(f"witness written to {args.witness}")
    elif res.verdict is Verdict.YES:
        lines.append("witness: too long to expand")
    if res.certificate is not None:
        c = formats.certificate_to_json(res.certificate)
        payload["certificate"] = c
        lines.append(f"certificate: f = {formats.format_vector(res.certificate.f)}, "
                     f"g = {formats.format_vector(res.certificate.g)}")
        if args.cert:
            Path(args.cert).write_text(formats.dumps(c) + "\n", encoding="utf-8")
            payload["certificate_path"] = args.cert
            lines.append(f"certificate written to {args.cert}")
    _emit(args, payload, lines)
    return _reach_exit(res.verdict)


def cmd_verify_cert(args) -> int:
    g = _load_graph(args.graph)
    x, y = _load_dist(args.from_, g), _load_dist(args.to, g)
    cert = formats.certificate_from_json(Path(args.cert).read_text(encoding="utf-8"))
    ok = verify_nonreach_certificate(g, x, y, cert)
    _emit(args, {"valid": ok}, ["certificate valid: target unreachable" if ok
                                else "certificate rejected"])
    return EXIT_YES if ok else EXIT_NO


def cmd_recurrent(args) -> int:
    g = _load_graph(args.graph)
    x = _load_dist(args.dist, g)
    ok = is_recurrent(g, x, step_cap=args.step_cap or _default_budget(DEFAULT_STEP_CAP))
    _emit(args, {"recurrent": ok}, ["recurrent" if ok else "not recurrent"])
    return EXIT_YES if ok else EXIT_NO


def cmd_halt(args) -> int:
    g = _load_graph(args.graph)
    x = _load_dist(args.dist, g)
    cap = args.state_cap or _default_budget(DEFAULT_STATE_CAP)
    res = decide_halting(g, x, state_cap=cap)
    payload: dict = {"verdict": res.verdict.value}
    lines = [f"verdict: {res.verdict.value}"]
    if res.verdict is HaltingVerdict.TERMINATING:
        payload["final"] = list(res.distribution)
        payload["firing_vector"] = list(res.firing_vector)
        lines.append(f"final: {formats.format_vector(res.distribution)}")
        lines.append(f"firing vector: {formats.format_vector(res.firing_vector)}")
    elif res.verdict is HaltingVerdict.NON_TERMINATING:
        payload["repeated"] = list(res.distribution)
        payload["cycle"] = formats.witness_to_json(res.cycle)
        lines.append(f"repeated distribution: {formats.format_vector(res.distribution)}")
        lines.append(f"cycle: {format_runs(res.cycle.firings)}")
        if args.cert:
            if g.eulerian:
                cert = make_halting_certificate(g, x, state_cap=cap)
                c = formats.halting_certificate_to_json(cert)
                Path(args.cert).write_text(formats.dumps(c) + "\n", encoding="utf-8")
                payload["certificate"] = c
                lines.append(f"certificate written to {args.cert}")
            else:
                lines.append("no certificate: graph is not Eulerian")
    _emit(args, payload, lines)
    return {HaltingVerdict.TERMINATING: EXIT_YES,
            HaltingVerdict.NON_TERMINATING: EXIT_NO}.get(res.verdict, EXIT_BUDGET)


def cmd_verify_halt_cert(args) -> int:
    g = _load_graph(args.graph)
    x = _load_dist(args.dist, g)
    cert = formats.halting_certificate_from_json(Path(args.cert).read_text(encoding="utf-8"))
    ok = verify_halting_certificate(g, x, cert)
    _emit(args, {"valid": ok}, ["certificate valid: distribution never terminates" if ok
                                else "certificate rejected"])
    return EXIT_YES if ok else EXIT_NO


def cmd_period(args) -> int:
    g = _load_graph(args.graph)
    scc = g.scc
    comps = []
    lines = []
    for comp, sink in zip(scc.components, scc.is_sink):
        p = primitive_period_vector(g, comp).p
        comps.append({"vertices": [v + 1 for v in comp], "sink": sink,
                      "period": [p[v] for v in comp]})
        names = ",".join(vertex_name(v) for v in comp)
        lines.append(f"{{{names}}}{' (sink)' if sink else ''}: "
                     f"{formats.format_vector(p[v] for v in comp)}")
    lines.append(f"per(G) = {period(g)}")
    _emit(args, {"components": comps, "per": period(g)}, lines)
    return EXIT_YES


def cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    x, y = _load_dist(args.from_, g), _load_dist(args.to, g)
    res = oracle_result(g, x, y, max_states=args.max_states or _default_budget(DEFAULT_STATE_CAP))
    _emit(args, {"verdict": res.verdict.value, "method": "oracle"},
          [f"verdict: {res.verdict.value}", "method: oracle"])
    return _reach_exit(res.verdict)


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.kind == "dist":
        if args.chips is None:
            raise ChipFiringError("gen --kind dist needs --chips")
        text = formats.format_vector(random_distribution(args.n, args.chips, rng)) + "\n"
    else:
        if args.kind == "eulerian":
            g = random_eulerian(args.n, rng, walks=args.edges)
        elif args.kind == "strong":
            g = random_strongly_connected(args.n, rng, max_mult=args.max_mult)
        else:
            g = random_digraph(args.n, rng, max_mult=args.max_mult, edges=args.edges)
        text = format_digraph(g, comment=f"{args.kind} n={args.n} seed={args.seed}")
        if args.chips is not None:
            x = random_distribution(args.n, args.chips, rng)
            text += f"# distribution: {formats.format_vector(x)}\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_YES


def selftest(n: int, chips: int, seed: int, count: int) -> tuple[int, int, int]:
    """Compare reach_decide with the BFS oracle on random instances.

    Returns (agreements, disagreements, skipped-for-budget).
    """
    rng = random.Random(seed)
    agree = disagree = skipped = 0
    for i in range(count):
        size = rng.randint(1, n)
        if i % 2:
            g = random_eulerian(size, rng)
        else:
            g = random_digraph(size, rng)
        total = rng.randint(0, chips)
        x = random_distribution(size, total, rng)
        y = random_distribution(size, total, rng)
        res = reach_decide(g, x, y, step_cap=100_000)
        try:
            truth = reach_oracle_bfs(g, x, y, max_states=100_000)
        except BudgetExceeded:
            skipped += 1
            continue
        if res.reachable is None:
            skipped += 1
        elif res.reachable == truth:
            agree += 1
        else:
            disagree += 1
    return agree, disagree, skipped


def cmd_selftest(args) -> int:
    agree, disagree, skipped = selftest(args.n, args.chips, args.seed, args.count)
    _emit(args, {"agree": agree, "disagree": disagree, "skipped": skipped},
          [f"agree: {agree}", f"disagree: {disagree}", f"skipped: {skipped}"])
    return EXIT_YES if disagree == 0 else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chipfire",
                                     description="Chip-firing reachability and halting.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str, graph: bool = True):
        p = sub.add_parser(name, help=help_)
        if graph:
            p.add_argument("--graph", required=True, help="graph file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("reach", cmd_reach, "decide whether --from reaches --to")
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--method", default="auto",
                   choices=["auto", "eulerian", "recurrent", "greedy", "oracle"])
    p.add_argument("--witness", metavar="PATH")
    p.add_argument("--cert", metavar="PATH")
    p.add_argument("--step-cap", type=_positive)

    p = add("recurrent", cmd_recurrent, "is the distribution recurrent?")
    p.add_argument("--dist", required=True)
    p.add_argument("--step-cap", type=_positive)

    p = add("halt", cmd_halt, "does every legal game terminate?")
    p.add_argument("--dist", required=True)
    p.add_argument("--cert", metavar="PATH")
    p.add_argument("--state-cap", type=_positive)

    p = add("verify-cert", cmd_verify_cert, "check a non-reachability certificate")
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--cert", required=True)

    p = add("verify-halt-cert", cmd_verify_halt_cert, "check a non-termination certificate")
    p.add_argument("--dist", required=True)
    p.add_argument("--cert", required=True)

    add("period", cmd_period, "primitive period vectors per component")

    p = add("oracle", cmd_oracle, "breadth-first search ground truth")
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--max-states", type=_positive)

    p = add("gen", cmd_gen, "generate random instances", graph=False)
    p.add_argument("--kind", default="general", choices=["eulerian", "general", "strong", "dist"])
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--edges", type=_positive,
                   help="edge copies (general) or closed walks (eulerian)")
    p.add_argument("--max-mult", type=_positive, default=3)
    p.add_argument("--chips", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = add("selftest", cmd_selftest, "random cross-check against the oracle", graph=False)
    p.add_argument("--n", type=_positive, default=4)
    p.add_argument("--chips", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=_positive, default=300)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"chipfire: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ChipFiringError, OSError, ValueError) as exc:
        print(f"chipfire: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
