"""Chip-firing reachability and halting on directed multigraphs."""

from .errors import (BudgetExceeded, ChipFiringError, IllegalFiring, InternalContradiction,
                     InvalidComponent, NotEulerian, NotStronglyConnected, ParseError,
                     ReplayFailure, StateBudgetExceeded, StepBudgetExceeded, ValidationError)
from .game import GameTrace, delete_period_prefix, fire, legal_firings, replay, run_bounded_game
from .graph import (Digraph, Laplacian, SccDecomposition, format_digraph, is_eulerian,
                    laplacian, parse_digraph, scc_decompose)
from .halting import (HaltingCertificate, HaltingResult, HaltingVerdict, decide_halting,
                      make_halting_certificate, verify_halting_certificate)
from .linalg import (PeriodVector, linear_equivalent, period, primitive_period_vector,
                     reduce_firing_vector, solve_nonneg_firing)
from .reach import (AscendingChainPlan, Method, ReachCertificate, ReachResult, Verdict,
                    ascending_chain_plan, is_recurrent, reach_decide, reach_eulerian,
                    reach_greedy_general, reach_oracle_bfs, reach_recurrent_target,
                    verify_nonreach_certificate)

__version__ = "0.1.0"
