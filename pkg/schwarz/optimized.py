"""
Optimized Schwarz waveform relaxation: Robin transmission.
"""
from typing import List, Optional, Sequence
from discretization.field import BoundarySpec, InterfaceTrace, SpaceTimeField
from discretization.problem import DelayProblem
from discretization.solver import LEFT, RIGHT, robin_trace, solve_subdomain
from schwarz.base import OverlappingPair, SchwarzConfig
from utils.exceptions import ValidationError
from waveform.iteration import InterfaceIteration
from waveform.models import ConvergenceHistory
from waveform.phases import PhaseExecutor


class OptimizedSchwarzIteration(InterfaceIteration):
    """
    Omega_1 imposes d/dx u + p u and Omega_2 imposes -d/dx u + p u at their
    interface ends, each equal to the neighbour's previous-iterate value of
    the same quantity.
    """

    method = "osw"
    trace_count = 2

    def __init__(
        self,
        problem: DelayProblem,
        pair: OverlappingPair,
        cfg: SchwarzConfig,
        executor: Optional[PhaseExecutor] = None,
    ):
        if cfg.robin_p is None:
            raise ValidationError("optimized Schwarz needs robin_p", "robin_p")
        super().__init__(problem, pair, cfg, cfg.robin_p, executor)
        self.cfg = cfg
        self.p = cfg.robin_p
        self.left_grid, self.right_grid = pair.subgrids()
        self.left_receive = pair.left_last - pair.right_first
        self.right_receive = pair.right_first

    def reference_traces(self, monolithic: SpaceTimeField) -> List[InterfaceTrace]:
        left_last, right_first = self.partition.interface_nodes
        return [
            robin_trace(monolithic, left_last, self.p, outward=RIGHT),
            robin_trace(monolithic, right_first, self.p, outward=LEFT),
        ]

    def step(self, traces: List[InterfaceTrace]) -> List[InterfaceTrace]:
        to_left, to_right = traces

        def solve_left():
            return solve_subdomain(
                self.problem,
                self.left_grid,
                BoundarySpec.dirichlet(self.physical_left),
                BoundarySpec.robin(to_left, self.p),
            )

        def solve_right():
            return solve_subdomain(
                self.problem,
                self.right_grid,
                BoundarySpec.robin(to_right, self.p),
                BoundarySpec.dirichlet(self.physical_right),
            )

        left, right = self.executor.run_phase([solve_left, solve_right])
        return [
            robin_trace(right, self.left_receive, self.p, outward=RIGHT),
            robin_trace(left, self.right_receive, self.p, outward=LEFT),
        ]


def optimized_schwarz_run(
    problem: DelayProblem,
    pair: OverlappingPair,
    cfg: SchwarzConfig,
    guesses: Sequence[InterfaceTrace],
    executor: Optional[PhaseExecutor] = None,
) -> ConvergenceHistory:
    """
    Run optimized Schwarz WR; overlap may be zero.

    Args:
        guesses: Initial Robin values for (Omega_1 right end, Omega_2 left end)
    """
    return OptimizedSchwarzIteration(problem, pair, cfg, executor).run(guesses)
