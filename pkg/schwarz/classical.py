"""
Classical Schwarz waveform relaxation: Dirichlet transmission with overlap.
"""
from typing import List, Optional, Sequence
from discretization.field import BoundarySpec, InterfaceTrace
from discretization.problem import DelayProblem
from discretization.solver import solve_subdomain
from schwarz.base import OverlappingPair, SchwarzConfig
from utils.exceptions import ValidationError
from waveform.iteration import InterfaceIteration
from waveform.models import ConvergenceHistory
from waveform.phases import PhaseExecutor


class ClassicalSchwarzIteration(InterfaceIteration):
    """
    Jacobi exchange: each subdomain takes its interface value from the
    neighbour's previous iterate.
    """

    method = "csw"
    trace_count = 2

    def __init__(
        self,
        problem: DelayProblem,
        pair: OverlappingPair,
        cfg: SchwarzConfig,
        executor: Optional[PhaseExecutor] = None,
    ):
        if pair.overlap_cells < 1:
            raise ValidationError("classical Schwarz needs an overlap of at least one cell", "overlap_cells")
        super().__init__(problem, pair, cfg, float(pair.overlap_cells), executor)
        self.cfg = cfg
        self.left_grid, self.right_grid = pair.subgrids()
        # local indices of the exchanged nodes inside the sending subdomain
        self.left_receive = pair.left_last - pair.right_first
        self.right_receive = pair.right_first

    def step(self, traces: List[InterfaceTrace]) -> List[InterfaceTrace]:
        to_left, to_right = traces

        def solve_left():
            return solve_subdomain(
                self.problem, self.left_grid, BoundarySpec.dirichlet(self.physical_left), BoundarySpec.dirichlet(to_left)
            )

        def solve_right():
            return solve_subdomain(
                self.problem, self.right_grid, BoundarySpec.dirichlet(to_right), BoundarySpec.dirichlet(self.physical_right)
            )

        left, right = self.executor.run_phase([solve_left, solve_right])
        return [right.trace(self.left_receive), left.trace(self.right_receive)]


def classical_schwarz_run(
    problem: DelayProblem,
    pair: OverlappingPair,
    cfg: SchwarzConfig,
    guesses: Sequence[InterfaceTrace],
    executor: Optional[PhaseExecutor] = None,
) -> ConvergenceHistory:
    """
    Run classical Schwarz WR.

    Args:
        guesses: Initial Dirichlet values for (Omega_1 right end, Omega_2 left end)
    """
    return ClassicalSchwarzIteration(problem, pair, cfg, executor).run(guesses)
