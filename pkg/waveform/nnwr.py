"""
Neumann-Neumann waveform relaxation on any number of subdomains.
"""
from typing import List, Optional, Sequence
from discretization.field import BoundarySpec, InterfaceTrace, SpaceTimeField
from discretization.problem import DelayProblem
from discretization.solver import LEFT, RIGHT, extract_flux, solve_subdomain
from waveform.iteration import InterfaceIteration
from waveform.models import THEORY_RANGES, ConvergenceHistory, WrConfig
from waveform.partition import Partition
from waveform.phases import PhaseExecutor
from utils.validation import warn_outside


class NnwrIteration(InterfaceIteration):
    """
    Each iteration runs two phases of mutually independent solves:
    Dirichlet solves with the interface values g, then homogeneous
    correction solves driven by the flux jump at every interface. The
    corrections' interface values update g.
    """

    method = "nnwr"

    def __init__(
        self,
        problem: DelayProblem,
        partition: Partition,
        cfg: WrConfig,
        executor: Optional[PhaseExecutor] = None,
    ):
        super().__init__(problem, partition, cfg, cfg.theta, executor)
        if cfg.method != self.method:
            # WrConfig checked theta against another method's range
            warn_outside(cfg.theta, "theta", *THEORY_RANGES[self.method], context=self.method)
        self.cfg = cfg
        self.grids = partition.subgrids()
        self.correction_problem = problem.homogeneous()
        self.zero = InterfaceTrace.zeros(self.grid.nt)

    @property
    def trace_count(self) -> int:
        return self.partition.n_interfaces

    def _dirichlet_task(self, index: int, traces: Sequence[InterfaceTrace]):
        last = self.partition.n_subdomains - 1
        left = self.physical_left if index == 0 else traces[index - 1]
        right = self.physical_right if index == last else traces[index]

        def task() -> SpaceTimeField:
            return solve_subdomain(self.problem, self.grids[index], BoundarySpec.dirichlet(left), BoundarySpec.dirichlet(right))

        return task

    def _correction_task(self, index: int, jumps: Sequence[InterfaceTrace]):
        last = self.partition.n_subdomains - 1
        left = BoundarySpec.dirichlet(self.zero) if index == 0 else BoundarySpec.neumann(-jumps[index - 1])
        right = BoundarySpec.dirichlet(self.zero) if index == last else BoundarySpec.neumann(jumps[index])

        def task() -> SpaceTimeField:
            return solve_subdomain(self.correction_problem, self.grids[index], left, right)

        return task

    def step(self, traces: List[InterfaceTrace]) -> List[InterfaceTrace]:
        n = self.partition.n_subdomains
        scheme = self.cfg.flux

        fields = self.executor.run_phase([self._dirichlet_task(i, traces) for i in range(n)])
        jumps = [
            extract_flux(fields[j], RIGHT, problem=self.problem, scheme=scheme)
            - extract_flux(fields[j + 1], LEFT, problem=self.problem, scheme=scheme)
            for j in range(n - 1)
        ]

        corrections = self.executor.run_phase([self._correction_task(i, jumps) for i in range(n)])
        theta = self.cfg.theta
        return [
            traces[j] - (corrections[j].boundary_trace(RIGHT) + corrections[j + 1].boundary_trace(LEFT)).scaled(theta)
            for j in range(n - 1)
        ]


def nnwr_run(
    problem: DelayProblem,
    partition: Partition,
    g0: Sequence[InterfaceTrace],
    cfg: WrConfig,
    executor: Optional[PhaseExecutor] = None,
) -> ConvergenceHistory:
    """
    Run NNWR with one initial trace per interface.

    Returns:
        ConvergenceHistory whose errors are the maximum over interfaces
    """
    if isinstance(g0, InterfaceTrace):
        g0 = [g0]
    return NnwrIteration(problem, partition, cfg, executor).run(g0)
