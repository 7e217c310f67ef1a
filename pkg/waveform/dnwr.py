"""
Dirichlet-Neumann waveform relaxation on two subdomains.
"""
from typing import List, Optional
from discretization.field import BoundarySpec, InterfaceTrace
from discretization.problem import DelayProblem
from discretization.solver import LEFT, RIGHT, extract_flux, solve_subdomain
from utils.exceptions import ValidationError
from waveform.interface import interface_update
from waveform.iteration import InterfaceIteration
from waveform.models import ConvergenceHistory, WrConfig
from waveform.partition import Partition
from waveform.phases import PhaseExecutor


class DnwrIteration(InterfaceIteration):
    """
    Each iteration solves a Dirichlet problem on Omega_1 with the interface
    value h, passes its interface flux to a Neumann problem on Omega_2 and
    relaxes h towards the Omega_2 interface value.
    """

    method = "dnwr"
    trace_count = 1

    def __init__(
        self,
        problem: DelayProblem,
        partition: Partition,
        cfg: WrConfig,
        executor: Optional[PhaseExecutor] = None,
    ):
        if partition.n_subdomains != 2:
            raise ValidationError(
                f"dnwr needs two subdomains, got {partition.n_subdomains}; use dnwr_multi_run", "partition.subdomains"
            )
        super().__init__(problem, partition, cfg, cfg.theta, executor)
        self.cfg = cfg
        self.left_grid, self.right_grid = partition.subgrids()

    def step(self, traces: List[InterfaceTrace]) -> List[InterfaceTrace]:
        (h,) = traces
        dirichlet_field = solve_subdomain(
            self.problem,
            self.left_grid,
            BoundarySpec.dirichlet(self.physical_left),
            BoundarySpec.dirichlet(h),
        )
        flux = extract_flux(dirichlet_field, RIGHT, problem=self.problem, scheme=self.cfg.flux)
        neumann_field = solve_subdomain(
            self.problem,
            self.right_grid,
            BoundarySpec.neumann(flux),
            BoundarySpec.dirichlet(self.physical_right),
        )
        return [interface_update(h, neumann_field.boundary_trace(LEFT), self.cfg.theta)]


def dnwr_run(
    problem: DelayProblem,
    partition: Partition,
    h0: InterfaceTrace,
    cfg: WrConfig,
    executor: Optional[PhaseExecutor] = None,
) -> ConvergenceHistory:
    """
    Run DNWR on a two-subdomain partition.

    Args:
        problem: Delay problem; in general-data mode the error is measured
            against the monolithic interface trace
        partition: Two-subdomain partition
        h0: Initial interface trace
        cfg: Relaxation and stopping settings

    Returns:
        ConvergenceHistory with one entry per iteration including k = 0
    """
    return DnwrIteration(problem, partition, cfg, executor).run([h0])
