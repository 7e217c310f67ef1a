"""
Dirichlet-Neumann waveform relaxation on more than two subdomains.

The middle subdomain solves a pure Dirichlet problem; solutions then sweep
outward, every further subdomain taking the flux of its inner neighbour as
Neumann data and the current trace as Dirichlet data on its outer side.
"""
import math
from typing import Dict, List, Optional, Sequence
from discretization.field import BoundarySpec, InterfaceTrace, SpaceTimeField
from discretization.problem import DelayProblem
from discretization.solver import LEFT, RIGHT, extract_flux, solve_subdomain
from waveform.interface import interface_update
from waveform.iteration import InterfaceIteration
from waveform.models import ConvergenceHistory, WrConfig
from waveform.partition import Partition
from waveform.phases import PhaseExecutor


def middle_index(n_subdomains: int) -> int:
    """0-based index of the subdomain solved first (the left one of the two middles for even counts)."""
    return math.ceil(n_subdomains / 2) - 1


class DnwrMultiIteration(InterfaceIteration):

    method = "dnwr"

    def __init__(
        self,
        problem: DelayProblem,
        partition: Partition,
        cfg: WrConfig,
        executor: Optional[PhaseExecutor] = None,
    ):
        super().__init__(problem, partition, cfg, cfg.theta, executor)
        self.cfg = cfg
        self.grids = partition.subgrids()
        self.middle = middle_index(partition.n_subdomains)

    @property
    def trace_count(self) -> int:
        return self.partition.n_interfaces

    def _left_value(self, index: int, traces: Sequence[InterfaceTrace]) -> BoundarySpec:
        return BoundarySpec.dirichlet(self.physical_left if index == 0 else traces[index - 1])

    def _right_value(self, index: int, traces: Sequence[InterfaceTrace]) -> BoundarySpec:
        last = self.partition.n_subdomains - 1
        return BoundarySpec.dirichlet(self.physical_right if index == last else traces[index])

    def _flux(self, field: SpaceTimeField, side: str) -> InterfaceTrace:
        return extract_flux(field, side, problem=self.problem, scheme=self.cfg.flux)

    def step(self, traces: List[InterfaceTrace]) -> List[InterfaceTrace]:
        n, mid = self.partition.n_subdomains, self.middle
        middle = solve_subdomain(
            self.problem, self.grids[mid], self._left_value(mid, traces), self._right_value(mid, traces)
        )

        def right_sweep() -> Dict[int, SpaceTimeField]:
            fields, inner = {}, middle
            for i in range(mid + 1, n):
                inner = solve_subdomain(
                    self.problem,
                    self.grids[i],
                    BoundarySpec.neumann(self._flux(inner, RIGHT)),
                    self._right_value(i, traces),
                )
                fields[i] = inner
            return fields

        def left_sweep() -> Dict[int, SpaceTimeField]:
            fields, inner = {}, middle
            for i in range(mid - 1, -1, -1):
                inner = solve_subdomain(
                    self.problem,
                    self.grids[i],
                    self._left_value(i, traces),
                    BoundarySpec.neumann(self._flux(inner, LEFT)),
                )
                fields[i] = inner
            return fields

        right_fields, left_fields = self.executor.run_phase([right_sweep, left_sweep])

        updated = []
        for j in range(n - 1):
            # the Neumann side of interface j lies away from the middle
            if j >= mid:
                candidate = right_fields[j + 1].boundary_trace(LEFT)
            else:
                candidate = left_fields[j].boundary_trace(RIGHT)
            updated.append(interface_update(traces[j], candidate, self.cfg.theta))
        return updated


def dnwr_multi_run(
    problem: DelayProblem,
    partition: Partition,
    traces: Sequence[InterfaceTrace],
    cfg: WrConfig,
    executor: Optional[PhaseExecutor] = None,
) -> ConvergenceHistory:
    """
    Run multi-subdomain DNWR. With two subdomains this reproduces dnwr_run.

    Args:
        traces: One initial trace per interface
    """
    return DnwrMultiIteration(problem, partition, cfg, executor).run(traces)
