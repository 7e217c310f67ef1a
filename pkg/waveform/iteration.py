"""
Shared driver for interface iterations.

Subclasses implement one iteration (``step``) on a list of interface
traces; the driver measures errors against the reference traces, logs
progress and decides convergence.
"""
from abc import ABC, abstractmethod
from typing import List, Optional, Protocol, Sequence
from discretization.field import InterfaceTrace, SpaceTimeField
from discretization.grid import Grid1D
from discretization.problem import DelayProblem
from discretization.solver import monolithic_solve, sample_boundary
from utils.logger import get_logger
from utils.exceptions import LengthMismatch
from waveform.interface import interface_error
from waveform.models import ConvergenceHistory, Norm
from waveform.phases import SEQUENTIAL, PhaseExecutor

logger = get_logger(__name__)


class StoppingRule(Protocol):
    tol: float
    max_iters: int
    norm: Norm


class Layout(Protocol):
    """Decomposition seen by the driver: a Partition or an overlapping pair."""
    grid: Grid1D
    n_subdomains: int
    interface_nodes: tuple


class InterfaceIteration(ABC):
    """
    Base class for DNWR, NNWR and Schwarz iterations.

    Args:
        problem: Delay problem (error-equation mode or general data)
        partition: Decomposition; its global grid carries the time lattice
        rule: Object with tol, max_iters and norm
        parameter: Method parameter reported with the history (theta, p, ...)
        executor: Runs independent solves of a phase
    """

    method: str = ""

    def __init__(
        self,
        problem: DelayProblem,
        partition: Layout,
        rule: StoppingRule,
        parameter: float,
        executor: Optional[PhaseExecutor] = None,
    ):
        self.problem = problem
        self.partition = partition
        self.grid = partition.grid
        self.rule = rule
        self.parameter = parameter
        self.executor = executor or SEQUENTIAL
        self.physical_left = sample_boundary(problem.boundary_left, self.grid)
        self.physical_right = sample_boundary(problem.boundary_right, self.grid)

    @property
    @abstractmethod
    def trace_count(self) -> int:
        """Number of traces iterated on."""
        pass

    @abstractmethod
    def step(self, traces: List[InterfaceTrace]) -> List[InterfaceTrace]:
        """One iteration: new traces from the current ones."""
        pass

    def reference_traces(self, monolithic: SpaceTimeField) -> List[InterfaceTrace]:
        """Converged traces; by default the monolithic values at the interfaces."""
        return [monolithic.trace(node) for node in self.partition.interface_nodes]

    def _references(self) -> List[InterfaceTrace]:
        if self.problem.is_error_equation:
            return [InterfaceTrace.zeros(self.grid.nt) for _ in range(self.trace_count)]
        return self.reference_traces(monolithic_solve(self.problem, self.grid))

    def run(self, guesses: Sequence[InterfaceTrace]) -> ConvergenceHistory:
        """
        Iterate from ``guesses`` until the relative error reaches the
        tolerance or the iteration cap.

        Raises:
            LengthMismatch: If the guesses do not match the trace count or nt
        """
        traces = list(guesses)
        if len(traces) != self.trace_count:
            raise LengthMismatch(
                f"{self.method} needs {self.trace_count} initial traces, got {len(traces)}",
                expected=self.trace_count,
                actual=len(traces),
            )
        for trace in traces:
            if len(trace) != self.grid.nt:
                raise LengthMismatch(
                    f"initial trace has {len(trace)} values, grid has nt={self.grid.nt}",
                    expected=self.grid.nt,
                    actual=len(trace),
                )

        log = logger.bind(method=self.method, parameter=self.parameter, subdomains=self.partition.n_subdomains)
        references = self._references()
        norm, dt = self.rule.norm, self.grid.dt

        errors = [interface_error(traces, references, norm, dt)]
        converged = errors[0] == 0.0
        log.info(f"{self.method}_started", initial_error=errors[0])

        iteration = 0
        while not converged and iteration < self.rule.max_iters:
            iteration += 1
            traces = self.step(traces)
            error = interface_error(traces, references, norm, dt)
            errors.append(error)
            relative = error / errors[0]
            log.info(f"{self.method}_iteration", iteration=iteration, error=error, relative=relative)
            converged = relative <= self.rule.tol

        if converged:
            log.info(f"{self.method}_converged", iterations=iteration, final_error=errors[-1])
        else:
            log.warning(f"{self.method}_max_iters_reached", iterations=iteration, final_error=errors[-1])

        return ConvergenceHistory(
            method=self.method,
            parameter=self.parameter,
            errors=errors,
            converged=converged,
            traces=traces,
            subdomains=self.partition.n_subdomains,
        )
