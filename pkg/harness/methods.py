"""
Method runners: build the decomposition a method needs and run it.
"""
from abc import ABC, abstractmethod
from typing import Callable, Dict, List, Optional, Sequence, Type
import numpy as np
from discretization.field import InterfaceTrace
from discretization.problem import DelayProblem
from harness.spec import ExperimentSpec, MethodSpec
from schwarz.base import SchwarzConfig, build_overlapping_pair
from schwarz.classical import classical_schwarz_run
from schwarz.optimized import optimized_schwarz_run
from utils.logger import get_logger
from utils.exceptions import ConfigurationError
from waveform.dnwr import dnwr_run
from waveform.iteration import Layout
from waveform.models import ConvergenceHistory, WrConfig
from waveform.multi import dnwr_multi_run
from waveform.nnwr import nnwr_run
from waveform.partition import build_partition
from waveform.phases import PhaseExecutor

logger = get_logger(__name__)

GUESS_FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "t^2": lambda t: t ** 2,
    "zero": np.zeros_like,
    "ones": np.ones_like,
}


def initial_guesses(layout: Layout, count: int, guess: str) -> List[InterfaceTrace]:
    """``count`` copies of the named initial guess sampled at the solution levels."""
    trace = InterfaceTrace.from_function(layout.grid.times, GUESS_FUNCTIONS[guess])
    return [trace] * count


class MethodRunner(ABC):
    """Interface for method runners."""

    name: str = ""

    @abstractmethod
    def layout(self, spec: ExperimentSpec, problem: DelayProblem, method: MethodSpec, parameter: float, subdomains: int) -> Layout:
        """Grid and decomposition for one run."""
        pass

    @abstractmethod
    def run(
        self,
        problem: DelayProblem,
        layout: Layout,
        guesses: Sequence[InterfaceTrace],
        method: MethodSpec,
        parameter: float,
        executor: Optional[PhaseExecutor] = None,
    ) -> ConvergenceHistory:
        pass

    def trace_count(self, layout: Layout) -> int:
        return len(layout.interface_nodes)


class WaveformRunner(MethodRunner):

    def layout(self, spec, problem, method, parameter, subdomains):
        return build_partition(
            problem,
            spec.dt,
            boundaries=spec.boundaries,
            n_subdomains=subdomains,
            nx=spec.nx,
            dx=spec.dx,
            points_per_subdomain=spec.points_per_subdomain,
        )

    def config(self, method: MethodSpec, parameter: float) -> WrConfig:
        return WrConfig(
            theta=parameter,
            tol=method.tol,
            max_iters=method.max_iters,
            norm=method.norm,
            flux=method.flux,
            method=self.name,
        )


class DnwrRunner(WaveformRunner):
    name = "dnwr"

    def run(self, problem, layout, guesses, method, parameter, executor=None):
        cfg = self.config(method, parameter)
        if layout.n_subdomains == 2:
            return dnwr_run(problem, layout, guesses[0], cfg, executor)
        return dnwr_multi_run(problem, layout, guesses, cfg, executor)


class NnwrRunner(WaveformRunner):
    name = "nnwr"

    def run(self, problem, layout, guesses, method, parameter, executor=None):
        return nnwr_run(problem, layout, list(guesses), self.config(method, parameter), executor)


class SchwarzRunner(MethodRunner):

    def overlap(self, method: MethodSpec, parameter: float) -> int:
        return method.overlap_cells

    def layout(self, spec, problem, method, parameter, subdomains):
        nx = spec.nx
        if spec.points_per_subdomain is not None:
            nx = 2 * (spec.points_per_subdomain - 1) + 1
        return build_overlapping_pair(
            problem, spec.dt, self.overlap(method, parameter), split=spec.split, nx=nx, dx=spec.dx
        )


class ClassicalSchwarzRunner(SchwarzRunner):
    name = "csw"

    def overlap(self, method, parameter):
        return int(parameter)

    def run(self, problem, layout, guesses, method, parameter, executor=None):
        cfg = SchwarzConfig(
            overlap_cells=int(parameter), tol=method.tol, max_iters=method.max_iters, norm=method.norm
        )
        return classical_schwarz_run(problem, layout, cfg, guesses, executor)


class OptimizedSchwarzRunner(SchwarzRunner):
    name = "osw"

    def run(self, problem, layout, guesses, method, parameter, executor=None):
        cfg = SchwarzConfig(
            overlap_cells=method.overlap_cells,
            robin_p=parameter,
            tol=method.tol,
            max_iters=method.max_iters,
            norm=method.norm,
        )
        return optimized_schwarz_run(problem, layout, cfg, guesses, executor)


class MethodFactory:
    """
    Registry of method runners keyed by method name.
    """

    _runners: Dict[str, Type[MethodRunner]] = {}

    @classmethod
    def register(cls, name: str, runner_class: Type[MethodRunner]):
        """
        Register a runner class.

        Args:
            name: Method name used in spec files
            runner_class: MethodRunner subclass
        """
        if name in cls._runners:
            logger.warning("method_runner_already_registered", method=name)
        cls._runners[name] = runner_class

    @classmethod
    def create(cls, name: str) -> MethodRunner:
        """
        Create a runner for a method.

        Raises:
            ConfigurationError: If the method is not registered
        """
        runner_class = cls._runners.get(name)
        if runner_class is None:
            available = cls.list_supported()
            logger.error("unknown_method", method=name, available_methods=available)
            raise ConfigurationError(f"Unknown method '{name}'. Available methods: {available}")
        return runner_class()

    @classmethod
    def list_supported(cls) -> list[str]:
        return sorted(cls._runners)


MethodFactory.register("dnwr", DnwrRunner)
MethodFactory.register("nnwr", NnwrRunner)
MethodFactory.register("csw", ClassicalSchwarzRunner)
MethodFactory.register("osw", OptimizedSchwarzRunner)
