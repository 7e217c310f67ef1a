"""
Iteration settings and convergence records for waveform relaxation.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional
import numpy as np
from discretization.field import InterfaceTrace
from discretization.solver import FluxScheme
from utils.validation import validate_open_interval, validate_positive, validate_positive_int, warn_outside

# Relaxation ranges covered by the convergence theory.
THEORY_RANGES = {
    "dnwr": (0.0, 1.0),
    "nnwr": (0.0, 0.5),
}


class Norm(str, Enum):
    """Norms over time for interface errors."""
    SUP = "sup"
    L2 = "l2"


@dataclass
class WrConfig:
    """
    Settings of a DNWR or NNWR run.

    ``theta`` must lie in (0, 1); values outside the range covered by the
    convergence theory for ``method`` are accepted with a warning.
    """
    theta: float
    tol: float = 1e-10
    max_iters: int = 100
    norm: Norm = Norm.SUP
    flux: FluxScheme = FluxScheme.CONSERVATIVE
    method: str = "dnwr"

    def __post_init__(self):
        self.theta = validate_open_interval(self.theta, "theta", 0.0, 1.0)
        self.tol = validate_positive(self.tol, "tol")
        self.max_iters = validate_positive_int(self.max_iters, "max_iters")
        self.norm = Norm(self.norm)
        self.flux = FluxScheme(self.flux)
        low, high = THEORY_RANGES.get(self.method, (0.0, 1.0))
        warn_outside(self.theta, "theta", low, high, context=self.method)


@dataclass
class ConvergenceHistory:
    """
    Interface error per iteration of one run.

    ``errors[k]`` is the absolute interface error after iteration k
    (k = 0 is the initial guess); for several interfaces it is the maximum
    over interfaces.
    """
    method: str
    parameter: float
    errors: List[float] = field(default_factory=list)
    converged: bool = False
    traces: List[InterfaceTrace] = field(default_factory=list)
    subdomains: int = 2
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def iterations_run(self) -> int:
        return len(self.errors) - 1

    @property
    def relative_errors(self) -> np.ndarray:
        errors = np.asarray(self.errors, dtype=float)
        if errors.size == 0 or errors[0] == 0.0:
            return np.zeros_like(errors)
        return errors / errors[0]

    @property
    def final_relative_error(self) -> float:
        relative = self.relative_errors
        return float(relative[-1]) if relative.size else 0.0

    def successive_ratios(self) -> np.ndarray:
        """errors[k+1] / errors[k]; NaN where errors[k] is zero."""
        errors = np.asarray(self.errors, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = errors[1:] / errors[:-1]
        return np.where(errors[:-1] > 0, ratios, np.nan)

    def fitted_rate(self, start: int = 1, stop: Optional[int] = None) -> float:
        """
        Per-iteration contraction from a least-squares fit of log(error)
        over iterations start..stop (inclusive). NaN with fewer than two
        positive errors in range.
        """
        stop = self.iterations_run if stop is None else min(stop, self.iterations_run)
        k = np.arange(start, stop + 1)
        errors = np.asarray(self.errors, dtype=float)[start:stop + 1]
        mask = errors > 0
        if mask.sum() < 2:
            return float("nan")
        slope, _ = np.polyfit(k[mask], np.log(errors[mask]), 1)
        return float(np.exp(slope))

    def iterations_to(self, tol: float) -> Optional[int]:
        """First iteration whose relative error is at most ``tol``."""
        hits = np.nonzero(self.relative_errors <= tol)[0]
        return int(hits[0]) if hits.size else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "parameter": self.parameter,
            "subdomains": self.subdomains,
            "iterations": self.iterations_run,
            "converged": self.converged,
            "final_relative_error": self.final_relative_error,
            "errors": list(self.errors),
            "metadata": dict(self.metadata),
        }
