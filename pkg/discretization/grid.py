"""
Space-time lattices shared by every solver in the package.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple
import numpy as np
from utils.logger import get_logger
from utils.exceptions import GridError, NonIntegerDelay, NonIntegerHorizon
from utils.validation import validate_finite, validate_positive

logger = get_logger(__name__)

# Relative tolerance for "dt divides tau / T".
DIVISIBILITY_RTOL = 1e-12


@dataclass(frozen=True)
class Grid1D:
    """
    Uniform grid on [x_min, x_max] times (0, t_end] with a delay of
    ``delay_steps`` time steps.

    ``nx`` counts every node including both boundary nodes.
    """
    x_min: float
    x_max: float
    nx: int
    t_end: float
    dt: float
    nt: int
    delay_steps: int

    def __post_init__(self):
        if self.nx < 3:
            raise GridError(f"nx must be >= 3, got {self.nx}", "nx")
        if self.nt < 1:
            raise GridError(f"nt must be >= 1, got {self.nt}", "nt")
        if self.delay_steps < 1:
            raise GridError(f"delay_steps must be >= 1, got {self.delay_steps}", "delay_steps")
        if not self.x_max > self.x_min:
            raise GridError("x_max must exceed x_min", "x_max")
        if not self.dt > 0:
            raise GridError(f"dt must be > 0, got {self.dt}", "dt")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def tau(self) -> float:
        return self.delay_steps * self.dt

    @property
    def history_rows(self) -> int:
        """Number of lattice rows covering t in [-tau, 0]."""
        return self.delay_steps + 1

    @property
    def total_rows(self) -> int:
        return self.delay_steps + 1 + self.nt

    @cached_property
    def x(self) -> np.ndarray:
        nodes = np.linspace(self.x_min, self.x_max, self.nx)
        nodes.setflags(write=False)
        return nodes

    @cached_property
    def times(self) -> np.ndarray:
        """Times of the solution levels dt, 2dt, ..., T."""
        levels = self.dt * np.arange(1, self.nt + 1)
        levels.setflags(write=False)
        return levels

    def level_time(self, level: int) -> float:
        """Time of a lattice level; level 0 is t=0, negative levels lie in the history."""
        return level * self.dt

    def node_index(self, location: float, atol: float = 1e-9) -> int:
        """
        Index of the grid node at ``location``.

        Raises:
            GridError: If no node lies within ``atol * dx`` of the location
        """
        position = (location - self.x_min) / self.dx
        index = int(round(position))
        if abs(position - index) > atol or not 0 <= index < self.nx:
            raise GridError(f"location {location} is not a grid node", "location")
        return index

    def subgrid(self, first: int, last: int) -> "Grid1D":
        """Grid over nodes first..last (inclusive) sharing this grid's time lattice."""
        if not 0 <= first < last < self.nx or last - first < 2:
            raise GridError(f"invalid node range [{first}, {last}] for nx={self.nx}", "nodes")
        return Grid1D(
            x_min=float(self.x[first]),
            x_max=float(self.x[last]),
            nx=last - first + 1,
            t_end=self.t_end,
            dt=self.dt,
            nt=self.nt,
            delay_steps=self.delay_steps,
        )


def _steps(value: float, dt: float, error_cls, field: str) -> int:
    ratio = value / dt
    steps = int(round(ratio))
    if steps < 1 or abs(ratio - steps) > DIVISIBILITY_RTOL * ratio:
        raise error_cls(f"{field}={value} is not an integer multiple of dt={dt}", field)
    return steps


def build_grid(domain: Tuple[float, float], nx: int, dt: float, T: float, tau: float) -> Grid1D:
    """
    Build a grid whose time step divides both the delay and the horizon.

    Args:
        domain: (x_min, x_max)
        nx: Node count including both boundary nodes
        dt: Time step
        T: Horizon
        tau: Delay

    Returns:
        Grid1D with delay_steps = round(tau/dt) and nt = round(T/dt)

    Raises:
        NonIntegerDelay: If tau/dt is not an integer
        NonIntegerHorizon: If T/dt is not an integer
    """
    x_min = validate_finite(domain[0], "x_min")
    x_max = validate_finite(domain[1], "x_max")
    dt = validate_positive(dt, "dt")
    T = validate_positive(T, "T")
    tau = validate_positive(tau, "tau")

    delay_steps = _steps(tau, dt, NonIntegerDelay, "tau")
    nt = _steps(T, dt, NonIntegerHorizon, "T")

    grid = Grid1D(x_min=x_min, x_max=x_max, nx=int(nx), t_end=T, dt=dt, nt=nt, delay_steps=delay_steps)
    logger.debug("grid_built", nx=grid.nx, dx=grid.dx, nt=nt, delay_steps=delay_steps)
    return grid


def build_grid_from_spacing(domain: Tuple[float, float], dx: float, dt: float, T: float, tau: float) -> Grid1D:
    """
    Build a grid from a target spacing; the domain length must be a multiple of dx.

    Raises:
        GridError: If (x_max - x_min) / dx is not an integer
    """
    dx = validate_positive(dx, "dx")
    cells = (domain[1] - domain[0]) / dx
    count = int(round(cells))
    if count < 2 or abs(cells - count) > 1e-9 * max(cells, 1.0):
        raise GridError(f"domain length {domain[1] - domain[0]} is not a multiple of dx={dx}", "dx")
    return build_grid(domain, count + 1, dt, T, tau)
