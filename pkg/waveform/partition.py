"""
Non-overlapping decompositions of the spatial interval.
"""
from dataclasses import dataclass
from typing import Optional, Sequence, Union
import numpy as np
from discretization.grid import Grid1D, build_grid
from discretization.problem import DelayProblem
from utils.logger import get_logger
from utils.exceptions import GridError, NonConforming, ValidationError
from utils.validation import validate_increasing, validate_positive, validate_positive_int

logger = get_logger(__name__)

EQUAL = "equal"


@dataclass(frozen=True, eq=False)
class Partition:
    """
    Subdomains Omega_i = (x_i, x_{i+1}) of a global grid.

    ``node_indices[i]`` is the global node index of ``boundaries[i]``;
    interface j sits between subdomain j and subdomain j+1.
    """
    grid: Grid1D
    boundaries: np.ndarray
    node_indices: tuple

    @classmethod
    def from_grid(cls, grid: Grid1D, boundaries: Union[str, Sequence[float]] = EQUAL, n_subdomains: int = 2) -> "Partition":
        """
        Raises:
            ValidationError: If the boundaries do not span the grid or a subdomain is too narrow
            NonConforming: If an interface does not fall on a grid node
        """
        if isinstance(boundaries, str):
            if boundaries != EQUAL:
                raise ValidationError(f"boundaries must be '{EQUAL}' or a list, got '{boundaries}'", "partition.boundaries")
            n_subdomains = validate_positive_int(n_subdomains, "partition.subdomains", minimum=2)
            boundaries = np.linspace(grid.x_min, grid.x_max, n_subdomains + 1)
        boundaries = validate_increasing(boundaries, "partition.boundaries")

        span = grid.x_max - grid.x_min
        if abs(boundaries[0] - grid.x_min) > 1e-9 * span or abs(boundaries[-1] - grid.x_max) > 1e-9 * span:
            raise ValidationError("partition boundaries must start at x_min and end at x_max", "partition.boundaries")

        indices = [0]
        for location in boundaries[1:-1]:
            try:
                indices.append(grid.node_index(float(location)))
            except GridError as e:
                raise NonConforming(f"interface at x={location} is not a grid node", location=float(location)) from e
        indices.append(grid.nx - 1)

        for first, last in zip(indices[:-1], indices[1:]):
            if last - first < 2:
                raise ValidationError(
                    f"subdomain [{grid.x[first]}, {grid.x[last]}] needs at least three nodes", "partition.boundaries"
                )

        return cls(grid=grid, boundaries=grid.x[indices].copy(), node_indices=tuple(indices))

    @property
    def n_subdomains(self) -> int:
        return len(self.node_indices) - 1

    @property
    def n_interfaces(self) -> int:
        return self.n_subdomains - 1

    @property
    def interface_nodes(self) -> tuple:
        """Global node indices of the interfaces."""
        return self.node_indices[1:-1]

    def subgrid(self, index: int) -> Grid1D:
        return self.grid.subgrid(self.node_indices[index], self.node_indices[index + 1])

    def subgrids(self) -> list[Grid1D]:
        return [self.subgrid(i) for i in range(self.n_subdomains)]


def build_partition(
    problem: DelayProblem,
    dt: float,
    boundaries: Union[str, Sequence[float]] = EQUAL,
    n_subdomains: int = 2,
    nx: Optional[int] = None,
    dx: Optional[float] = None,
    points_per_subdomain: Optional[int] = None,
) -> Partition:
    """
    Build the global grid for a problem and partition it.

    Exactly one of ``nx``, ``dx`` or ``points_per_subdomain`` sets the
    spatial resolution. With ``points_per_subdomain`` every subdomain of an
    equal split holds that many nodes, its end nodes included.

    Raises:
        ValidationError: If the resolution is not given exactly once
        NonConforming: If an interface misses the grid
    """
    given = [value is not None for value in (nx, dx, points_per_subdomain)]
    if sum(given) != 1:
        raise ValidationError("exactly one of nx, dx or points_per_subdomain is required", "grid")

    x_min, x_max = problem.domain
    if isinstance(boundaries, str):
        n = validate_positive_int(n_subdomains, "partition.subdomains", minimum=2)
    else:
        n = len(boundaries) - 1

    if points_per_subdomain is not None:
        points = validate_positive_int(points_per_subdomain, "partition.points_per_subdomain", minimum=3)
        if not isinstance(boundaries, str):
            raise ValidationError("points_per_subdomain requires equal boundaries", "partition.points_per_subdomain")
        nx = n * (points - 1) + 1
    elif dx is not None:
        cells = (x_max - x_min) / validate_positive(dx, "grid.dx")
        nx = int(round(cells)) + 1
        if abs(cells - (nx - 1)) > 1e-9 * cells:
            raise ValidationError(f"dx={dx} does not divide the domain length {x_max - x_min}", "grid.dx")

    grid = build_grid(problem.domain, nx, dt, problem.T, problem.tau)
    partition = Partition.from_grid(grid, boundaries, n)
    logger.debug(
        "partition_built",
        subdomains=partition.n_subdomains,
        boundaries=[float(b) for b in partition.boundaries],
        nx=grid.nx,
    )
    return partition
