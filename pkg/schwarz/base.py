"""
Overlapping two-subdomain layouts and settings for Schwarz waveform relaxation.
"""
import math
from dataclasses import dataclass
from typing import Optional
from discretization.grid import Grid1D, build_grid
from discretization.problem import DelayProblem
from utils.logger import get_logger
from utils.exceptions import GridError, NonConforming, OverlapTooLarge, ValidationError
from utils.validation import validate_positive, validate_positive_int
from waveform.models import Norm

logger = get_logger(__name__)


@dataclass
class SchwarzConfig:
    """
    Settings of a Schwarz run; ``robin_p`` is used by the optimized variant only.
    """
    overlap_cells: int = 2
    robin_p: Optional[float] = None
    tol: float = 1e-10
    max_iters: int = 100
    norm: Norm = Norm.SUP

    def __post_init__(self):
        self.overlap_cells = validate_positive_int(self.overlap_cells, "overlap_cells", minimum=0)
        if self.robin_p is not None:
            self.robin_p = validate_positive(self.robin_p, "robin_p")
        self.tol = validate_positive(self.tol, "tol")
        self.max_iters = validate_positive_int(self.max_iters, "max_iters")
        self.norm = Norm(self.norm)


@dataclass(frozen=True)
class OverlappingPair:
    """
    Omega_1 = nodes [0, left_last] and Omega_2 = nodes [right_first, nx-1]
    of a global grid, with left_last - right_first = overlap_cells.

    ``interface_nodes`` are the global nodes whose traces are exchanged:
    Omega_1's right end (fed by Omega_2) and Omega_2's left end (fed by
    Omega_1).
    """
    grid: Grid1D
    split_node: int
    left_last: int
    right_first: int

    @classmethod
    def from_grid(cls, grid: Grid1D, split: float, overlap_cells: int) -> "OverlappingPair":
        """
        Raises:
            NonConforming: If the split is not a grid node
            OverlapTooLarge: If a subdomain would have fewer than three nodes
        """
        try:
            split_node = grid.node_index(split)
        except GridError as e:
            raise NonConforming(f"split at x={split} is not a grid node", location=split) from e
        left_last = split_node + math.ceil(overlap_cells / 2)
        right_first = split_node - overlap_cells // 2
        if left_last > grid.nx - 1 or right_first < 0 or left_last < 2 or grid.nx - 1 - right_first < 2:
            raise OverlapTooLarge(
                f"overlap of {overlap_cells} cells around x={split} leaves a subdomain without width"
            )
        return cls(grid=grid, split_node=split_node, left_last=left_last, right_first=right_first)

    @property
    def n_subdomains(self) -> int:
        return 2

    @property
    def interface_nodes(self) -> tuple:
        return (self.left_last, self.right_first)

    @property
    def overlap_cells(self) -> int:
        return self.left_last - self.right_first

    def subgrids(self) -> tuple[Grid1D, Grid1D]:
        return self.grid.subgrid(0, self.left_last), self.grid.subgrid(self.right_first, self.grid.nx - 1)


def build_overlapping_pair(
    problem: DelayProblem,
    dt: float,
    overlap_cells: int,
    split: Optional[float] = None,
    nx: Optional[int] = None,
    dx: Optional[float] = None,
) -> OverlappingPair:
    """
    Build the global grid and the overlapping pair around ``split``
    (default: the domain midpoint).
    """
    if (nx is None) == (dx is None):
        raise ValidationError("exactly one of nx or dx is required", "grid")
    x_min, x_max = problem.domain
    if dx is not None:
        cells = (x_max - x_min) / validate_positive(dx, "grid.dx")
        nx = int(round(cells)) + 1
        if abs(cells - (nx - 1)) > 1e-9 * cells:
            raise ValidationError(f"dx={dx} does not divide the domain length {x_max - x_min}", "grid.dx")
    grid = build_grid(problem.domain, nx, dt, problem.T, problem.tau)
    split = 0.5 * (x_min + x_max) if split is None else split
    pair = OverlappingPair.from_grid(grid, split, overlap_cells)
    logger.debug("overlapping_pair_built", split=split, overlap_cells=overlap_cells, nodes=pair.interface_nodes)
    return pair
