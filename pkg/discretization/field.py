"""
Lattice data containers: interface traces, boundary specifications and
space-time fields.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional, Union
import numpy as np
from discretization.grid import Grid1D
from utils.exceptions import LengthMismatch, ValidationError
from utils.validation import validate_finite


class InterfaceTrace:
    """
    Time series on one interface point at the levels dt, 2dt, ..., T.

    The values are stored read-only; arithmetic returns new traces.
    """

    __slots__ = ("_values",)

    def __init__(self, values: Union[Iterable[float], np.ndarray]):
        array = np.array(values, dtype=float).reshape(-1)
        if array.size == 0:
            raise ValidationError("an interface trace needs at least one value", "values")
        if not np.all(np.isfinite(array)):
            raise ValidationError("interface trace values must be finite", "values")
        array.setflags(write=False)
        self._values = array

    @classmethod
    def zeros(cls, nt: int) -> "InterfaceTrace":
        return cls(np.zeros(nt))

    @classmethod
    def from_function(cls, times: np.ndarray, function: Callable[[np.ndarray], np.ndarray]) -> "InterfaceTrace":
        """Sample ``function`` (vectorized over t) at the given times."""
        values = np.asarray(function(np.asarray(times, dtype=float)), dtype=float)
        return cls(np.broadcast_to(values, np.shape(times)))

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return self._values.size

    def __repr__(self) -> str:
        return f"InterfaceTrace(len={len(self)}, max_abs={float(np.max(np.abs(self._values))):.3e})"

    def _check(self, other: "InterfaceTrace") -> None:
        if len(other) != len(self):
            raise LengthMismatch(
                f"trace lengths differ: {len(self)} vs {len(other)}",
                expected=len(self),
                actual=len(other),
            )

    def __add__(self, other: "InterfaceTrace") -> "InterfaceTrace":
        self._check(other)
        return InterfaceTrace(self._values + other._values)

    def __sub__(self, other: "InterfaceTrace") -> "InterfaceTrace":
        self._check(other)
        return InterfaceTrace(self._values - other._values)

    def __neg__(self) -> "InterfaceTrace":
        return InterfaceTrace(-self._values)

    def scaled(self, factor: float) -> "InterfaceTrace":
        return InterfaceTrace(factor * self._values)

    def is_zero(self) -> bool:
        return not np.any(self._values)


class BoundaryKind(str, Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"
    ROBIN = "robin"


@dataclass(frozen=True)
class BoundarySpec:
    """
    Boundary condition on one side of a subdomain.

    ``data`` is the value trace for Dirichlet and the trace of d/dx u (not
    the outward normal derivative) for Neumann. For Robin it is the trace of
    the outward normal derivative plus ``robin_p`` times u.
    """
    kind: BoundaryKind
    data: InterfaceTrace
    robin_p: float = 0.0

    def __post_init__(self):
        if self.kind is BoundaryKind.ROBIN:
            validate_finite(self.robin_p, "robin_p")
        elif self.robin_p != 0.0:
            raise ValidationError("robin_p is only meaningful for Robin boundaries", "robin_p")

    @classmethod
    def dirichlet(cls, data: InterfaceTrace) -> "BoundarySpec":
        return cls(BoundaryKind.DIRICHLET, data)

    @classmethod
    def neumann(cls, data: InterfaceTrace) -> "BoundarySpec":
        return cls(BoundaryKind.NEUMANN, data)

    @classmethod
    def robin(cls, data: InterfaceTrace, p: float) -> "BoundarySpec":
        return cls(BoundaryKind.ROBIN, data, float(p))

    @property
    def is_dirichlet(self) -> bool:
        return self.kind is BoundaryKind.DIRICHLET

    def robin_form(self, side: str) -> tuple[float, np.ndarray]:
        """
        Express a Neumann or Robin condition as (p, R) with
        outward-derivative + p*u = R on the given side.
        """
        if self.kind is BoundaryKind.ROBIN:
            return self.robin_p, self.data.values
        if self.kind is BoundaryKind.NEUMANN:
            outward = -self.data.values if side == "left" else self.data.values
            return 0.0, outward
        raise ValidationError("Dirichlet boundaries have no Robin form", "kind")


@dataclass(frozen=True, eq=False)
class SpaceTimeField:
    """
    Solution on a subdomain lattice.

    ``values`` has one row per time level from -tau to T; row ``r`` holds
    level ``r - delay_steps``. ``left``/``right`` record the boundary
    conditions the field was computed with.
    """
    grid: Grid1D
    values: np.ndarray
    left: Optional[BoundarySpec] = None
    right: Optional[BoundarySpec] = None

    def __post_init__(self):
        expected = (self.grid.total_rows, self.grid.nx)
        if self.values.shape != expected:
            raise LengthMismatch(f"field shape {self.values.shape} does not match grid {expected}")
        self.values.setflags(write=False)

    def row(self, level: int) -> np.ndarray:
        """Values at lattice level ``level`` (negative levels lie in the history slab)."""
        return self.values[level + self.grid.delay_steps]

    @property
    def history(self) -> np.ndarray:
        return self.values[: self.grid.history_rows]

    @property
    def solution(self) -> np.ndarray:
        """Rows for the levels dt, ..., T."""
        return self.values[self.grid.history_rows:]

    def trace(self, index: int) -> InterfaceTrace:
        return InterfaceTrace(self.solution[:, index])

    def boundary_trace(self, side: str) -> InterfaceTrace:
        return self.trace(0 if side == "left" else -1)
