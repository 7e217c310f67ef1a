"""
Delay PDE families and the problem definition handed to the solvers.

Every family is discretized on the lattice as

    alpha * u^L - kappa * D_xx u^L = explicit_rhs(u^{L-1}, u^{L-2}, u^{L-m}, ...)

so the solver only needs (alpha, kappa) for the implicit part and the
family-specific explicit right-hand side.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Optional, Tuple, Type
import numpy as np
from utils.logger import get_logger
from utils.exceptions import ValidationError
from utils.validation import validate_finite, validate_positive

logger = get_logger(__name__)

SpaceTimeFunction = Callable[[np.ndarray, float], Any]
TimeFunction = Callable[[float], float]


def zero_history(x: np.ndarray, t: float) -> np.ndarray:
    return np.zeros_like(x, dtype=float)


def zero_forcing(x: np.ndarray, t: float) -> np.ndarray:
    return np.zeros_like(x, dtype=float)


def zero_boundary(t: float) -> float:
    return 0.0


class DelayFamily(ABC):
    """
    Interface for a PDE family with a constant delay.
    """

    name: str = ""

    @abstractmethod
    def implicit_coefficients(self, dt: float) -> Tuple[float, float]:
        """
        Return (alpha, kappa) of the implicit operator alpha*u - kappa*D_xx u.
        """
        pass

    @abstractmethod
    def explicit_rhs(
        self,
        prev: np.ndarray,
        prev2: np.ndarray,
        delayed: np.ndarray,
        delayed_d2: Optional[np.ndarray],
        forcing: np.ndarray,
        dt: float,
    ) -> np.ndarray:
        """
        Right-hand side of one time level.

        Args:
            prev: u at level L-1
            prev2: u at level L-2 (only used by second-order-in-time families)
            delayed: u at level L-m
            delayed_d2: second difference of the delayed level (None unless
                needs_delayed_d2 is True)
            forcing: f at level L
            dt: Time step
        """
        pass

    @property
    def needs_delayed_d2(self) -> bool:
        """True if the delayed level enters through its second difference."""
        return False

    @abstractmethod
    def coefficients(self) -> Dict[str, float]:
        """Coefficients keyed by their spec-file names."""
        pass


@dataclass(frozen=True)
class ParabolicFamily(DelayFamily):
    """u_t = nu^2 u_xx - a1 u - a2 u(t - tau) + f."""
    a1: float
    a2: float
    nu: float = 1.0
    name: str = field(default="parabolic", init=False)

    def __post_init__(self):
        validate_finite(self.a1, "a1")
        if validate_finite(self.a2, "a2") == 0.0:
            raise ValidationError("a2 must be non-zero for the parabolic delay family", "a2")
        validate_positive(self.nu, "nu")

    def implicit_coefficients(self, dt: float) -> Tuple[float, float]:
        return 1.0 / dt + self.a1, self.nu ** 2

    def explicit_rhs(self, prev, prev2, delayed, delayed_d2, forcing, dt):
        return prev / dt - self.a2 * delayed + forcing

    def coefficients(self) -> Dict[str, float]:
        return {"a1": self.a1, "a2": self.a2, "nu": self.nu}


@dataclass(frozen=True)
class WaveFamily(DelayFamily):
    """u_tt = c^2 u_xx + lambda u(t - tau) + f, implicit in the spatial term."""
    c: float
    lam: float
    name: str = field(default="wave", init=False)

    def __post_init__(self):
        validate_positive(self.c, "c")
        validate_finite(self.lam, "lambda")

    def implicit_coefficients(self, dt: float) -> Tuple[float, float]:
        return 1.0 / dt ** 2, self.c ** 2

    def explicit_rhs(self, prev, prev2, delayed, delayed_d2, forcing, dt):
        return (2.0 * prev - prev2) / dt ** 2 + self.lam * delayed + forcing

    def coefficients(self) -> Dict[str, float]:
        return {"c": self.c, "lambda": self.lam}


@dataclass(frozen=True)
class NeutralFamily(DelayFamily):
    """u_t = mu^2 u_xx + mu^2 c^2 u_xx(t - tau) + r u + d u(t - tau) + f."""
    mu: float
    c: float
    r: float
    d: float
    name: str = field(default="neutral", init=False)

    def __post_init__(self):
        validate_positive(self.mu, "mu")
        validate_finite(self.c, "c")
        validate_finite(self.r, "r")
        validate_finite(self.d, "d")

    @property
    def needs_delayed_d2(self) -> bool:
        return True

    def implicit_coefficients(self, dt: float) -> Tuple[float, float]:
        alpha = 1.0 / dt - self.r
        if alpha <= 0:
            raise ValidationError(f"dt={dt} too large for r={self.r}: 1/dt - r must be positive", "dt")
        return alpha, self.mu ** 2

    def explicit_rhs(self, prev, prev2, delayed, delayed_d2, forcing, dt):
        return prev / dt + (self.mu * self.c) ** 2 * delayed_d2 + self.d * delayed + forcing

    def coefficients(self) -> Dict[str, float]:
        return {"mu": self.mu, "c": self.c, "r": self.r, "d": self.d}


class FamilyFactory:
    """
    Factory for creating PDE families from a name and a coefficient mapping.
    """
    _families: Dict[str, Type[DelayFamily]] = {}
    # spec-file keyword -> constructor argument
    _aliases: Dict[str, str] = {"lambda": "lam"}

    @classmethod
    def register(cls, name: str, family_class: Type[DelayFamily]):
        """
        Register a family class.

        Args:
            name: Family identifier used in spec files
            family_class: DelayFamily subclass
        """
        cls._families[name] = family_class
        logger.debug("family_registered", family=name)

    @classmethod
    def create(cls, name: str, coefficients: Dict[str, Any]) -> DelayFamily:
        """
        Create a family instance.

        Raises:
            ValidationError: If the family is unknown or coefficients are invalid
        """
        family_class = cls._families.get(str(name).lower())
        if family_class is None:
            raise ValidationError(
                f"Unknown family '{name}'. Supported families: {cls.list_supported()}",
                "problem.family",
            )
        kwargs = {cls._aliases.get(key, key): value for key, value in coefficients.items()}
        try:
            return family_class(**kwargs)
        except TypeError as e:
            raise ValidationError(f"Invalid coefficients for family '{name}': {e}", "problem.coefficients") from e

    @classmethod
    def list_supported(cls) -> list[str]:
        return list(cls._families.keys())


FamilyFactory.register("parabolic", ParabolicFamily)
FamilyFactory.register("wave", WaveFamily)
FamilyFactory.register("neutral", NeutralFamily)


@dataclass(frozen=True)
class DelayProblem:
    """
    A delay PDE on an interval: family, delay, horizon and data.

    ``history`` and ``forcing`` take (x array, t) and return an array (or a
    scalar broadcast over x); the boundary functions take t.
    """
    family: DelayFamily
    tau: float
    domain: Tuple[float, float]
    T: float
    history: SpaceTimeFunction = zero_history
    forcing: SpaceTimeFunction = zero_forcing
    boundary_left: TimeFunction = zero_boundary
    boundary_right: TimeFunction = zero_boundary

    def __post_init__(self):
        validate_positive(self.tau, "tau")
        validate_positive(self.T, "T")
        x_min = validate_finite(self.domain[0], "domain[0]")
        x_max = validate_finite(self.domain[1], "domain[1]")
        if not x_max > x_min:
            raise ValidationError("domain must satisfy x_min < x_max", "domain")
        object.__setattr__(self, "domain", (x_min, x_max))

    @classmethod
    def error_equation(cls, family: DelayFamily, tau: float, domain: Tuple[float, float], T: float) -> "DelayProblem":
        """Problem with zero history, forcing and boundary data."""
        return cls(family=family, tau=tau, domain=domain, T=T)

    @property
    def is_error_equation(self) -> bool:
        return (
            self.history is zero_history
            and self.forcing is zero_forcing
            and self.boundary_left is zero_boundary
            and self.boundary_right is zero_boundary
        )

    def homogeneous(self) -> "DelayProblem":
        """The same operator with all data set to zero."""
        return replace(
            self,
            history=zero_history,
            forcing=zero_forcing,
            boundary_left=zero_boundary,
            boundary_right=zero_boundary,
        )

    def sample_history(self, x: np.ndarray, t: float) -> np.ndarray:
        return _sample(self.history, x, t)

    def sample_forcing(self, x: np.ndarray, t: float) -> np.ndarray:
        return _sample(self.forcing, x, t)


def _sample(function: SpaceTimeFunction, x: np.ndarray, t: float) -> np.ndarray:
    values = np.asarray(function(x, t), dtype=float)
    return np.array(np.broadcast_to(values, x.shape), dtype=float)
