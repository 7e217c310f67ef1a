"""
Laplace-domain contraction factors of DNWR and NNWR on two subdomains of
widths a (Dirichlet side for DNWR) and b.

With A = a*k(s) and B = b*k(s) for the family's wave number k(s):

    DNWR:  1 - theta - theta * tanh(B) / tanh(A)
    NNWR:  1 - theta * (2 + tanh(A)/tanh(B) + tanh(B)/tanh(A))

Parabolic problems on the unbounded line reduce to the constants
1 - 2 theta and 1 - 4 theta.
"""
from dataclasses import dataclass, replace
from typing import Iterable
import cmath
import numpy as np
from discretization.problem import DelayFamily, NeutralFamily, ParabolicFamily, WaveFamily
from utils.exceptions import BranchFailure, ValidationError
from utils.validation import validate_choice, validate_finite, validate_positive

METHODS = ("dnwr", "nnwr")

# |Re z| beyond which tanh(z) equals sign(Re z) in double precision.
SATURATION = 30.0


@dataclass(frozen=True)
class SymbolQuery:
    """
    One evaluation point of a contraction symbol.

    ``bounded`` selects the finite-interval formula for the parabolic
    family; the wave and neutral symbols always use the widths.
    """
    method: str
    family: DelayFamily
    a: float
    b: float
    theta: float
    s: complex
    tau: float
    bounded: bool = False

    def __post_init__(self):
        validate_choice(self.method, "method", METHODS)
        validate_positive(self.a, "a")
        validate_positive(self.b, "b")
        validate_finite(self.theta, "theta")
        validate_positive(self.tau, "tau")
        object.__setattr__(self, "s", complex(self.s))


def _tanh(z: complex) -> complex:
    if abs(z.real) > SATURATION:
        return complex(np.sign(z.real))
    return complex(np.tanh(z))


def wave_number(family: DelayFamily, s: complex, tau: float) -> complex:
    """k(s) such that the subdomain solutions behave like exp(+-k x)."""
    delay = cmath.exp(-tau * s)
    if isinstance(family, ParabolicFamily):
        return cmath.sqrt(s + family.a1 + family.a2 * delay) / family.nu
    if isinstance(family, WaveFamily):
        return cmath.sqrt(s * s - family.lam * delay) / family.c
    if isinstance(family, NeutralFamily):
        return cmath.sqrt((s - family.r - family.d * delay) / (1.0 + family.c ** 2 * delay)) / family.mu
    raise ValidationError(f"no symbol for family '{family.name}'", "family")


def _ratio(q: SymbolQuery) -> complex:
    """tanh(B) / tanh(A); exactly 1 for equal widths."""
    if q.a == q.b:
        return 1.0 + 0.0j
    k = wave_number(q.family, q.s, q.tau)
    tanh_a, tanh_b = _tanh(q.a * k), _tanh(q.b * k)
    if tanh_a == 0 or tanh_b == 0:
        raise BranchFailure(f"symbol is singular at s={q.s}")
    return tanh_b / tanh_a


def contraction_symbol(q: SymbolQuery) -> complex:
    """
    Per-iteration multiplier of the interface iterate at Laplace variable s.

    Raises:
        BranchFailure: If Re(s) <= 0 or the symbol is singular at s
    """
    if not q.s.real > 0:
        raise BranchFailure(f"symbols are evaluated for Re(s) > 0, got s={q.s}")

    theta = q.theta
    if isinstance(q.family, ParabolicFamily) and not q.bounded:
        ratio = 1.0 + 0.0j
    else:
        ratio = _ratio(q)

    if q.method == "dnwr":
        return complex(1.0 - theta - theta * ratio)
    return complex(1.0 - theta * (2.0 + ratio + 1.0 / ratio))


def contraction_profile(q: SymbolQuery, sigma: float, omegas: Iterable[float]) -> np.ndarray:
    """|symbol(sigma + i omega)| for each omega."""
    sigma = validate_positive(sigma, "sigma")
    return np.array([abs(contraction_symbol(replace(q, s=complex(sigma, omega)))) for omega in omegas])


def predicted_rate(q: SymbolQuery, sigma: float, omegas: Iterable[float]) -> float:
    """Largest symbol magnitude along the line Re(s) = sigma."""
    return float(np.max(contraction_profile(q, sigma, omegas)))
