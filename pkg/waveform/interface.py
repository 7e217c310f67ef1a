"""
Interface relaxation and error norms.
"""
import math
from typing import Optional, Sequence, Union
import numpy as np
from discretization.field import InterfaceTrace
from utils.exceptions import LengthMismatch, ValidationError
from waveform.models import Norm


def interface_update(prev: InterfaceTrace, candidate: InterfaceTrace, theta: float) -> InterfaceTrace:
    """
    Relaxed update theta * candidate + (1 - theta) * prev.

    Raises:
        LengthMismatch: If the traces differ in length
    """
    if len(prev) != len(candidate):
        raise LengthMismatch(
            f"cannot relax traces of length {len(prev)} and {len(candidate)}",
            expected=len(prev),
            actual=len(candidate),
        )
    return InterfaceTrace(theta * candidate.values + (1.0 - theta) * prev.values)


def error_norm(trace: InterfaceTrace, norm: Union[Norm, str] = Norm.SUP, dt: Optional[float] = None) -> float:
    """
    Norm of a trace over time.

    Args:
        trace: Interface trace
        norm: "sup" for max |values|, "l2" for sqrt(dt * sum(values^2))
        dt: Time step (required for the l2 norm)
    """
    norm = Norm(norm)
    values = trace.values
    if norm is Norm.SUP:
        return float(np.max(np.abs(values)))
    if dt is None:
        raise ValidationError("the l2 norm needs the time step", "dt")
    return math.sqrt(dt * float(np.dot(values, values)))


def interface_error(
    traces: Sequence[InterfaceTrace],
    references: Sequence[InterfaceTrace],
    norm: Union[Norm, str],
    dt: float,
) -> float:
    """Maximum over interfaces of the norm of trace - reference."""
    return max(error_norm(trace - reference, norm, dt) for trace, reference in zip(traces, references))
