"""
Input validation helpers for numeric parameters.
"""
import math
from typing import Any, Iterable, Optional, Sequence
import numpy as np
from utils.logger import get_logger
from utils.exceptions import ValidationError

logger = get_logger(__name__)


def validate_finite(value: Any, field_name: str) -> float:
    """
    Validate that a value is a finite real number.

    Args:
        value: Value to validate
        field_name: Name of the field (for error messages)

    Returns:
        The value as float

    Raises:
        ValidationError: If the value is not a finite real
    """
    if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
        raise ValidationError(f"{field_name} must be a real number, got {type(value).__name__}", field_name)
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{field_name} must be finite, got {value}", field_name)
    return value


def validate_positive(value: Any, field_name: str, allow_zero: bool = False) -> float:
    """
    Validate that a value is a finite number greater than zero.

    Args:
        value: Value to validate
        field_name: Name of the field
        allow_zero: Accept zero as well

    Returns:
        The value as float
    """
    value = validate_finite(value, field_name)
    if value < 0 or (value == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        raise ValidationError(f"{field_name} must be {bound}, got {value}", field_name)
    return value


def validate_positive_int(value: Any, field_name: str, minimum: int = 1) -> int:
    """Validate an integer count with a lower bound."""
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ValidationError(f"{field_name} must be an integer, got {type(value).__name__}", field_name)
    if value < minimum:
        raise ValidationError(f"{field_name} must be >= {minimum}, got {value}", field_name)
    return int(value)


def validate_open_interval(value: Any, field_name: str, low: float, high: float) -> float:
    """
    Validate that a value lies strictly inside (low, high).

    Raises:
        ValidationError: With message "<field> out of (low,high)"
    """
    value = validate_finite(value, field_name)
    if not (low < value < high):
        raise ValidationError(f"{field_name} out of ({_fmt(low)},{_fmt(high)})", field_name)
    return value


def validate_choice(value: Any, field_name: str, allowed: Sequence[str]) -> str:
    """Validate that a string is one of the allowed values."""
    if not isinstance(value, str) or value not in allowed:
        raise ValidationError(f"{field_name} must be one of {list(allowed)}, got '{value}'", field_name)
    return value


def validate_increasing(values: Iterable[float], field_name: str) -> np.ndarray:
    """Validate a strictly increasing vector of finite reals."""
    array = np.asarray(list(values), dtype=float)
    if array.ndim != 1 or array.size < 2:
        raise ValidationError(f"{field_name} needs at least two entries", field_name)
    if not np.all(np.isfinite(array)):
        raise ValidationError(f"{field_name} must contain finite values", field_name)
    if np.any(np.diff(array) <= 0):
        raise ValidationError(f"{field_name} must be strictly increasing", field_name)
    return array


def warn_outside(value: float, field_name: str, low: float, high: float, context: Optional[str] = None) -> bool:
    """
    Log a warning when value is outside (low, high).

    Returns:
        True if the value is inside the interval
    """
    inside = low < value < high
    if not inside:
        logger.warning(
            "parameter_outside_recommended_range",
            field=field_name,
            value=value,
            low=low,
            high=high,
            context=context,
        )
    return inside


def _fmt(value: float) -> str:
    return f"{value:g}"
