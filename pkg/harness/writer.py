"""
CSV output of convergence histories.
"""
from pathlib import Path
from typing import List, Sequence, Union
import numpy as np
import pandas as pd
from utils.logger import get_logger
from utils.exceptions import OutputError, ValidationError
from waveform.models import ConvergenceHistory

logger = get_logger(__name__)

HISTORY_COLUMNS = ["method", "theta", "iteration", "error_norm"]
SUMMARY_COLUMNS = [
    "method",
    "parameter",
    "subdomains",
    "iterations",
    "converged",
    "final_relative_error",
    "fitted_rate",
]
FLOAT_FORMAT = "%.17g"


def history_tag(history: ConvergenceHistory) -> str:
    """Method label of a run: the harness tag when present, else the method name."""
    return history.metadata.get("tag", history.method)


def format_parameter(value: float) -> str:
    """Shortest decimal that round-trips, for file names."""
    return np.format_float_positional(float(value), trim="-")


def history_file_name(spec_name: str, history: ConvergenceHistory) -> str:
    return f"{spec_name}__{history_tag(history)}__theta{format_parameter(history.parameter)}.csv"


def history_frame(histories: Sequence[ConvergenceHistory]) -> pd.DataFrame:
    """One row per iteration per run, ordered by (method, theta, iteration)."""
    if not histories:
        raise ValidationError("no histories to write", "histories")
    rows = [
        {"method": history_tag(h), "theta": float(h.parameter), "iteration": k, "error_norm": float(error)}
        for h in histories
        for k, error in enumerate(h.errors)
    ]
    frame = pd.DataFrame(rows, columns=HISTORY_COLUMNS)
    return frame.sort_values(["method", "theta", "iteration"], kind="mergesort").reset_index(drop=True)


def summary_frame(histories: Sequence[ConvergenceHistory]) -> pd.DataFrame:
    if not histories:
        raise ValidationError("no histories to summarize", "histories")
    rows = [
        {
            "method": history_tag(h),
            "parameter": float(h.parameter),
            "subdomains": h.subdomains,
            "iterations": h.iterations_run,
            "converged": h.converged,
            "final_relative_error": h.final_relative_error,
            "fitted_rate": h.fitted_rate(),
        }
        for h in histories
    ]
    frame = pd.DataFrame(rows, columns=SUMMARY_COLUMNS)
    return frame.sort_values(["method", "parameter"], kind="mergesort").reset_index(drop=True)


def _write(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        raise OutputError(f"Failed to write {path}: {e}", str(path)) from e
    logger.debug("csv_written", path=str(path), rows=len(frame))
    return path


def write_history_csv(histories: Sequence[ConvergenceHistory], path: Union[str, Path]) -> Path:
    """
    Write histories as CSV with header method,theta,iteration,error_norm.

    Raises:
        ValidationError: If there are no histories
        OutputError: If the file cannot be written
    """
    return _write(history_frame(histories), path)


def write_summary_csv(histories: Sequence[ConvergenceHistory], path: Union[str, Path]) -> Path:
    """Write one summary row per run."""
    return _write(summary_frame(histories), path)


def write_experiment(spec_name: str, histories: Sequence[ConvergenceHistory], directory: Union[str, Path]) -> List[Path]:
    """
    Write one CSV per run plus ``<spec>__summary.csv``.

    Returns:
        Paths of the per-run files followed by the summary path
    """
    directory = Path(directory)
    paths = [write_history_csv([h], directory / history_file_name(spec_name, h)) for h in histories]
    paths.append(write_summary_csv(histories, directory / f"{spec_name}__summary.csv"))
    logger.info("experiment_written", spec_name=spec_name, directory=str(directory), files=len(paths))
    return paths
