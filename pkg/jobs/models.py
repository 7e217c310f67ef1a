"""
Run models and status definitions.
"""
from enum import Enum
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional
from datetime import datetime, timezone
import uuid
from waveform.models import ConvergenceHistory


def _now() -> datetime:
    return datetime.now(timezone.utc)


class RunStatus(str, Enum):
    """Run status enumeration."""
    QUEUED = "queued"
    PROCESSING = "processing"
    COMPLETED = "completed"
    FAILED = "failed"


@dataclass
class RunRequest:
    """One iteration run of an experiment: a method at one parameter value."""
    spec_name: str
    method: str
    parameter: float
    task: Callable[[], ConvergenceHistory]
    subdomains: int = 2
    label: str = ""
    run_id: Optional[str] = None

    def __post_init__(self):
        """Generate run ID if not provided."""
        if self.run_id is None:
            self.run_id = str(uuid.uuid4())

    @property
    def sort_key(self) -> tuple:
        return (self.method, self.subdomains, self.parameter)


@dataclass
class RunResult:
    """Result of a run execution."""
    run_id: str
    status: RunStatus
    request: Optional[RunRequest] = None
    history: Optional[ConvergenceHistory] = None
    error: Optional[str] = None
    exception: Optional[BaseException] = None
    metadata: Dict[str, Any] = field(default_factory=dict)
    created_at: datetime = field(default_factory=_now)
    started_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None
    execution_time: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "run_id": self.run_id,
            "status": self.status.value,
            "history": self.history.to_dict() if self.history else None,
            "error": self.error,
            "metadata": self.metadata,
            "created_at": self.created_at.isoformat() if self.created_at else None,
            "started_at": self.started_at.isoformat() if self.started_at else None,
            "completed_at": self.completed_at.isoformat() if self.completed_at else None,
            "execution_time": self.execution_time
        }
