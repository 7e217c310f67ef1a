"""
In-memory run queue shared by the worker threads of one experiment.
"""
import queue
import threading
from typing import Dict, Optional
from utils.logger import get_logger
from jobs.models import RunRequest, RunResult, RunStatus

logger = get_logger(__name__)


class RunQueue:
    """
    FIFO of pending runs plus thread-safe status and result tables.
    """

    def __init__(self):
        self._queue: "queue.Queue[RunRequest]" = queue.Queue()
        self._lock = threading.Lock()
        self._status: Dict[str, RunStatus] = {}
        self._results: Dict[str, RunResult] = {}

    def enqueue(self, request: RunRequest) -> str:
        """
        Add a run to the queue.

        Returns:
            Run ID
        """
        with self._lock:
            self._status[request.run_id] = RunStatus.QUEUED
        self._queue.put(request)
        logger.debug("run_enqueued", run_id=request.run_id, method=request.method, parameter=request.parameter)
        return request.run_id

    def dequeue(self, timeout: float = 0.1) -> Optional[RunRequest]:
        """
        Get the next run, waiting at most ``timeout`` seconds.

        Returns:
            Run request or None if timeout
        """
        try:
            return self._queue.get(timeout=timeout)
        except queue.Empty:
            return None

    def task_done(self) -> None:
        self._queue.task_done()

    def join(self) -> None:
        """Block until every enqueued run has been processed."""
        self._queue.join()

    def set_status(self, run_id: str, status: RunStatus) -> None:
        with self._lock:
            self._status[run_id] = status
        logger.debug("run_status_updated", run_id=run_id, status=status.value)

    def get_status(self, run_id: str) -> Optional[RunStatus]:
        with self._lock:
            return self._status.get(run_id)

    def save_result(self, result: RunResult) -> None:
        with self._lock:
            self._results[result.run_id] = result
            self._status[result.run_id] = result.status

    def get_result(self, run_id: str) -> Optional[RunResult]:
        with self._lock:
            return self._results.get(run_id)
