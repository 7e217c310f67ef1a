"""
Execution of the independent subdomain solves of one iteration phase.
"""
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar
from utils.logger import get_logger
from utils.validation import validate_positive_int

logger = get_logger(__name__)

T = TypeVar("T")


class PhaseExecutor:
    """
    Runs the tasks of a phase and returns their results in submission order.

    With ``max_workers`` of 1 the tasks run inline; otherwise they run on a
    thread pool. ``run_phase`` returns only after every task has finished,
    which is the barrier between phases. Tasks must not share mutable state.
    One executor may be shared by several runs on different threads.
    """

    def __init__(self, max_workers: int = 1):
        self.max_workers = validate_positive_int(max_workers, "max_workers")
        self._pool: Optional[ThreadPoolExecutor] = None
        self._lock = threading.Lock()

    def run_phase(self, tasks: Sequence[Callable[[], T]]) -> List[T]:
        if self.max_workers == 1 or len(tasks) <= 1:
            return [task() for task in tasks]
        pool = self._ensure_pool()
        futures = [pool.submit(task) for task in tasks]
        return [future.result() for future in futures]

    def _ensure_pool(self) -> ThreadPoolExecutor:
        with self._lock:
            if self._pool is None:
                self._pool = ThreadPoolExecutor(max_workers=self.max_workers, thread_name_prefix="PhaseWorker")
                logger.debug("phase_pool_started", max_workers=self.max_workers)
            return self._pool

    def shutdown(self) -> None:
        with self._lock:
            pool, self._pool = self._pool, None
        if pool is not None:
            pool.shutdown(wait=True)

    def __enter__(self) -> "PhaseExecutor":
        return self

    def __exit__(self, exc_type, exc, tb) -> None:
        self.shutdown()


SEQUENTIAL = PhaseExecutor(1)
