"""
Run manager executing the runs of an experiment on worker threads.
"""
import time
import threading
from datetime import datetime, timezone
from typing import List, Optional, Sequence
from utils.logger import get_logger
from utils.validation import validate_positive_int
from jobs.queue import RunQueue
from jobs.models import RunRequest, RunResult, RunStatus

logger = get_logger(__name__)


class RunManager:
    """
    Manages run processing and worker threads.
    """

    def __init__(self, run_queue: Optional[RunQueue] = None, num_workers: int = 1):
        """
        Initialize run manager.

        Args:
            run_queue: Run queue instance (a fresh one by default)
            num_workers: Number of worker threads
        """
        self.run_queue = run_queue or RunQueue()
        self.num_workers = validate_positive_int(num_workers, "num_workers")
        self.workers: list[threading.Thread] = []
        self.running = False
        logger.debug("run_manager_initialized", num_workers=self.num_workers)

    def start_workers(self):
        """Start worker threads."""
        if self.running:
            logger.warning("workers_already_running")
            return

        self.running = True
        for i in range(self.num_workers):
            worker = threading.Thread(
                target=self._worker_loop,
                name=f"RunWorker-{i}",
                daemon=True
            )
            worker.start()
            self.workers.append(worker)

    def stop_workers(self):
        """Stop worker threads."""
        self.running = False
        for worker in self.workers:
            worker.join(timeout=5)
        self.workers.clear()
        logger.debug("workers_stopped")

    def _execute(self, request: RunRequest) -> RunResult:
        self.run_queue.set_status(request.run_id, RunStatus.PROCESSING)
        log = logger.bind(run_id=request.run_id, method=request.method, parameter=request.parameter)
        log.debug("run_processing_started")

        start_time = time.perf_counter()
        started_at = datetime.now(timezone.utc)
        metadata = {"spec_name": request.spec_name, "subdomains": request.subdomains}
        try:
            history = request.task()
            result = RunResult(
                run_id=request.run_id,
                status=RunStatus.COMPLETED,
                request=request,
                history=history,
                started_at=started_at,
                completed_at=datetime.now(timezone.utc),
                execution_time=time.perf_counter() - start_time,
                metadata=metadata,
            )
            log.debug("run_completed", execution_time=result.execution_time)
        except Exception as e:
            result = RunResult(
                run_id=request.run_id,
                status=RunStatus.FAILED,
                request=request,
                error=str(e),
                exception=e,
                started_at=started_at,
                completed_at=datetime.now(timezone.utc),
                execution_time=time.perf_counter() - start_time,
                metadata=metadata,
            )
            log.error("run_failed", error=str(e), exc_info=True)
        return result

    def _worker_loop(self):
        """Main worker loop."""
        while self.running:
            request = self.run_queue.dequeue(timeout=0.1)
            if request is None:
                continue
            try:
                self.run_queue.save_result(self._execute(request))
            finally:
                self.run_queue.task_done()

    def submit(self, request: RunRequest) -> str:
        """
        Submit a run for processing.

        Returns:
            Run ID
        """
        return self.run_queue.enqueue(request)

    def run_all(self, requests: Sequence[RunRequest]) -> List[RunResult]:
        """
        Execute all runs and wait for them.

        Returns:
            Results in submission order
        """
        self.start_workers()
        try:
            run_ids = [self.submit(request) for request in requests]
            self.run_queue.join()
        finally:
            self.stop_workers()
        return [self.run_queue.get_result(run_id) for run_id in run_ids]
