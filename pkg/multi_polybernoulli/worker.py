"""
Worker classes for evaluating sweep cases using threading.

Provides Worker and WorkerPool classes. A sweep is a list of independent
cases (index/weight tuples); the pool hands them to worker threads and
returns results in input order regardless of completion order.
"""

import threading
import time
from collections import deque
from typing import Any, Callable, List, Optional, Sequence

from loguru import logger


class WorkerTaskError(RuntimeError):
    """Raised by WorkerPool.map when a case raised inside a worker thread."""

    def __init__(self, index: int, item: Any, error: BaseException):
        super().__init__(f"case {index} ({item!r}) failed: {error}")
        self.index = index
        self.item = item
        self.error = error


class Worker:
    """Represents a worker thread for evaluating sweep cases."""

    def __init__(self, worker_id: int):
        """
        Initialize a worker.

        Args:
            worker_id: Unique identifier for this worker
        """
        self.worker_id = worker_id

        # Task state
        self.is_busy = False
        self.current_thread = None
        self.current_task = None

        # Statistics
        self.completed = 0
        self.failed = 0

    def is_available(self) -> bool:
        """Check if this worker is available for a new task."""
        return not self.is_busy

    def assign_task(
        self,
        index: int,
        item: Any,
        func: Callable[[Any], Any],
        results: List[Any],
        errors: dict,
    ) -> None:
        """
        Assign a new case to this worker.

        Args:
            index: Position of the case in the sweep
            item: Argument passed to ``func``
            func: Evaluator for one case
            results: Shared result slots, one per case
            errors: Shared map of case index to raised exception
        """
        if self.is_busy:
            raise RuntimeError(f"Worker {self.worker_id} is already busy")

        self.is_busy = True
        self.current_task = index
        self.current_thread = threading.Thread(
            target=self._run_task,
            args=(index, item, func, results, errors),
            daemon=True,
        )
        self.current_thread.start()

    def _run_task(
        self,
        index: int,
        item: Any,
        func: Callable[[Any], Any],
        results: List[Any],
        errors: dict,
    ) -> None:
        """Evaluate one case in the background thread."""
        ctx_logger = logger.bind(worker_id=self.worker_id)
        try:
            # Each index is written by exactly one worker
            results[index] = func(item)
            self.completed += 1
        except Exception as e:
            ctx_logger.error(f"Worker {self.worker_id} failed on case {item!r}: {e}")
            errors[index] = e
            self.failed += 1

    def check_completion(self) -> bool:
        """
        Check if this worker has completed its current task.

        Returns:
            bool: True if task completed, False if still running
        """
        if not self.is_busy:
            return False

        if self.current_thread and not self.current_thread.is_alive():
            self.is_busy = False
            self.current_task = None
            return True

        return False

    def shutdown(self) -> None:
        """Shutdown the worker gracefully."""
        if self.current_thread and self.current_thread.is_alive():
            self.current_thread.join(timeout=60)
            if self.current_thread.is_alive():
                logger.warning(
                    f"Worker {self.worker_id} did not finish within shutdown timeout"
                )

    @staticmethod
    def find_available(workers: List["Worker"]) -> Optional["Worker"]:
        """
        Find the first available worker.

        Args:
            workers: List of Worker instances

        Returns:
            Worker: First available worker, or None if all are busy
        """
        for worker in workers:
            if worker.is_available():
                return worker
        return None


class WorkerPool:
    """Manages a pool of workers for evaluating sweep cases."""

    def __init__(self, num_workers: int = 1):
        """
        Initialize worker pool.

        Args:
            num_workers: Number of worker threads (>= 1). With one worker
                cases run inline on the calling thread.
        """
        if num_workers < 1:
            raise ValueError(f"num_workers must be at least 1 (got: {num_workers})")
        self.workers = [Worker(i) for i in range(num_workers)]
        logger.debug(f"Worker pool created with {num_workers} workers")

    def has_busy_workers(self) -> bool:
        """Check if any workers are currently busy."""
        return any(worker.is_busy for worker in self.workers)

    def map(
        self,
        func: Callable[[Any], Any],
        items: Sequence[Any],
        on_task_complete: Optional[Callable[[int, int], None]] = None,
    ) -> List[Any]:
        """
        Evaluate ``func`` on every item and return the results in input order.

        Args:
            func: Evaluator for one case
            items: Cases to evaluate
            on_task_complete: Called as on_task_complete(completed, total)
                after each case finishes

        Returns:
            list: One result per item, same order as ``items``

        Raises:
            WorkerTaskError: for the first case (in input order) that raised
        """
        items = list(items)
        total_items = len(items)
        results: List[Any] = [None] * total_items
        errors: dict = {}

        if len(self.workers) == 1:
            self._map_inline(func, items, results, errors, on_task_complete)
        else:
            self._map_threaded(func, items, results, errors, on_task_complete)

        if errors:
            first = min(errors)
            raise WorkerTaskError(first, items[first], errors[first]) from errors[first]
        return results

    def _map_inline(self, func, items, results, errors, on_task_complete) -> None:
        worker = self.workers[0]
        for index, item in enumerate(items):
            worker._run_task(index, item, func, results, errors)
            if on_task_complete:
                on_task_complete(index + 1, len(items))

    def _map_threaded(self, func, items, results, errors, on_task_complete) -> None:
        queue = deque(enumerate(items))
        completed_tasks = 0
        total_items = len(items)
        last_progress_log = time.time()

        logger.debug(f"Evaluating {total_items} cases with {len(self.workers)} workers")

        while queue or self.has_busy_workers():
            for worker in self.workers:
                if worker.check_completion():
                    completed_tasks += 1
                    if on_task_complete:
                        on_task_complete(completed_tasks, total_items)

            while queue:
                available_worker = Worker.find_available(self.workers)
                if not available_worker:
                    break
                index, item = queue.popleft()
                available_worker.assign_task(index, item, func, results, errors)

            current_time = time.time()
            if current_time - last_progress_log >= 5.0:
                logger.info(f"Sweep progress {completed_tasks}/{total_items} cases")
                last_progress_log = current_time

            if self.has_busy_workers():
                time.sleep(0.001)

        logger.debug(
            f"Sweep complete: {total_items - len(errors)} successful, {len(errors)} failed"
        )

    def shutdown(self) -> None:
        """Shutdown all workers gracefully."""
        logger.debug("Shutting down worker pool...")
        for worker in self.workers:
            worker.shutdown()
        logger.debug("Worker pool shutdown complete")
