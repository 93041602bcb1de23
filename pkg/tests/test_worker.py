"""
Tests for worker.py module.

Tests Worker class, WorkerPool, threading, result ordering,
progress tracking, and error handling.
"""

import threading
import time

import pytest

from multi_polybernoulli.worker import Worker, WorkerPool, WorkerTaskError


def _square(x):
    return x * x


def _slow_reverse(x):
    """Later items finish first."""
    time.sleep(0.002 * (10 - x))
    return x


class TestWorker:
    """Test Worker class functionality."""

    def test_worker_initialization(self):
        worker = Worker(3)

        assert worker.worker_id == 3
        assert worker.is_busy is False
        assert worker.current_task is None
        assert worker.completed == 0
        assert worker.failed == 0

    def test_worker_is_available(self):
        worker = Worker(0)
        assert worker.is_available() is True

        worker.is_busy = True
        assert worker.is_available() is False

    def test_assign_task_runs_in_thread(self):
        worker = Worker(0)
        results = [None]
        errors = {}

        worker.assign_task(0, 7, _square, results, errors)
        assert worker.is_busy is True
        assert worker.current_task == 0

        worker.current_thread.join(timeout=5)
        assert worker.check_completion() is True
        assert worker.is_busy is False
        assert results == [49]
        assert errors == {}
        assert worker.completed == 1

    def test_assign_task_when_busy(self):
        worker = Worker(0)
        worker.is_busy = True

        with pytest.raises(RuntimeError):
            worker.assign_task(0, 1, _square, [None], {})

    def test_failed_task_is_recorded(self):
        worker = Worker(0)
        errors = {}

        worker._run_task(0, "x", int, [None], errors)

        assert isinstance(errors[0], ValueError)
        assert worker.failed == 1
        assert worker.completed == 0

    def test_check_completion_when_idle(self):
        assert Worker(0).check_completion() is False

    def test_find_available(self):
        workers = [Worker(0), Worker(1)]
        workers[0].is_busy = True

        assert Worker.find_available(workers) is workers[1]

        workers[1].is_busy = True
        assert Worker.find_available(workers) is None


class TestWorkerPool:
    """Test WorkerPool class functionality."""

    def test_pool_initialization(self):
        pool = WorkerPool(3)
        assert [w.worker_id for w in pool.workers] == [0, 1, 2]
        assert not pool.has_busy_workers()

    @pytest.mark.parametrize("num_workers", [0, -2])
    def test_invalid_worker_count(self, num_workers):
        with pytest.raises(ValueError):
            WorkerPool(num_workers)

    def test_inline_map(self, pool):
        assert pool.map(_square, range(5)) == [0, 1, 4, 9, 16]

    def test_inline_runs_on_calling_thread(self, pool):
        caller = threading.get_ident()
        assert pool.map(lambda _: threading.get_ident(), [1, 2]) == [caller, caller]

    def test_empty_input(self, threaded_pool):
        assert threaded_pool.map(_square, []) == []

    def test_threaded_results_keep_input_order(self, threaded_pool):
        assert threaded_pool.map(_slow_reverse, range(10)) == list(range(10))

    def test_threaded_matches_inline(self, pool, threaded_pool):
        items = list(range(40))
        assert threaded_pool.map(_square, items) == pool.map(_square, items)

    def test_progress_callback(self, pool, threaded_pool):
        for worker_pool in (pool, threaded_pool):
            calls = []
            worker_pool.map(_square, range(6), on_task_complete=lambda c, t: calls.append((c, t)))
            assert [c for c, _ in calls] == [1, 2, 3, 4, 5, 6]
            assert all(t == 6 for _, t in calls)

    def test_progress_callback_runs_on_calling_thread(self, threaded_pool):
        threads = set()
        threaded_pool.map(
            _square, range(8), on_task_complete=lambda c, t: threads.add(threading.get_ident())
        )
        assert threads == {threading.get_ident()}

    def test_first_failure_in_input_order_is_raised(self, threaded_pool):
        def fail_on_odd(x):
            if x % 2:
                raise ValueError(f"odd {x}")
            return x

        with pytest.raises(WorkerTaskError) as exc_info:
            threaded_pool.map(fail_on_odd, range(8))

        assert exc_info.value.index == 1
        assert exc_info.value.item == 1
        assert isinstance(exc_info.value.error, ValueError)
        assert isinstance(exc_info.value.__cause__, ValueError)

    def test_inline_failure_is_raised(self, pool):
        with pytest.raises(WorkerTaskError) as exc_info:
            pool.map(int, ["1", "x", "y"])
        assert exc_info.value.index == 1

    def test_workers_idle_after_map(self, threaded_pool):
        threaded_pool.map(_square, range(12))
        assert not threaded_pool.has_busy_workers()
        assert sum(w.completed for w in threaded_pool.workers) == 12

    def test_shutdown(self, threaded_pool):
        threaded_pool.map(_square, range(4))
        threaded_pool.shutdown()
        assert not threaded_pool.has_busy_workers()
