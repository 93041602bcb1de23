"""
Pytest configuration and shared fixtures for test suite.

Provides a default Config, worker pools, and a logging reset so tests that
install loguru handlers do not leak them into each other.
"""

import pytest

from multi_polybernoulli.config import Config
from multi_polybernoulli.polybernoulli import clear_caches
from multi_polybernoulli.worker import WorkerPool
import multi_polybernoulli.logging_config as _logging_mod


@pytest.fixture
def config():
    """A validated Config with the documented defaults."""
    return Config(
        max_total_degree=8,
        workers=1,
        output_format="plain",
        progress=False,
        log_level="WARNING",
        log_format="pretty",
        log_file=None,
    )


@pytest.fixture
def pool():
    """Single-worker pool (runs cases inline)."""
    worker_pool = WorkerPool(1)
    yield worker_pool
    worker_pool.shutdown()


@pytest.fixture
def threaded_pool():
    """Four-thread pool for concurrency tests."""
    worker_pool = WorkerPool(4)
    yield worker_pool
    worker_pool.shutdown()


@pytest.fixture
def fresh_caches():
    """Drop memoized evaluator results before and after the test."""
    clear_caches()
    yield
    clear_caches()


@pytest.fixture
def reset_logging_state():
    """Reset setup_logging module globals around a test."""
    _logging_mod._managed_handler_ids = []
    _logging_mod._initial_setup_done = False
    yield
    _logging_mod._managed_handler_ids = []
    _logging_mod._initial_setup_done = False
