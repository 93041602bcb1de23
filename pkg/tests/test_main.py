"""
Tests for the __main__.py entry point module
"""

import subprocess
import sys

import pytest


@pytest.mark.integration
def test_main_module_execution():
    """Test that the module can be executed via python -m"""
    result = subprocess.run(
        [sys.executable, "-m", "multi_polybernoulli", "--help"],
        capture_output=True,
        text=True,
        timeout=30,
    )

    assert result.returncode == 0
    assert "usage:" in result.stdout.lower()
    assert "verify" in result.stdout


@pytest.mark.integration
def test_main_module_computes_value():
    argv = ["compute", "--m", "1,1", "--k", "-1,-1", "--no-progress"]
    result = subprocess.run(
        [sys.executable, "-m", "multi_polybernoulli", *argv],
        capture_output=True,
        text=True,
        timeout=30,
    )

    assert result.returncode == 0
    assert result.stdout.strip() == "26/1"


def test_main_module_import():
    """Test that __main__ can be imported"""
    import multi_polybernoulli.__main__ as main_module

    assert hasattr(main_module, "main")
