"""
Multi-indexed poly-Bernoulli numbers

Exact rational computation of B_{m_1,...,m_r}^{(k_1,...,k_r)} by several
independent methods, plus suites that check them against each other.
"""

from ._version import __version__ as __version__

__description__ = "Exact computation and verification of multi-indexed poly-Bernoulli numbers"
