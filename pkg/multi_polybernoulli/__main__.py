"""
Entry point for python -m multi_polybernoulli

Allows running the package as a module:
    python -m multi_polybernoulli compute --m 1,1 --k -1,-1
"""

from .cli import main

if __name__ == "__main__":
    main()
