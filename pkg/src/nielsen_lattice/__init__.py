"""Exact integer-lattice computations for the Nielsen realization problem on
Enriques manifolds."""

__version__ = "0.1.0"
