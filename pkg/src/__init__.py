"""prozeta: exact arithmetic for probabilistic zeta functions."""

__version__ = "0.1.0"
