"""Numerical laboratory for invariant densities of bounded polynomial iterations."""
from __future__ import annotations

__version__ = "0.1.0"
