"""Exact computations for the ball-quotient surface Y1 and the lattice G1."""
from .kernels import BACKEND

__version__ = "0.1.0"
