"""Cumulants and Gaussian fluctuations of linear statistics via lattice paths on band matrices."""

__version__ = "0.1.0"
