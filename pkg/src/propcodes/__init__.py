"""Propelinear 1-perfect codes from quadratic switching functions."""

__version__ = "0.1.0"
