"""Executable L^p uncertainty principles: parameter algebra, grid norms,
spectral propagators and experiment harnesses."""

__version__ = "0.1.0"
