"""Exact verification of L-infinity structures and their Nijenhuis deformations."""

__version__ = "0.1.0"
