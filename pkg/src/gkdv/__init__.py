"""Simulation and verification tools for the truncated, gauged quartic gKdV flow on the torus."""

__version__ = "0.1.0"
