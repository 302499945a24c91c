"""Screenplay corpus tooling, two-stage generation, and evaluation kit."""

__version__ = "0.1.0"
