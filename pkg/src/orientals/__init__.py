"""Finite strict omega-categories: orientals, cubes, lax slices and collages."""

__version__ = "0.1.0"
