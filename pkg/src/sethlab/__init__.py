"""Reduction laboratory for structural variants of the Strong Exponential Time Hypothesis."""

__version__ = "0.1.0"
