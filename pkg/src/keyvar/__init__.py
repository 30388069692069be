"""Exact verification toolkit for Q-Fano threefolds cut from the key varieties
of dimension 13 and 14 (weighted projectivizations, charts, singularity types)."""

__version__ = "0.1.0"
