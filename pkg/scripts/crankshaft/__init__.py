"""
crankshaft: exact partition statistics, q-series and bijections

This package computes crank, unimodal-composition and truncated pentagonal
statistics with exact integer arithmetic, runs the associated bijections and
verifies the identities relating them over configurable ranges.
"""

__version__ = "1.0.0"
