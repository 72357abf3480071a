"""
Unit tests for crankshaft
"""
