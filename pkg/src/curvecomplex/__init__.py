"""Curve-complex toolkit."""
