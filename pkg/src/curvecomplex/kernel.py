"""The exact kernel in one place: surfaces, the reference triangulation, curves, mapping classes."""

from __future__ import annotations

from .curves import Curve, apply, compile_twist, disjoint, intersection_number, is_separating, validate_curve
from .mapping import MappingClass, braid, halftwist, is_pants_curve, twist
from .surface import Surface, complexity
from .triangulation import Triangulation, reference_triangulation

__all__ = [
    "Surface",
    "Triangulation",
    "Curve",
    "MappingClass",
    "complexity",
    "reference_triangulation",
    "validate_curve",
    "intersection_number",
    "disjoint",
    "is_separating",
    "apply",
    "compile_twist",
    "twist",
    "halftwist",
    "braid",
    "is_pants_curve",
]
