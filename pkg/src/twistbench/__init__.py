"""Verification workbench for curve configurations on surfaces.

The package constructs a family of curve configurations on closed oriented
surfaces, derives their integral homology together with the intersection
pairing from ribbon-graph combinatorics, realizes Dehn twists and a
distinguished gluing involution as exact integer matrices, manipulates
positive factorizations of mapping classes under elementary transformations,
and cross-checks braid-level monodromy data against its homological lift.

All certifications are integer-exact; nothing here uses floating point.
"""
from __future__ import annotations

__version__ = "0.1.0"
