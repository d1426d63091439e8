"""Exact Kauffman bracket polynomials of knot shadows.

The Celtic family on 4 x 2n grids is computed by brute-force state sum and
cross-checked against two transfer matrices (2x2, and 14x14 over the
4-strand diagram monoid)."""

from .polyring import IntPoly, PolyMatrix
from .shadow_core import ShadowDiagram, bracket_statesum, count_circles, make_foil, connected_sum
from .celtic_grid import build_ck, smooth_at, barrier_component_distribution, symmetry_orbits
from .celtic_recursion import celtic_bracket, celtic_bracket_gf
from .tangle_monoid import closed_bracket, tangle_bracket_ck

__version__ = "0.1.0"
