"""Exact quantum McKay comparison of disc potentials for toric orbifolds ℂ³/G."""

from .correspondence import (change_of_variables, compare, compare_pipeline,
                             conjecture_check, conjecture_sweep,
                             framing_correspondence)
from .errors import OrbivertexError
from .group_core import build_group, group_from_spec
from .hypergeom_series import QSeries, gamma_ratio
from .lattice_geometry import invariant_basis, pick_audit, triangle_points
from .orbifold_side import (orbifold_disc_potential, orbifold_mirror_map,
                            torus_weights)
from .resolution_side import (mirror_corrections, pf_annihilation_check,
                              superpotential)
from .toric_charges import brane_extension, charge_basis, intersection_table
from .triangulator import enumerate_triangulations, flop_graph, is_regular

__all__ = [
    "OrbivertexError", "QSeries", "brane_extension", "build_group", "change_of_variables",
    "charge_basis", "compare", "compare_pipeline", "conjecture_check", "conjecture_sweep",
    "enumerate_triangulations",
    "flop_graph", "framing_correspondence", "gamma_ratio", "group_from_spec", "intersection_table",
    "invariant_basis", "is_regular", "mirror_corrections", "orbifold_disc_potential",
    "orbifold_mirror_map", "pf_annihilation_check", "pick_audit", "superpotential",
    "torus_weights", "triangle_points",
]
