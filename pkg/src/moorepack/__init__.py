"""Packing colorings of Moore graphs built from finite geometries."""
from .bounds import bracket, class_caps, moore_bound
from .coloring import PackingColoring, color_moore6, color_moore8, color_moore12, verify_coloring
from .ffield import make_field
from .generators import gen_cage_3_12, gen_classical, gen_gq_incidence, gen_pg_incidence
from .graph import Graph, diameter, girth, independence_number, max_independent_set
from .solver import SearchConfig, chi_rho_diameter2, solve_exact, solve_upper

__version__ = "0.1.0"

__all__ = [
    "Graph", "PackingColoring", "SearchConfig", "bracket", "chi_rho_diameter2", "class_caps", "color_moore6",
    "color_moore8", "color_moore12", "diameter", "gen_cage_3_12", "gen_classical", "gen_gq_incidence",
    "gen_pg_incidence", "girth", "independence_number", "make_field", "max_independent_set", "moore_bound",
    "solve_exact", "solve_upper", "verify_coloring",
]
