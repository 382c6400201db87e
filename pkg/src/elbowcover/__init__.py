"""Elbow covers, line-graph covering numbers and 3-suitable / 3-mixing order families."""
from .errors import BudgetExceeded, ConstructionError, ElbowCoverError, GraphError, VerificationError
from .graph import Coloring, Graph, LineGraphMap, build_graph, chromatic_number_exact, graph_generate, line_graph
from .orders import MIXING, SUITABLE, OrderFamily, build_family, lglg_bound, min_family_search
from .orientations import ELBOW, IN_ELBOW, Orientation, OrientationFamily, exact_elb, exact_inelb
from .recognition import Cover, cover_verify, is_chordal, is_interval

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "ConstructionError", "ElbowCoverError", "GraphError", "VerificationError",
    "Coloring", "Graph", "LineGraphMap", "build_graph", "chromatic_number_exact", "graph_generate",
    "line_graph", "MIXING", "SUITABLE", "OrderFamily", "build_family", "lglg_bound",
    "min_family_search", "ELBOW", "IN_ELBOW", "Orientation", "OrientationFamily", "exact_elb",
    "exact_inelb", "Cover", "cover_verify", "is_chordal", "is_interval", "__version__",
]
