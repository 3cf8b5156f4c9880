from .budget import Budget
from .choosability import is_d_r_choosable, is_f_choosable, iter_bad_assignments, minimal_pot_bad_assignment
from .classification import (
    ClassificationVerdict,
    block_decomposition,
    has_even_cycle_with_at_most_one_chord,
    is_gallai_tree,
    predict_E2_join,
    predict_K3_join,
    predict_Kt_join,
)
from .epimorphism import Epimorphism, exists_epimorphism, is_child
from .errors import BudgetExhausted, GraphError, GraphFormatError, PreconditionError, ReductionFailure
from .graph import Graph, blown_cycle, collapse_independent_set, join, named
from .graph_io import parse_edge_list, parse_graph6, to_edge_list, to_graph6
from .invariants import chromatic_number, clique_number, contains_clique_join, invariants, is_vertex_critical
from .list_coloring import ChoosabilityVerdict, ListAssignment, Outcome, color_from_lists
from .mules import MuleReport, mule, verify_mule
from .reduction import extract_critical_subgraph, find_hitting_independent_set, reduce_delta
from .sweeps import SweepTable, run_sweep

__all__ = [
    "Budget",
    "is_d_r_choosable",
    "is_f_choosable",
    "iter_bad_assignments",
    "minimal_pot_bad_assignment",
    "ClassificationVerdict",
    "block_decomposition",
    "has_even_cycle_with_at_most_one_chord",
    "is_gallai_tree",
    "predict_E2_join",
    "predict_K3_join",
    "predict_Kt_join",
    "Epimorphism",
    "exists_epimorphism",
    "is_child",
    "BudgetExhausted",
    "GraphError",
    "GraphFormatError",
    "PreconditionError",
    "ReductionFailure",
    "Graph",
    "blown_cycle",
    "collapse_independent_set",
    "join",
    "named",
    "parse_edge_list",
    "parse_graph6",
    "to_edge_list",
    "to_graph6",
    "chromatic_number",
    "clique_number",
    "contains_clique_join",
    "invariants",
    "is_vertex_critical",
    "ChoosabilityVerdict",
    "ListAssignment",
    "Outcome",
    "color_from_lists",
    "MuleReport",
    "mule",
    "verify_mule",
    "extract_critical_subgraph",
    "find_hitting_independent_set",
    "reduce_delta",
    "SweepTable",
    "run_sweep",
]
