"""Leech lattice kissing configurations, laminated sections, and
small-diameter partitions via graph coloring."""

__version__ = "0.1.0"

from .golay import GolayCode, build_golay, octads, weight
from .leech import (FULL_SET_IP_COUNTS, Shape, VectorSet, distance_squared,
                    enumerate_minimal_vectors, in_leech_lattice, inner_product,
                    inner_product_histogram, lattice_membership)
from .laminated import (EXPECTED_SECTION_COUNTS, SectionCounts, conditions_for,
                        rank_of_span, reproduce_table, section, section_counts)
from .confgraph import (ConflictGraph, IndependentBall, build_graph,
                        export_dimacs, independent_ball, min_pairwise_ip, peel,
                        read_dimacs)
from .coloring import (Coloring, SearchConfig, dsatur, exact_chromatic,
                       load_coloring, save_coloring, solve, tabucol,
                       verify_coloring)
from .hset import (HSelection, HSetReport, decode_selection, encode_selection,
                   encode_vector, make_hset, validate_hset)

__all__ = [
    "GolayCode", "build_golay", "octads", "weight",
    "FULL_SET_IP_COUNTS", "Shape", "VectorSet", "distance_squared",
    "enumerate_minimal_vectors", "in_leech_lattice", "inner_product",
    "inner_product_histogram", "lattice_membership",
    "EXPECTED_SECTION_COUNTS", "SectionCounts", "conditions_for",
    "rank_of_span", "reproduce_table", "section", "section_counts",
    "ConflictGraph", "IndependentBall", "build_graph", "export_dimacs",
    "independent_ball", "min_pairwise_ip", "peel", "read_dimacs",
    "Coloring", "SearchConfig", "dsatur", "exact_chromatic", "load_coloring",
    "save_coloring", "solve", "tabucol", "verify_coloring",
    "HSelection", "HSetReport", "decode_selection", "encode_selection",
    "encode_vector", "make_hset", "validate_hset",
]
