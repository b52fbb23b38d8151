"""Markov equivalence class census for DAGs on small skeletons."""
from .census import (
    CensusRecord, ImmoralityIndex, ImmoralityPolynomial, MecFingerprint, MecRecord, SizeSpectrum,
    build_immorality_index, census, evaluate_M, evaluate_S, fingerprint_of, immorality_count,
    immorality_number, max_immorality_dag, polynomial_product, spectrum_product,
)
from .errors import BudgetExceeded, Graph6Error, MecError
from .graph_core import (
    Dag, Skeleton, acyclic_orientation_count, disjoint_union, encode_graph6, make_named,
    parse_graph6, structure_summary,
)
from .orientations import brute_force_orientations, enumerate_acyclic_orientations

__version__ = "0.1.0"

__all__ = [
    "CensusRecord",
    "ImmoralityIndex",
    "ImmoralityPolynomial",
    "MecFingerprint",
    "MecRecord",
    "SizeSpectrum",
    "build_immorality_index",
    "census",
    "evaluate_M",
    "evaluate_S",
    "fingerprint_of",
    "immorality_count",
    "immorality_number",
    "max_immorality_dag",
    "polynomial_product",
    "spectrum_product",
    "BudgetExceeded",
    "Graph6Error",
    "MecError",
    "Dag",
    "Skeleton",
    "acyclic_orientation_count",
    "disjoint_union",
    "encode_graph6",
    "make_named",
    "parse_graph6",
    "structure_summary",
    "brute_force_orientations",
    "enumerate_acyclic_orientations",
]
