"""Structural features of CNF formulas: fractal dimension, power-law
exponent, modularity, and feature-based solver selection."""

from ._core import (
    CnfFormula,
    Graph,
    ParseError,
    build_graph,
    classify,
    cover_curve,
    exact_cover_count,
    extract_features,
    fit_alpha,
    fit_dimension,
    fold_communities,
    graph_stats,
    greedy_cover,
    modularity,
    occurrence_histogram,
    parse_dimacs,
    portfolio,
    predict_runtime,
    random_3cnf,
    read_dimacs,
    to_dimacs,
    unit_propagate,
)

__all__ = [
    "CnfFormula",
    "Graph",
    "ParseError",
    "build_graph",
    "classify",
    "cover_curve",
    "exact_cover_count",
    "extract_features",
    "fit_alpha",
    "fit_dimension",
    "fold_communities",
    "graph_stats",
    "greedy_cover",
    "modularity",
    "occurrence_histogram",
    "parse_dimacs",
    "portfolio",
    "predict_runtime",
    "random_3cnf",
    "read_dimacs",
    "to_dimacs",
    "unit_propagate",
]
