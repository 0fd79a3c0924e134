"""Degree-3 treewidth sparsifiers on path-of-sets systems, with certificates."""

from .cut_matching import ExpanderEmbedding, expansion, run_game
from .estimators import CutMatchingGame, DegreeFourSparsifier, DegreeThreeSparsifier
from .exceptions import (
    CertificateError,
    FormatError,
    InfeasibleError,
    InvariantError,
    NotFoundError,
    ProtocolError,
    TwSparseError,
    VersionError,
)
from .graph import Graph, MinorModel, TopoWitness, suppress_degree2, tau
from .path_of_sets import PathOfSetsSystem, PipelineConfig, generate_from_grid, validate
from .pipeline import build_degree3, certify, embed_expander_degree4, sparsify
from .routing import PathSet, route_node_disjoint
from .treewidth import exact_treewidth
from .two_pair import minimal_good_minor, pad_and_attach, route_two_pairs

__version__ = "0.1.0"

__all__ = [
    "CertificateError",
    "CutMatchingGame",
    "DegreeFourSparsifier",
    "DegreeThreeSparsifier",
    "ExpanderEmbedding",
    "FormatError",
    "Graph",
    "InfeasibleError",
    "InvariantError",
    "MinorModel",
    "NotFoundError",
    "PathOfSetsSystem",
    "PathSet",
    "PipelineConfig",
    "ProtocolError",
    "TopoWitness",
    "TwSparseError",
    "VersionError",
    "build_degree3",
    "certify",
    "embed_expander_degree4",
    "exact_treewidth",
    "expansion",
    "generate_from_grid",
    "minimal_good_minor",
    "pad_and_attach",
    "route_node_disjoint",
    "route_two_pairs",
    "run_game",
    "sparsify",
    "suppress_degree2",
    "tau",
    "validate",
]
