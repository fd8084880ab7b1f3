from .hypergraph import Hypergraph, HypergraphError, delete_vertex, validate
from .matrices import adjacency_matrix, seidel_matrix
from .spectra import eigen_symmetric, group_spectrum, seidel_energy

__all__ = [
    "Hypergraph",
    "HypergraphError",
    "adjacency_matrix",
    "delete_vertex",
    "eigen_symmetric",
    "group_spectrum",
    "seidel_energy",
    "seidel_matrix",
    "validate",
]
