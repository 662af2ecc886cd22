"""Density-based clustering on numpy arrays.

Points are (n, d) float arrays; label arrays use -1 for noise and 0..k-1
for clusters.
"""

from ._dclust import (
    ContractError,
    DataError,
    DclustError,
    IoError,
    MissingParameterError,
    NoKneeError,
    ParameterError,
    ParseError,
    adjusted_rand_index,
    dbscan,
    endbscan,
    estimate_radius,
    generate,
    k_distance_graph,
    kdvariant,
    load,
    ndiff,
    optics,
    optics_order,
    save,
)

__all__ = [
    "ContractError",
    "DataError",
    "DclustError",
    "IoError",
    "MissingParameterError",
    "NoKneeError",
    "ParameterError",
    "ParseError",
    "adjusted_rand_index",
    "dbscan",
    "endbscan",
    "estimate_radius",
    "generate",
    "k_distance_graph",
    "kdvariant",
    "load",
    "ndiff",
    "optics",
    "optics_order",
    "save",
]
