"""Input checks shared by the estimators and the command line."""

from __future__ import annotations

import numbers

import numpy as np

from .graph import Graph
from .path_of_sets import PathOfSetsSystem


class NotFittedError(AttributeError):
    """An estimator was used before ``fit``."""


def check_graph(x) -> Graph:
    """Coerce a :class:`Graph`, a networkx graph or an edge list to a Graph."""
    if isinstance(x, Graph):
        return x
    if hasattr(x, "nodes") and hasattr(x, "edges"):
        return Graph.from_edges(list(x.edges()), x.nodes())
    try:
        pairs = [tuple(p) for p in x]
    except TypeError as exc:
        raise TypeError(f"cannot interpret {type(x).__name__} as a graph") from exc
    for p in pairs:
        if len(p) not in (2, 3):
            raise ValueError(f"edge {p!r} must be (u, v) or (u, v, color)")
    return Graph.from_edges(pairs)


def check_system(X):
    """Accept a path-of-sets system or a ``(host, system)`` pair."""
    if isinstance(X, PathOfSetsSystem):
        return X.host, X
    if isinstance(X, tuple) and len(X) == 2 and isinstance(X[1], PathOfSetsSystem):
        g = check_graph(X[0])
        if g != X[1].host:
            raise ValueError("host graph differs from the system's host")
        return g, X[1]
    raise TypeError("expected a PathOfSetsSystem or a (graph, PathOfSetsSystem) pair")


def check_even_h(pos: PathOfSetsSystem) -> int:
    if pos.h < 2 or pos.h % 2:
        raise ValueError(f"the constructions need an even height h >= 2, got {pos.h}")
    return pos.h


def check_positive_int(value, name: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"{name} must be at least {minimum}, got {value}")
    return int(value)


def check_random_state(seed) -> np.random.Generator:
    """Seeds must be explicit: an int or an existing Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise ValueError("a seed is required; wall-clock seeding is not supported")
    return np.random.default_rng(check_positive_int(seed, "seed", 0))


def check_is_fitted(est, attr: str) -> None:
    if not hasattr(est, attr):
        raise NotFittedError(f"{type(est).__name__} is not fitted yet; call fit first")


__all__ = [
    "NotFittedError",
    "check_even_h",
    "check_graph",
    "check_is_fitted",
    "check_positive_int",
    "check_random_state",
    "check_system",
]
