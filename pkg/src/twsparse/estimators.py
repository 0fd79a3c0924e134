"""Estimator-style wrappers: configure in ``__init__``, build in ``fit``."""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import (
    check_even_h,
    check_is_fitted,
    check_positive_int,
    check_random_state,
    check_system,
)
from .cut_matching import (
    default_rounds,
    random_matching_oracle,
    run_game,
    sorted_matching_oracle,
    state_expansion,
)
from .path_of_sets import PipelineConfig
from .pipeline import sparsify


class _SparsifierBase(BaseEstimator, TransformerMixin):
    _degree = 3

    def _config(self, pos):
        n = check_positive_int(self.n_expanders, "n_expanders") if self._degree == 3 else 1
        theta = None if self.theta is None else check_positive_int(self.theta, "theta")
        check_random_state(self.seed)
        return PipelineConfig.for_system(pos, n, theta=theta, seed=int(self.seed))

    def fit(self, X, y=None):
        """``X`` is a path-of-sets system or a ``(host, system)`` pair."""
        g, pos = check_system(X)
        check_even_h(pos)
        self.config_ = self._config(pos)
        self.run_ = sparsify(g, pos, self.config_, self._degree)
        self.graph_ = self.run_.graph
        self.certificate_ = self.run_.certificate
        self.bundle_ = self.run_.bundle
        return self

    def transform(self, X=None):
        check_is_fitted(self, "graph_")
        return self.graph_


class DegreeThreeSparsifier(_SparsifierBase):
    """Degree-3 topological minor with expanders, sampling and a certificate.

    ``theta=None`` uses ``2h``.
    """

    _degree = 3

    def __init__(self, n_expanders=1, theta=None, seed=0):
        self.n_expanders = n_expanders
        self.theta = theta
        self.seed = seed


class DegreeFourSparsifier(_SparsifierBase):
    """One expander over all clusters; the output keeps degree-4 vertices."""

    _degree = 4

    def __init__(self, seed=0, theta=None):
        self.seed = seed
        self.theta = theta


class CutMatchingGame(BaseEstimator):
    """Play the game on ``n`` vertices against a random or sorted matching player."""

    def __init__(self, rounds=None, matching="random", seed=0):
        self.rounds = rounds
        self.matching = matching
        self.seed = seed

    def fit(self, X, y=None):
        """``X`` is the (even) number of expander vertices."""
        n = check_positive_int(X, "n", 2)
        rng = check_random_state(self.seed)
        rounds = default_rounds(n) if self.rounds is None else check_positive_int(self.rounds, "rounds", 0)
        if self.matching == "random":
            oracle = random_matching_oracle(rng)
        elif self.matching == "sorted":
            oracle = sorted_matching_oracle
        else:
            raise ValueError(f"matching must be 'random' or 'sorted', got {self.matching!r}")
        self.state_, self.transcript_ = run_game(n, rounds, oracle, rng)
        self.expansion_ = state_expansion(self.state_)
        return self

    def transform(self, X=None):
        check_is_fitted(self, "state_")
        return list(self.state_.edges)

    def fit_transform(self, X, y=None):
        return self.fit(X, y).transform(X)


__all__ = ["CutMatchingGame", "DegreeFourSparsifier", "DegreeThreeSparsifier"]
