import networkx as nx
import numpy as np
import pytest
from sklearn.base import clone

from twsparse import CutMatchingGame, DegreeFourSparsifier, DegreeThreeSparsifier, generate_from_grid
from twsparse._validation import (
    NotFittedError,
    check_graph,
    check_positive_int,
    check_random_state,
    check_system,
)


def test_degree_three_fit_transform():
    g, pos = generate_from_grid(2, 4)
    est = DegreeThreeSparsifier(n_expanders=2, seed=1)
    out = est.fit_transform(pos)
    assert out.max_degree() <= 3
    assert est.certificate_["ok"]
    assert est.config_.rstar == 2
    again = clone(est).fit((g, pos)).transform((g, pos))
    assert again == out


def test_degree_four():
    _, pos = generate_from_grid(2, 2)
    est = DegreeFourSparsifier(seed=0).fit(pos)
    assert est.graph_.max_degree() <= 4 and est.certificate_["degree"] == 4
    assert "n_expanders" not in est.get_params()


def test_not_fitted_and_bad_params():
    with pytest.raises(NotFittedError):
        DegreeThreeSparsifier().transform(None)
    _, pos = generate_from_grid(2, 4)
    with pytest.raises(ValueError):
        DegreeThreeSparsifier(n_expanders=3).fit(pos)
    with pytest.raises(ValueError):
        DegreeThreeSparsifier(seed=None).fit(pos)
    _, odd = generate_from_grid(3, 2)
    with pytest.raises(ValueError):
        DegreeThreeSparsifier().fit(odd)


def test_cut_matching_game():
    game = CutMatchingGame(seed=2).fit(8)
    assert game.state_.degrees() == [90] * 8
    assert game.expansion_.exact and game.expansion_.value > 0
    edges = CutMatchingGame(rounds=2, matching="sorted", seed=2).fit_transform(8)
    assert len(edges) == 8
    with pytest.raises(ValueError):
        CutMatchingGame(matching="greedy").fit(8)
    with pytest.raises(ValueError):
        CutMatchingGame().fit(5)


def test_validation_helpers():
    assert check_graph(nx.path_graph(3)).number_of_edges() == 2
    assert check_graph([(0, 1), (1, 2, "red")]).number_of_vertices() == 3
    with pytest.raises(ValueError):
        check_graph([(0, 1, 2, 3)])
    with pytest.raises(TypeError):
        check_graph(5)
    with pytest.raises(TypeError):
        check_positive_int(True, "x")
    with pytest.raises(ValueError):
        check_positive_int(0, "x")
    rng = np.random.default_rng(0)
    assert check_random_state(rng) is rng
    g, pos = generate_from_grid(2, 2)
    assert check_system(pos)[1] is pos
    with pytest.raises(ValueError):
        check_system((nx.path_graph(3), pos))
    with pytest.raises(TypeError):
        check_system(g)
