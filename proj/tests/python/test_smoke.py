import pytest

import cnfscope as cs


def test_parse_round_trip():
    f, warnings = cs.parse_dimacs("c hi\np cnf 3 2\n1 -2 0\n2 3 0\n")
    assert warnings == []
    assert f.num_vars == 3 and f.num_clauses == 2
    g, _ = cs.parse_dimacs(cs.to_dimacs(f))
    assert g == f


def test_parse_error():
    with pytest.raises(ValueError):
        cs.parse_dimacs("p cnf 2 1\n1 5 0\n")


def test_random_3cnf_deterministic():
    a = cs.random_3cnf(50, 200, 7)
    b = cs.random_3cnf(50, 200, 7)
    assert a == b
    assert a.num_clauses == 200
    assert all(len(c) == 3 for c in a.clauses)


def test_unit_propagate():
    f = cs.CnfFormula(3, [[1], [-1, 2], [-2, 3, -1]])
    r = cs.unit_propagate(f)
    assert r["conflict"] is None
    assert r["formula"].num_clauses == 0


def test_graph_models():
    f = cs.CnfFormula(3, [[1, 2, 3]])
    vig = cs.build_graph(f, "vig")
    assert vig.node_count == 3 and vig.edge_count == 3
    cvig = cs.build_graph(f, "cvig")
    assert cvig.node_count == 4 and cvig.edge_count == 3
    assert sorted(vig.neighbors(0)) == [1, 2]


def test_cover_and_fit():
    f = cs.random_3cnf(300, 1275, 1)
    g = cs.build_graph(f, "vig")
    curve = cs.cover_curve(g)
    assert curve["counts"][0] == g.node_count
    fit = cs.fit_dimension(curve["counts"])
    assert fit["d"] > 0 and fit["beta"] > 0
    count, centers = cs.greedy_cover(g, 2)
    assert count == len(centers)


def test_alpha_and_communities():
    f = cs.random_3cnf(300, 1275, 3)
    hist = cs.occurrence_histogram(f)
    assert sum(k * c for k, c in hist) == 3 * 1275
    g = cs.build_graph(f, "vig", weighted=True)
    res = cs.fold_communities(g, seed=1)
    assert res["q"] == pytest.approx(cs.modularity(g, res["partition"]), abs=1e-9)


def test_extract_features():
    feats = cs.extract_features(cs.random_3cnf(200, 850, 5))
    assert feats["n"] == 200 and feats["m"] == 850
    for key in ("alpha", "q", "d", "d_b", "ratio"):
        assert key in feats


def test_predict_runtime():
    assert cs.predict_runtime([1.0, 1.0], [2.0, 4.0]) == pytest.approx(3.0)
