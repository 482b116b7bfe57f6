import pytest

from qfree import subgraph
from qfree.search import SearchConfig, exact_min_hitting, perturb
from qfree.subgraph import from_edge_list


def test_exact_q3():
    r = exact_min_hitting(3, 3)
    assert r.optimal
    assert r.best.omitted_count == 1
    assert subgraph.is_free(r.best, 3)[0]


def test_exact_q4(g4_result):
    assert g4_result.optimal
    assert g4_result.best.omitted_count == 3
    # pigeonhole: 3 omissions over 4 classes leave some class full
    pairs, best = subgraph.parallel_class_stats(g4_result.best)
    assert pairs[best - 1] == (8, 0)


def test_exact_q5(g5_result):
    assert g5_result.optimal  # the search exhausted: no 7-edge set exists
    assert g5_result.best.omitted_count == 8
    assert g5_result.best.present_count == 72
    pairs, best = subgraph.parallel_class_stats(g5_result.best)
    assert pairs[best - 1] == (16, 0)


def test_exact_deterministic_across_workers():
    r1 = exact_min_hitting(4, 3, SearchConfig(workers=1))
    r2 = exact_min_hitting(4, 3, SearchConfig(workers=3))
    assert r1.best.present == r2.best.present
    assert r1.optimal and r2.optimal


def test_exact_budget_exhaustion_flagged():
    r = exact_min_hitting(5, 3, SearchConfig(node_limit=2000))
    assert not r.optimal
    assert "budget" in r.note
    assert subgraph.is_free(r.best, 3)[0]


def test_exact_c4_target():
    r = exact_min_hitting(3, 2)
    assert r.optimal
    assert subgraph.is_free(r.best, 2)[0]
    assert r.best.omitted_count == 3  # 12 - ex(Q3, C4) = 12 - 9


def test_perturb_rejects_unfree_input():
    with pytest.raises(ValueError):
        perturb(subgraph.full_graph(3), 3)


def test_perturb_t0_completes():
    G = from_edge_list(3, ["[00*]", "[*11]", "[1*0]"], "omitted")
    r = perturb(G, 3, SearchConfig(remove_t=0))
    assert r.best.present_count == 11
    assert r.best.present & G.present == G.present


def test_perturb_never_shrinks(g4):
    r = perturb(g4, 3, SearchConfig(remove_t=2))
    assert r.best.present_count >= g4.present_count
    assert subgraph.is_free(r.best, 3)[0]


def test_perturb_g7_no_improvement(g7):
    r = perturb(g7, 3, SearchConfig(remove_t=2))
    assert r.optimal  # full pair enumeration ran to completion
    assert r.best.present == g7.present


def test_perturb_deterministic_across_workers(g7):
    r1 = perturb(g7, 3, SearchConfig(remove_t=2, workers=1))
    r4 = perturb(g7, 3, SearchConfig(remove_t=2, workers=4))
    assert r1.best.present == r4.best.present


def test_perturb_sampled_t3(g7):
    cfg = SearchConfig(remove_t=3, sample_limit=50, rng_seed=42)
    r = perturb(g7, 3, cfg)
    assert "sampled" in r.note
    assert r.best.present_count >= g7.present_count
    again = perturb(g7, 3, cfg)
    assert again.best.present == r.best.present
