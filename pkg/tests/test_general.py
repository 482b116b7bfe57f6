import random

import pytest

from qfree import core, general, subgraph
from qfree.general import (
    case_witness,
    covering_check,
    general_construction,
    residue_class,
    residue_class_size,
)


def test_class_sizes_q3():
    assert [residue_class(3, r).size for r in range(4)] == [4, 3, 2, 3]


def test_class_members_q3_residue2():
    cls = residue_class(3, 2)
    toks = {core.format_edge(e)
            for e in subgraph.CubeSubgraph(3, cls.mask).present_edges()}
    assert toks == {"[*11]", "[11*]"}


@pytest.mark.parametrize("n", range(1, 13))
def test_classes_partition_edges(n):
    masks = [residue_class(n, r).mask for r in range(4)]
    union = 0
    for m in masks:
        assert union & m == 0
        union |= m
    assert union == (1 << core.total_edges(n)) - 1
    assert sum(m.bit_count() for m in masks) == core.total_edges(n)


@pytest.mark.parametrize("n", range(1, 13))
def test_combinatorial_sizes_match_enumeration(n):
    for r in range(4):
        assert residue_class_size(n, r) == residue_class(n, r).size


@pytest.mark.parametrize("n", range(3, 13))
def test_covering_all_residues(n):
    for r in range(4):
        ok, witness = covering_check(n, r)
        assert ok and witness is None


def test_smallest_class_at_most_quarter():
    for n in range(1, 21):
        sizes = [residue_class_size(n, r) for r in range(4)]
        assert min(sizes) <= core.total_edges(n) // 4


def test_construction_smallest_q3():
    G, cls = general_construction(3, "smallest")
    assert cls.r == 2
    assert G.present_count == 10
    assert subgraph.is_free(G, 3)[0]


def test_construction_fixed_residue_q7():
    G, cls = general_construction(7, 0)
    assert G.omitted_count == residue_class_size(7, 0)
    assert subgraph.is_free(G, 3)[0]


@pytest.mark.parametrize("n", range(3, 9))
def test_construction_free_all_residues(n):
    for r in range(4):
        G, _ = general_construction(n, r)
        # independent verification, not the covering argument
        assert subgraph.is_free(G, 3)[0]


def test_case_witness_whole_cube():
    s = core.Subcube(3, (1, 2, 3), 0)
    e1, e2 = case_witness(s, 0)
    assert {core.format_edge(e1), core.format_edge(e2)} == {"[*00]", "[*11]"}
    assert {core.edge_p_value(e1), core.edge_p_value(e2)} == {0, -2}


def test_case_witness_random_subcubes():
    rng = random.Random(31)
    subcubes = list(core.enumerate_subcubes(10, 3))
    for _ in range(10_000):
        s = rng.choice(subcubes)
        r = rng.randrange(4)
        e1, e2 = case_witness(s, r)
        p1, p2 = core.edge_p_value(e1), core.edge_p_value(e2)
        assert abs(p1 - p2) == 2
        assert r in (p1 % 4, p2 % 4)
        inside = {core.edge_index(e) for e in core.subcube_edges(s)}
        assert {core.edge_index(e1), core.edge_index(e2)} <= inside


def test_case_witness_rejects_non_q3():
    with pytest.raises(ValueError):
        case_witness(core.Subcube(4, (1, 2), 0), 0)
