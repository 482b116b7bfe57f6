import math

import pytest
from hypothesis import given, strategies as st

from qfree import core


def test_parse_token_example():
    e = core.parse_edge("[0*10100]")
    assert e.n == 7
    assert e.star_pos == 2
    assert e.fixed_bits == 0b010100


def test_parse_smallest():
    e = core.parse_edge("[*0]")
    assert (e.n, e.star_pos, e.fixed_bits) == (2, 1, 0)


def test_parse_trailing_star():
    e = core.parse_edge("[00*]")
    assert (e.n, e.star_pos, e.fixed_bits) == (3, 3, 0)


@pytest.mark.parametrize("bad", ["[0*1*]", "[abc]", "0*1", "[***]", "[010]", "[]", "[*2]"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(core.ParseError) as exc:
        core.parse_edge(bad)
    assert bad.strip("[]")[:3] in str(exc.value) or bad in str(exc.value)


def test_edge_index_examples():
    assert core.edge_index(core.parse_edge("[*0]")) == 0
    assert core.edge_index(core.parse_edge("[1*]")) == 3


@pytest.mark.parametrize("n", range(1, 11))
def test_edge_index_bijection(n):
    seen = set()
    for i in range(core.total_edges(n)):
        e = core.edge_from_index(n, i)
        assert core.edge_index(e) == i
        assert core.parse_edge(core.format_edge(e)) == e
        seen.add(e)
    assert len(seen) == n * 2 ** (n - 1)


def test_edge_from_index_out_of_range():
    with pytest.raises(ValueError):
        core.edge_from_index(3, 12)


@given(st.integers(min_value=1, max_value=12), st.data())
def test_format_parse_roundtrip(n, data):
    i = data.draw(st.integers(min_value=0, max_value=core.total_edges(n) - 1))
    e = core.edge_from_index(n, i)
    assert core.parse_edge(core.format_edge(e)) == e


@pytest.mark.parametrize("n,d,count", [(3, 3, 1), (4, 3, 8), (9, 3, 5376)])
def test_subcube_counts_examples(n, d, count):
    assert sum(1 for _ in core.enumerate_subcubes(n, d)) == count


@pytest.mark.parametrize("n", range(1, 9))
def test_subcube_counts_formula(n):
    for d in range(n + 1):
        expected = math.comb(n, d) * 2 ** (n - d)
        got = list(core.enumerate_subcubes(n, d))
        assert len(got) == expected
        assert len(set(got)) == expected


def test_subcube_edges_counts():
    s3 = core.Subcube(3, (1, 2, 3), 0)
    edges = list(core.subcube_edges(s3))
    assert len(edges) == 12
    toks = {core.format_edge(e) for e in edges}
    assert {"[00*]", "[*11]", "[1*0]"} <= toks
    s2 = core.Subcube(4, (1, 3), 0b01)
    assert len(list(core.subcube_edges(s2))) == 4


def test_subcube_edges_lie_inside():
    for s in core.enumerate_subcubes(5, 3):
        coords = core.subcube_coords(s)
        for e in core.subcube_edges(s):
            tok = core.format_edge(e)[1:-1]
            assert tok[e.star_pos - 1] == "*"
            assert e.star_pos in s.stars
            for pos, c in enumerate(coords, start=1):
                if c != "*":
                    assert int(tok[pos - 1]) == c


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("d", [2, 3])
def test_every_edge_in_right_number_of_subcubes(n, d):
    _, _, per_edge = core.subcube_tables(n, d)
    expected = math.comb(n - 1, d - 1)
    assert all(len(p) == expected for p in per_edge)


def test_p_value_examples():
    assert core.edge_p_value(core.parse_edge("[1*0]")) == 1
    assert core.edge_p_value(core.parse_edge("[*000]")) == 0
    assert core.edge_p_value(core.parse_edge("[0*10100]")) == -2


def test_vertex_parity():
    v0, v1 = core.edge_endpoints(core.parse_edge("[1*0]"))
    assert v0.bits == 0b100 and v1.bits == 0b110
    assert v0.parity == 1 and v1.parity == 0


def test_dimension_cap():
    with pytest.raises(core.ParseError):
        core.parse_edge("[" + "0" * 30 + "*]")
    with pytest.raises(ValueError):
        core.EdgeRef(31, 1, 0)
