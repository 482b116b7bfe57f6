"""The generalized BHN product: recombine a split base subgraph of Q_k with
an aeo-colored Q_m into a subgraph of Q_{k+m-1}.

Output coordinate layout: the k-1 base coordinates (split coordinate
deleted, original order) come first, then the m coloring coordinates.
For each vertex u of Q_m, the copy placed at u is the direction-bit-0 half
when u has even parity and the direction-bit-1 half otherwise.  An a-edge
of Q_m contributes the crossing set between its two copies; an e-edge
contributes the cross edges at base vertices of the convention parity and
an o-edge those of the opposite parity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import AeoColoring, validate
from .core import EdgeRef, edge_from_index, edge_index, popcount, total_edges
from .recurrence import step_edges
from .subgraph import CubeSubgraph, best_direction, bit_indices, split_by_direction


@dataclass(frozen=True)
class ProductSpec:
    base: CubeSubgraph
    coloring: AeoColoring
    direction: int | None = None  # None: the argmax-present parallel class
    parity_convention: int = 0  # parity of base vertices carrying e-edges
    target: str = "q3"


def predicted_edge_count(e_k: int, p_k: int, stats, k: int) -> int:
    """Closed-form edge count of the product; same formula as the edge-form
    step recurrence."""
    return step_edges(e_k, p_k, stats, k)


def build_product(spec: ProductSpec) -> CubeSubgraph:
    base = spec.base
    col = spec.coloring
    k, m = base.n, col.m
    if k < 2:
        raise ValueError("base dimension must be >= 2")
    if spec.parity_convention not in (0, 1):
        raise ValueError("parity_convention must be 0 or 1")
    report = validate(col, spec.target)
    if not report.ok:
        raise ValueError(f"coloring fails {spec.target} validation: "
                         f"{len(report.violations)} violating subcubes")

    direction = spec.direction if spec.direction is not None else best_direction(base)
    split = split_by_direction(base, direction)
    n_out = k + m - 1
    half_bits = 1 << (n_out - 1)  # fixed-bits width per output class
    mask = 0

    # intra-copy edges: star among the k-1 base coordinates
    halves = (split.half0.present, split.half1.present)
    for u in range(1 << m):
        hp = halves[popcount(u) & 1]
        for i in bit_indices(hp):
            f = edge_from_index(k - 1, i)
            out = EdgeRef(n_out, f.star_pos, (f.fixed_bits << m) | u)
            mask |= 1 << edge_index(out)

    # cross edges: star among the m coloring coordinates
    crossing = split.crossing
    conv = spec.parity_convention
    for i in range(total_edges(m)):
        g = edge_from_index(m, i)
        color = col.color_of(i)
        star_out = (k - 1) + g.star_pos
        for v in range(1 << (k - 1)):
            if color == "a":
                keep = v in crossing
            elif color == "e":
                keep = (popcount(v) & 1) == conv
            else:
                keep = (popcount(v) & 1) != conv
            if keep:
                out = EdgeRef(n_out, star_out, (v << (m - 1)) | g.fixed_bits)
                mask |= 1 << edge_index(out)

    result = CubeSubgraph(n_out, mask)
    e_k = base.present_count
    p_k = len(crossing)
    expected = predicted_edge_count(e_k, p_k, col.stats, k)
    assert result.present_count == expected, \
        f"product edge count {result.present_count} != predicted {expected}"
    return result
