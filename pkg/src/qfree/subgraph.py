"""Spanning subgraphs of Q_n as edge-membership bitmasks, with subcube
freeness verification, parallel-class statistics, splitting and maximality."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .core import (
    EdgeRef,
    Subcube,
    edge_from_index,
    edge_index,
    parse_edge,
    popcount,
    subcube_tables,
    total_edges,
)


@dataclass(frozen=True)
class CubeSubgraph:
    """A spanning subgraph of Q_n: bit i of `present` is edge_index i."""

    n: int
    present: int

    def __post_init__(self):
        if self.present >> total_edges(self.n):
            raise ValueError("membership mask wider than the edge set")

    @property
    def present_count(self) -> int:
        return popcount(self.present)

    @property
    def omitted_count(self) -> int:
        return total_edges(self.n) - self.present_count

    def has_edge(self, e: EdgeRef) -> bool:
        return bool((self.present >> edge_index(e)) & 1)

    def present_edges(self):
        return [edge_from_index(self.n, i) for i in bit_indices(self.present)]

    def omitted_edges(self):
        full = (1 << total_edges(self.n)) - 1
        return [edge_from_index(self.n, i) for i in bit_indices(full & ~self.present)]


@dataclass(frozen=True)
class SplitResult:
    """A graph split along one parallel class: two halves on Q_{n-1} plus the
    set of crossing parallel edges (keyed by their (n-1)-bit fixed words)."""

    direction: int
    half0: CubeSubgraph
    half1: CubeSubgraph
    crossing: frozenset


def bit_indices(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_graph(n: int) -> CubeSubgraph:
    return CubeSubgraph(n, (1 << total_edges(n)) - 1)


def empty_graph(n: int) -> CubeSubgraph:
    return CubeSubgraph(n, 0)


def from_edge_list(n: int, edges, mode: str = "present") -> CubeSubgraph:
    """Build a subgraph from EdgeRefs (or bracket tokens).

    mode="present" keeps exactly the listed edges; mode="omitted" keeps
    Q_n minus the listed edges.
    """
    if mode not in ("present", "omitted"):
        raise ValueError(f"unknown mode {mode!r}")
    mask = 0
    for e in edges:
        if isinstance(e, str):
            e = parse_edge(e)
        if e.n != n:
            raise ValueError(f"edge {e} has dimension {e.n}, expected {n}")
        bit = 1 << edge_index(e)
        if mask & bit:
            raise ValueError(f"duplicate edge at index {edge_index(e)}")
        mask |= bit
    if mode == "omitted":
        mask = ((1 << total_edges(n)) - 1) & ~mask
    return CubeSubgraph(n, mask)


def violations(G: CubeSubgraph, d: int, workers: int = 1):
    """All fully-present d-subcubes, in canonical enumeration order."""
    subcubes, masks, _ = subcube_tables(G.n, d)
    present = G.present

    def scan(lo, hi):
        return [i for i in range(lo, hi) if present & masks[i] == masks[i]]

    if workers <= 1 or len(masks) < 1024:
        hits = scan(0, len(masks))
    else:
        chunk = -(-len(masks) // workers)
        ranges = [(i, min(i + chunk, len(masks))) for i in range(0, len(masks), chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: scan(*r), ranges))
        hits = [i for part in parts for i in part]
    return [subcubes[i] for i in hits]


def is_free(G: CubeSubgraph, d: int, workers: int = 1):
    """True iff no d-subcube is fully present; otherwise also the first
    fully-present subcube in enumeration order as a witness."""
    if not 2 <= d <= G.n:
        # d > n is vacuously free; d < 2 is not a meaningful target
        if d < 2:
            raise ValueError("freeness target dimension must be >= 2")
        return True, None
    subcubes, masks, _ = subcube_tables(G.n, d)
    present = G.present
    if workers > 1:
        found = violations(G, d, workers=workers)
        return (True, None) if not found else (False, found[0])
    for i, m in enumerate(masks):
        if present & m == m:
            return False, subcubes[i]
    return True, None


def parallel_class_stats(G: CubeSubgraph):
    """Per-direction (present, omitted) counts plus the argmax-present
    direction (ties broken toward the lowest index)."""
    half = 1 << (G.n - 1)
    class_mask = (1 << half) - 1
    pairs = []
    best_dir, best_present = 1, -1
    # star-major layout: class `direction` occupies indices
    # [(direction-1)*2^(n-1), direction*2^(n-1))
    for direction in range(1, G.n + 1):
        cnt = popcount((G.present >> ((direction - 1) << (G.n - 1))) & class_mask)
        pairs.append((cnt, half - cnt))
        if cnt > best_present:
            best_present, best_dir = cnt, direction
    return pairs, best_dir


def best_direction(G: CubeSubgraph) -> int:
    return parallel_class_stats(G)[1]


def split_by_direction(G: CubeSubgraph, direction: int) -> SplitResult:
    """Split along a parallel class into two Q_{n-1} halves plus the crossing
    edge set.  Half coordinates keep the original order with the split
    coordinate deleted."""
    n = G.n
    if n < 2:
        raise ValueError("cannot split Q_1")
    if not 1 <= direction <= n:
        raise ValueError(f"direction {direction} out of range for n={n}")
    h0 = h1 = 0
    crossing = []
    for i in bit_indices(G.present):
        e = edge_from_index(n, i)
        if e.star_pos == direction:
            crossing.append(e.fixed_bits)
            continue
        # coordinate `direction` sits at bit (n - 1 - direction) of fixed_bits
        # when star_pos > direction, else at bit (n - direction)
        if e.star_pos > direction:
            split_bit_pos = n - 1 - direction
            new_star = e.star_pos - 1
        else:
            split_bit_pos = n - direction
            new_star = e.star_pos
        side = (e.fixed_bits >> split_bit_pos) & 1
        low = e.fixed_bits & ((1 << split_bit_pos) - 1)
        high = e.fixed_bits >> (split_bit_pos + 1)
        new_fixed = (high << split_bit_pos) | low
        idx = edge_index(EdgeRef(n - 1, new_star, new_fixed))
        if side:
            h1 |= 1 << idx
        else:
            h0 |= 1 << idx
    return SplitResult(direction, CubeSubgraph(n - 1, h0), CubeSubgraph(n - 1, h1), frozenset(crossing))


def recombine(split: SplitResult) -> CubeSubgraph:
    """Inverse of split_by_direction (for the same direction)."""
    n = split.half0.n + 1
    direction = split.direction
    mask = 0
    for side, half in ((0, split.half0), (1, split.half1)):
        for i in bit_indices(half.present):
            e = edge_from_index(n - 1, i)
            if e.star_pos >= direction:
                split_bit_pos = n - 1 - direction
                new_star = e.star_pos + 1
            else:
                split_bit_pos = n - direction
                new_star = e.star_pos
            low = e.fixed_bits & ((1 << split_bit_pos) - 1)
            high = e.fixed_bits >> split_bit_pos
            new_fixed = (high << (split_bit_pos + 1)) | (side << split_bit_pos) | low
            mask |= 1 << edge_index(EdgeRef(n, new_star, new_fixed))
    for v in split.crossing:
        mask |= 1 << edge_index(EdgeRef(n, direction, v))
    return CubeSubgraph(n, mask)


def _blocked(present: int, bit_i: int, i: int, masks, per_edge) -> bool:
    """Would adding edge i complete some d-subcube?"""
    cand = present | bit_i
    for pos in per_edge[i]:
        m = masks[pos]
        if cand & m == m:
            return True
    return False


def addable_edges(G: CubeSubgraph, d: int):
    """Omitted edges whose addition keeps the graph d-free."""
    _, masks, per_edge = subcube_tables(G.n, d)
    present = G.present
    out = []
    for i in range(total_edges(G.n)):
        bit = 1 << i
        if present & bit:
            continue
        if not _blocked(present, bit, i, masks, per_edge):
            out.append(i)
    return out


def is_maximal(G: CubeSubgraph, d: int):
    """(maximal?, addable edge indices).  Input must be d-free."""
    free, witness = is_free(G, d)
    if not free:
        raise ValueError(f"graph is not {d}-free (witness {witness})")
    add = addable_edges(G, d)
    return not add, add


def greedy_complete(G: CubeSubgraph, d: int, order=None) -> CubeSubgraph:
    """Add omitted edges in the given index order whenever the addition keeps
    d-freeness.  Deterministic for a fixed order; result is maximal."""
    free, witness = is_free(G, d)
    if not free:
        raise ValueError(f"graph is not {d}-free (witness {witness})")
    _, masks, per_edge = subcube_tables(G.n, d)
    present = G.present
    if order is None:
        order = range(total_edges(G.n))
    for i in order:
        bit = 1 << i
        if present & bit:
            continue
        if not _blocked(present, bit, i, masks, per_edge):
            present |= bit
    return CubeSubgraph(G.n, present)
