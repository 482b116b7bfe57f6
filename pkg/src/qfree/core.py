"""Hypercube edges, subcubes and their canonical indexing.

Conventions used throughout the package:

* Coordinates are 1-based and read left-to-right, so the bracket token
  ``[0*10100]`` has its star at coordinate 2.
* Bit words pack coordinates left-to-right with the leftmost coordinate in
  the most significant bit, so the token above has fixed_bits 0b010100.
* The dense edge index of Q_n is star-major: all edges of parallel class 1
  first, then class 2, and so on.  A parallel class is therefore a
  contiguous index range of length 2^(n-1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

MAX_DIM = 30


class ParseError(ValueError):
    """Malformed bracket token or edge-list input."""


def popcount(x: int) -> int:
    return x.bit_count()


def total_edges(n: int) -> int:
    """Number of edges of Q_n, n * 2^(n-1)."""
    return n << (n - 1)


def _check_dim(n: int) -> None:
    if not 1 <= n <= MAX_DIM:
        raise ValueError(f"dimension {n} out of supported range 1..{MAX_DIM}")


@dataclass(frozen=True, order=True)
class EdgeRef:
    """One edge of Q_n in star notation: star coordinate plus fixed bits."""

    n: int
    star_pos: int  # 1-based coordinate of the '*'
    fixed_bits: int  # the other n-1 coordinates, leftmost = MSB

    def __post_init__(self):
        _check_dim(self.n)
        if not 1 <= self.star_pos <= self.n:
            raise ValueError(f"star_pos {self.star_pos} out of range for n={self.n}")
        if not 0 <= self.fixed_bits < (1 << (self.n - 1)):
            raise ValueError(f"fixed_bits {self.fixed_bits} out of range for n={self.n}")


@dataclass(frozen=True)
class Vertex:
    """A vertex of Q_n as an n-bit word."""

    n: int
    bits: int

    @property
    def parity(self) -> int:
        return popcount(self.bits) & 1


@dataclass(frozen=True)
class Subcube:
    """A d-dimensional subcube of Q_n: d star coordinates, the rest fixed."""

    n: int
    stars: tuple  # sorted 1-based coordinate indices
    fixed_bits: int  # the remaining n-d coordinates, leftmost = MSB

    @property
    def d(self) -> int:
        return len(self.stars)


def parse_edge(text: str) -> EdgeRef:
    """Parse a bracket token like ``[0*10100]`` into an EdgeRef."""
    if len(text) < 3 or text[0] != "[" or text[-1] != "]":
        raise ParseError(f"bad edge token {text!r}: expected [...] brackets")
    body = text[1:-1]
    n = len(body)
    if n > MAX_DIM:
        raise ParseError(f"bad edge token {text!r}: dimension {n} exceeds {MAX_DIM}")
    star_pos = 0
    fixed = 0
    for i, ch in enumerate(body, start=1):
        if ch == "*":
            if star_pos:
                raise ParseError(f"bad edge token {text!r}: more than one star")
            star_pos = i
        elif ch == "0":
            fixed <<= 1
        elif ch == "1":
            fixed = (fixed << 1) | 1
        else:
            raise ParseError(f"bad edge token {text!r}: illegal character {ch!r}")
    if not star_pos:
        raise ParseError(f"bad edge token {text!r}: no star")
    return EdgeRef(n, star_pos, fixed)


def format_edge(e: EdgeRef) -> str:
    chars = []
    k = e.n - 2  # bit index of the leftmost fixed coordinate
    for pos in range(1, e.n + 1):
        if pos == e.star_pos:
            chars.append("*")
        else:
            chars.append("1" if (e.fixed_bits >> k) & 1 else "0")
            k -= 1
    return "[" + "".join(chars) + "]"


def edge_index(e: EdgeRef) -> int:
    """Dense star-major index in [0, n*2^(n-1))."""
    return ((e.star_pos - 1) << (e.n - 1)) | e.fixed_bits


def edge_from_index(n: int, i: int) -> EdgeRef:
    _check_dim(n)
    if not 0 <= i < total_edges(n):
        raise ValueError(f"edge index {i} out of range for n={n}")
    return EdgeRef(n, (i >> (n - 1)) + 1, i & ((1 << (n - 1)) - 1))


def edge_endpoints(e: EdgeRef) -> tuple:
    """The two endpoints of e, as Vertex values (star set to 0 and to 1)."""
    low_len = e.n - e.star_pos
    low_mask = (1 << low_len) - 1
    high = (e.fixed_bits >> low_len) << (low_len + 1)
    low = e.fixed_bits & low_mask
    v0 = high | low
    return Vertex(e.n, v0), Vertex(e.n, v0 | (1 << low_len))


def edge_p_value(e: EdgeRef) -> int:
    """(#ones left of the star) - (#ones right of the star)."""
    low_len = e.n - e.star_pos
    before = popcount(e.fixed_bits >> low_len)
    after = popcount(e.fixed_bits & ((1 << low_len) - 1))
    return before - after


def enumerate_subcubes(n: int, d: int):
    """Yield every d-subcube of Q_n once: stars in lexicographic combination
    order, fixed_bits ascending within each star set."""
    _check_dim(n)
    if not 0 <= d <= n:
        raise ValueError(f"subcube dimension {d} out of range for n={n}")
    nfixed = n - d
    for stars in itertools.combinations(range(1, n + 1), d):
        for fixed in range(1 << nfixed):
            yield Subcube(n, stars, fixed)


def subcube_coords(s: Subcube):
    """Expand a subcube to an n-list of coordinate values, '*' at stars."""
    coords = []
    k = s.n - s.d - 1  # bit index of the leftmost fixed coordinate
    for pos in range(1, s.n + 1):
        if pos in s.stars:
            coords.append("*")
        else:
            coords.append((s.fixed_bits >> k) & 1)
            k -= 1
    return coords


def format_subcube(s: Subcube) -> str:
    return "[" + "".join("*" if c == "*" else str(c) for c in subcube_coords(s)) + "]"


def _pack(coords) -> int:
    word = 0
    for c in coords:
        word = (word << 1) | c
    return word


def subcube_edges(s: Subcube):
    """The d*2^(d-1) edges lying inside s."""
    if s.d < 1:
        raise ValueError("subcube of dimension 0 has no edges")
    coords = subcube_coords(s)
    stars = list(s.stars)
    for star in stars:
        others = [p for p in stars if p != star]
        for bits in range(1 << (s.d - 1)):
            cc = list(coords)
            for j, p in enumerate(others):
                cc[p - 1] = (bits >> (s.d - 2 - j)) & 1
            del cc[star - 1]
            yield EdgeRef(s.n, star, _pack(cc))


@lru_cache(maxsize=None)
def subcube_tables(n: int, d: int):
    """All d-subcubes of Q_n with their edge-index bitmasks, plus, for every
    edge index, the masks of the subcubes containing that edge.

    Returns (subcubes, masks, per_edge) where per_edge[i] is a tuple of
    positions into `masks`.
    """
    subcubes = []
    masks = []
    per_edge = [[] for _ in range(total_edges(n))]
    for s in enumerate_subcubes(n, d):
        mask = 0
        idxs = []
        for e in subcube_edges(s):
            i = edge_index(e)
            mask |= 1 << i
            idxs.append(i)
        pos = len(subcubes)
        subcubes.append(s)
        masks.append(mask)
        for i in idxs:
            per_edge[i].append(pos)
    return tuple(subcubes), tuple(masks), tuple(tuple(p) for p in per_edge)
