"""aeo-colorings of Q_m: built-in fixtures, validity conditions for the C4
and Q3 targets, and the backtracking e/o splitter for C4-free graphs.

A coloring assigns every edge of Q_m one of the colors a, e, o.  In the
product construction, a-edges become copies of the crossing set, e-edges
become cross edges on one vertex-parity class and o-edges on the other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import edge_from_index, edge_index, parse_edge, popcount, subcube_tables, total_edges
from .subgraph import CubeSubgraph, bit_indices, is_free

COLORS = ("a", "e", "o")  # fixed order, for deterministic serialization
BUILTIN_NAMES = ("c4_simple", "q3_aeo", "q4_aeo", "q5_aeo")


@dataclass(frozen=True)
class ColoringStats:
    m: int
    count_a: int
    count_e: int
    count_o: int


@dataclass(frozen=True)
class AeoColoring:
    """Total edge coloring of Q_m.  Edges not in e_mask or o_mask are a."""

    m: int
    e_mask: int
    o_mask: int

    def __post_init__(self):
        if self.e_mask & self.o_mask:
            raise ValueError("an edge cannot be both e and o")
        if (self.e_mask | self.o_mask) >> total_edges(self.m):
            raise ValueError("color mask wider than the edge set of Q_m")

    @property
    def stats(self) -> ColoringStats:
        ce = popcount(self.e_mask)
        co = popcount(self.o_mask)
        return ColoringStats(self.m, total_edges(self.m) - ce - co, ce, co)

    def color_of(self, i: int) -> str:
        if (self.e_mask >> i) & 1:
            return "e"
        if (self.o_mask >> i) & 1:
            return "o"
        return "a"

    def a_subgraph(self) -> CubeSubgraph:
        full = (1 << total_edges(self.m)) - 1
        return CubeSubgraph(self.m, full & ~(self.e_mask | self.o_mask))


def make_coloring(m: int, e_edges, o_edges) -> AeoColoring:
    em = om = 0
    for tok in e_edges:
        e = parse_edge(tok) if isinstance(tok, str) else tok
        if e.n != m:
            raise ValueError(f"edge {tok} has dimension {e.n}, expected {m}")
        em |= 1 << edge_index(e)
    for tok in o_edges:
        e = parse_edge(tok) if isinstance(tok, str) else tok
        if e.n != m:
            raise ValueError(f"edge {tok} has dimension {e.n}, expected {m}")
        om |= 1 << edge_index(e)
    return AeoColoring(m, em, om)


_BUILTINS = {
    "c4_simple": (2, ["[*1]"], []),
    "q3_aeo": (3, ["[00*]", "[*11]"], ["[1*0]"]),
    "q4_aeo": (
        4,
        ["[*000]", "[*111]", "[1*01]", "[0*10]"],
        ["[00*1]", "[11*0]", "[101*]", "[010*]"],
    ),
    "q5_aeo": (
        5,
        ["[*0001]", "[*1000]", "[*0111]", "[*1110]", "[1010*]", "[1101*]",
         "[0*101]", "[0*010]", "[10*10]", "[11*01]", "[001*0]", "[010*1]"],
        ["[*0100]", "[*0010]", "[*1101]", "[*1011]", "[0000*]", "[0111*]",
         "[1*000]", "[1*111]", "[00*11]", "[01*00]", "[111*0]", "[100*1]"],
    ),
}


def builtin(name: str) -> AeoColoring:
    try:
        m, e_edges, o_edges = _BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown builtin coloring {name!r}; choose from {BUILTIN_NAMES}")
    return make_coloring(m, e_edges, o_edges)


@dataclass(frozen=True)
class ValidationReport:
    target: str
    ok: bool
    violations: tuple  # (condition, Subcube) pairs

    def __bool__(self):
        return self.ok


def validate(c: AeoColoring, target: str) -> ValidationReport:
    """Check the validity conditions of a coloring.

    target="q3": every Q3 subcube has >=1 e-edge and >=1 o-edge, and every
    Q2 subcube has >=1 non-a edge.  target="c4": every Q2 subcube has >=1
    e-edge and >=1 o-edge.  Conditions over empty subcube ranges hold
    vacuously (m=2 has no Q3).
    """
    if target not in ("q3", "c4"):
        raise ValueError(f"unknown target {target!r}")
    bad = []
    if target == "q3":
        if c.m >= 3:
            subcubes, masks, _ = subcube_tables(c.m, 3)
            for s, mask in zip(subcubes, masks):
                if not (mask & c.e_mask) or not (mask & c.o_mask):
                    bad.append(("q3_needs_e_and_o", s))
        subcubes, masks, _ = subcube_tables(c.m, 2)
        non_a = c.e_mask | c.o_mask
        for s, mask in zip(subcubes, masks):
            if not (mask & non_a):
                bad.append(("q2_needs_non_a", s))
    else:
        subcubes, masks, _ = subcube_tables(c.m, 2)
        for s, mask in zip(subcubes, masks):
            if not (mask & c.e_mask) or not (mask & c.o_mask):
                bad.append(("c4_needs_e_and_o", s))
    return ValidationReport(target, not bad, tuple(bad))


class SplitFailure(Exception):
    """No valid e/o split of the non-edges exists (or precondition broken)."""

    def __init__(self, reason, witness=None):
        super().__init__(reason)
        self.reason = reason
        self.witness = witness


def split_nonedges_to_eo(H: CubeSubgraph) -> AeoColoring:
    """Color the edges of a C4-free H a, and 2-color its non-edges e/o by
    backtracking so that every Q3 subcube gets at least one of each.

    Deterministic: variables in ascending edge index, value e tried first.
    """
    free, witness = is_free(H, 2)
    if not free:
        raise SplitFailure("input is not C4-free", witness)
    m = H.n
    omitted = list(bit_indices(((1 << total_edges(m)) - 1) & ~H.present))
    var_of = {i: v for v, i in enumerate(omitted)}
    subcubes, masks, _ = subcube_tables(m, 3)
    full_omit = ((1 << total_edges(m)) - 1) & ~H.present
    constraints = []  # per Q3: list of variable numbers
    for s, mask in zip(subcubes, masks):
        vs = [var_of[i] for i in bit_indices(mask & full_omit)]
        if not vs:
            # H contains this Q3 entirely; a C4-free graph cannot, so this
            # only triggers when the precondition check above was bypassed
            raise SplitFailure("a Q3 subcube has no omitted edge", s)
        constraints.append(vs)
    cons_of_var = [[] for _ in omitted]
    for ci, vs in enumerate(constraints):
        for v in vs:
            cons_of_var[v].append(ci)

    colors = [None] * len(omitted)
    need = [[True, True] for _ in constraints]  # still missing [e, o]
    slack = [len(vs) for vs in constraints]  # unassigned vars per constraint

    def feasible(ci):
        missing = (1 if need[ci][0] else 0) + (1 if need[ci][1] else 0)
        return slack[ci] >= missing

    def assign(v, col):
        colors[v] = col
        touched = []
        ok = True
        for ci in cons_of_var[v]:
            slack[ci] -= 1
            sat = 0 if col == "e" else 1
            was = need[ci][sat]
            need[ci][sat] = False
            touched.append((ci, sat, was))
            if not feasible(ci):
                ok = False
        return ok, touched

    def undo(v, touched):
        colors[v] = None
        for ci, sat, was in touched:
            slack[ci] += 1
            need[ci][sat] = was

    def solve(v):
        if v == len(omitted):
            return True
        for col in ("e", "o"):
            ok, touched = assign(v, col)
            if ok and solve(v + 1):
                return True
            undo(v, touched)
        return False

    if not solve(0):
        raise SplitFailure("no valid e/o split exists")
    em = om = 0
    for v, i in enumerate(omitted):
        if colors[v] == "e":
            em |= 1 << i
        else:
            om |= 1 << i
    result = AeoColoring(m, em, om)
    report = validate(result, "q3")
    assert report.ok, "splitter produced an invalid coloring"
    return result


def coloring_to_text(c: AeoColoring) -> str:
    from .core import format_edge

    lines = [f"m={c.m}"]
    for label, mask in (("e", c.e_mask), ("o", c.o_mask)):
        toks = [format_edge(edge_from_index(c.m, i)) for i in bit_indices(mask)]
        lines.append(f"{label}: " + " ".join(toks))
    return "\n".join(lines) + "\n"


def coloring_from_text(text: str) -> AeoColoring:
    m = None
    groups = {"e": [], "o": []}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("m=") and m is None and current is None:
            m = int(line[2:])
            continue
        if line[:2] in ("e:", "o:"):
            current = line[0]
            line = line[2:]
        if current is None:
            raise ValueError(f"token outside an e:/o: group: {line!r}")
        for tok in line.replace(",", " ").split():
            groups[current].append(tok)
    tokens = groups["e"] + groups["o"]
    if m is None:
        if not tokens:
            raise ValueError("cannot infer m from an empty coloring file")
        m = len(tokens[0]) - 2
    return make_coloring(m, groups["e"], groups["o"])
