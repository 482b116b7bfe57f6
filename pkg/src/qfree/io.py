"""Edge-list file format shared by the CLI and the service.

Bracket tokens separated by commas and/or whitespace; '#' starts a comment;
an optional first line "n=<dim>" pins the dimension, otherwise it is
inferred from token length and must be uniform.  Present/omitted semantics
are carried out-of-band by a mode flag.
"""

from __future__ import annotations

from importlib import resources

from .core import ParseError, format_edge, parse_edge
from .subgraph import CubeSubgraph, from_edge_list


def parse_edge_tokens(text: str):
    """Return (n, list of EdgeRef) from edge-list text."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n=") and n is None and not edges:
            n = int(line[2:])
            continue
        for tok in line.replace(",", " ").split():
            e = parse_edge(tok)
            if n is None:
                n = e.n
            elif e.n != n:
                raise ParseError(
                    f"line {lineno}: edge {tok} has dimension {e.n}, expected {n}"
                )
            edges.append(e)
    if n is None:
        raise ParseError("empty edge list with no n=<dim> header")
    return n, edges


def load_subgraph(text: str, mode: str) -> CubeSubgraph:
    n, edges = parse_edge_tokens(text)
    return from_edge_list(n, edges, mode)


def dump_edges(edges, per_line: int = 6) -> str:
    toks = [format_edge(e) for e in edges]
    lines = [
        ",".join(toks[i : i + per_line]) for i in range(0, len(toks), per_line)
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def dump_subgraph(G: CubeSubgraph, mode: str = "present") -> str:
    edges = G.present_edges() if mode == "present" else G.omitted_edges()
    return f"n={G.n}\n" + dump_edges(edges)


def load_fixture_text(name: str) -> str:
    return resources.files("qfree.data").joinpath(name).read_text()


def g7_graph() -> CubeSubgraph:
    """The 392-edge Q3-free subgraph of Q7, shipped as its 56 omitted edges."""
    return load_subgraph(load_fixture_text("g7_omitted.txt"), "omitted")
