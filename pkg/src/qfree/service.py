"""FastAPI service exposing the library.  Every endpoint is a stateless
compute call; the CLI is a thin client of this app."""

from __future__ import annotations

import time

from fastapi import FastAPI, HTTPException

from . import coloring as coloring_mod
from . import general as general_mod
from . import product as product_mod
from . import recurrence as recurrence_mod
from . import search as search_mod
from . import subgraph as subgraph_mod
from .core import (
    ParseError,
    edge_endpoints,
    edge_p_value,
    format_edge,
    format_subcube,
    parse_edge,
)
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    ClassStat,
    ColoringInfo,
    ColoringSpec,
    ColoringSplitRequest,
    ColoringSplitResponse,
    ColoringValidateRequest,
    ColoringValidateResponse,
    ConstructRequest,
    ConstructResponse,
    ExactSearchRequest,
    GeneralRequest,
    GeneralResponse,
    GraphSpec,
    PerturbRequest,
    RecurRequest,
    RecurResponse,
    SearchResponse,
    TableRowModel,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(title="qfree", description="Q3-free and C4-free hypercube subgraph toolkit")


def _bad_request(msg: str):
    raise HTTPException(status_code=422, detail=msg)


def _load_graph(spec: GraphSpec) -> subgraph_mod.CubeSubgraph:
    try:
        edges = [parse_edge(t) for t in spec.edges]
        n = spec.n
        if n is None:
            if not edges:
                _bad_request("cannot infer n from an empty edge list")
            n = edges[0].n
        return subgraph_mod.from_edge_list(n, edges, spec.mode)
    except (ParseError, ValueError) as exc:
        _bad_request(str(exc))


def _load_coloring(spec: ColoringSpec) -> coloring_mod.AeoColoring:
    try:
        if spec.name is not None:
            return coloring_mod.builtin(spec.name)
        if spec.m is None:
            _bad_request("coloring needs either a builtin name or m + edge lists")
        return coloring_mod.make_coloring(spec.m, spec.e_edges, spec.o_edges)
    except (ParseError, ValueError) as exc:
        _bad_request(str(exc))


def _forbid_dim(forbid) -> int:
    if forbid == "q2":
        return 2
    if forbid == "q3":
        return 3
    d = int(forbid)
    if d < 2:
        _bad_request(f"forbidden subcube dimension must be >= 2, got {d}")
    return d


def _class_stats(G):
    pairs, best = subgraph_mod.parallel_class_stats(G)
    stats = [ClassStat(direction=i + 1, present=p, omitted=o)
             for i, (p, o) in enumerate(pairs)]
    return stats, best


def _coloring_info(c, name=None) -> ColoringInfo:
    from .core import edge_from_index
    from .subgraph import bit_indices

    st = c.stats
    return ColoringInfo(
        name=name,
        m=c.m,
        count_a=st.count_a,
        count_e=st.count_e,
        count_o=st.count_o,
        e_edges=[format_edge(edge_from_index(c.m, i)) for i in bit_indices(c.e_mask)],
        o_edges=[format_edge(edge_from_index(c.m, i)) for i in bit_indices(c.o_mask)],
    )


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    t0 = time.monotonic()
    G = _load_graph(req.graph)
    d = _forbid_dim(req.forbid)
    if d > G.n:
        free, witness, nviol = True, None, 0
    else:
        found = subgraph_mod.violations(G, d, workers=req.workers)
        free, witness, nviol = (not found), (found[0] if found else None), len(found)
    stats, best = _class_stats(G)
    return VerifyResponse(
        n=G.n,
        forbid_dimension=d,
        present_count=G.present_count,
        omitted_count=G.omitted_count,
        free=free,
        witness=None if witness is None else format_subcube(witness),
        violation_count=nviol,
        class_stats=stats,
        best_direction=best,
        elapsed=time.monotonic() - t0,
    )


@app.post("/analyze", response_model=AnalyzeResponse)
def analyze(req: AnalyzeRequest) -> AnalyzeResponse:
    t0 = time.monotonic()
    G = _load_graph(req.graph)
    d = _forbid_dim(req.forbid)
    stats, best = _class_stats(G)
    free, _ = subgraph_mod.is_free(G, d)
    maximal = None
    addable = []
    if free:
        add = subgraph_mod.addable_edges(G, d)
        maximal = not add
        from .core import edge_from_index

        addable = [format_edge(edge_from_index(G.n, i)) for i in add]
    even = sum(1 for e in G.present_edges() if edge_endpoints(e)[0].parity == 0)
    hist: dict[int, int] = {}
    for e in G.present_edges():
        p = edge_p_value(e)
        hist[p] = hist.get(p, 0) + 1
    return AnalyzeResponse(
        n=G.n,
        present_count=G.present_count,
        omitted_count=G.omitted_count,
        class_stats=stats,
        best_direction=best,
        free=free,
        maximal=maximal,
        addable_edges=addable,
        parity_split=(even, G.present_count - even),
        p_value_histogram=hist,
        elapsed=time.monotonic() - t0,
    )


@app.post("/construct", response_model=ConstructResponse)
def construct(req: ConstructRequest) -> ConstructResponse:
    t0 = time.monotonic()
    base = _load_graph(req.base)
    col = _load_coloring(req.coloring)
    d = 3 if req.target == "q3" else 2
    free, witness = subgraph_mod.is_free(base, d)
    if not free:
        _bad_request(f"base graph is not {req.target}-free "
                     f"(witness {format_subcube(witness)})")
    spec = product_mod.ProductSpec(
        base=base,
        coloring=col,
        direction=req.direction,
        parity_convention=req.parity_convention,
        target=req.target,
    )
    try:
        P = product_mod.build_product(spec)
    except ValueError as exc:
        _bad_request(str(exc))
    direction = spec.direction if spec.direction is not None else subgraph_mod.best_direction(base)
    split = subgraph_mod.split_by_direction(base, direction)
    predicted = product_mod.predicted_edge_count(
        base.present_count, len(split.crossing), col.stats, base.n)
    out_free = out_witness = None
    if req.verify:
        ok, w = subgraph_mod.is_free(P, d)
        out_free = ok
        out_witness = None if w is None else format_subcube(w)
    return ConstructResponse(
        n=P.n,
        present_count=P.present_count,
        omitted_count=P.omitted_count,
        predicted_count=predicted,
        base_edge_count=base.present_count,
        base_class_count=len(split.crossing),
        direction=direction,
        free=out_free,
        witness=out_witness,
        edges=[format_edge(e) for e in P.omitted_edges()],
        elapsed=time.monotonic() - t0,
    )


@app.post("/recur", response_model=RecurResponse)
def recur(req: RecurRequest) -> RecurResponse:
    col = _load_coloring(req.coloring)
    try:
        rows = recurrence_mod.bound_table(dict(req.seeds), col.stats, req.k_max)
    except (ValueError, OverflowError) as exc:
        _bad_request(str(exc))
    return RecurResponse(
        rows=[
            TableRowModel(
                k=r.k,
                lower_bound=r.lower_bound,
                upper_bound=r.upper_bound,
                lb_ratio=r.lb_ratio,
                ub_ratio=r.ub_ratio,
                seeded=r.seeded,
            )
            for r in rows
        ],
        text=recurrence_mod.format_table(rows),
    )


@app.post("/general", response_model=GeneralResponse)
def general(req: GeneralRequest) -> GeneralResponse:
    t0 = time.monotonic()
    if req.n < 3:
        _bad_request("n must be >= 3")
    policy = "smallest" if req.residue == "best" else req.residue
    try:
        G, cls = general_mod.general_construction(req.n, policy)
    except ValueError as exc:
        _bad_request(str(exc))
    return GeneralResponse(
        n=req.n,
        residue=cls.r,
        class_size=cls.size,
        class_sizes=[general_mod.residue_class_size(req.n, r) for r in range(4)],
        present_count=G.present_count,
        omitted_count=G.omitted_count,
        free=True,  # general_construction verifies before returning
        omitted_edges=[format_edge(e) for e in G.omitted_edges()],
        elapsed=time.monotonic() - t0,
    )


def _search_response(r: search_mod.SearchResult, improved=None) -> SearchResponse:
    stats, best = _class_stats(r.best)
    return SearchResponse(
        n=r.best.n,
        present_count=r.best.present_count,
        omitted_count=r.best.omitted_count,
        optimal=r.optimal,
        improved=improved,
        nodes_explored=r.nodes_explored,
        elapsed=r.elapsed,
        note=r.note,
        omitted_edges=[format_edge(e) for e in r.best.omitted_edges()],
        class_stats=stats,
        best_direction=best,
    )


def _search_config(m) -> search_mod.SearchConfig:
    return search_mod.SearchConfig(
        time_budget=m.time_budget,
        remove_t=m.remove_t,
        workers=m.workers,
        rng_seed=m.rng_seed,
        node_limit=m.node_limit,
        sample_limit=m.sample_limit,
    )


@app.post("/search/exact", response_model=SearchResponse)
def search_exact(req: ExactSearchRequest) -> SearchResponse:
    try:
        r = search_mod.exact_min_hitting(req.n, req.d, _search_config(req.config))
    except ValueError as exc:
        _bad_request(str(exc))
    return _search_response(r)


@app.post("/search/perturb", response_model=SearchResponse)
def search_perturb(req: PerturbRequest) -> SearchResponse:
    G = _load_graph(req.graph)
    try:
        r = search_mod.perturb(G, req.d, _search_config(req.config))
    except ValueError as exc:
        _bad_request(str(exc))
    return _search_response(r, improved=r.best.present_count > G.present_count)


@app.get("/colorings", response_model=list[ColoringInfo])
def colorings() -> list[ColoringInfo]:
    return [_coloring_info(coloring_mod.builtin(name), name)
            for name in coloring_mod.BUILTIN_NAMES]


@app.post("/coloring/validate", response_model=ColoringValidateResponse)
def coloring_validate(req: ColoringValidateRequest) -> ColoringValidateResponse:
    col = _load_coloring(req.coloring)
    report = coloring_mod.validate(col, req.target)
    return ColoringValidateResponse(
        ok=report.ok,
        target=req.target,
        coloring=_coloring_info(col, req.coloring.name),
        violations=[{"condition": cond, "subcube": format_subcube(s)}
                    for cond, s in report.violations],
    )


@app.post("/coloring/split", response_model=ColoringSplitResponse)
def coloring_split(req: ColoringSplitRequest) -> ColoringSplitResponse:
    H = _load_graph(req.graph)
    try:
        col = coloring_mod.split_nonedges_to_eo(H)
    except coloring_mod.SplitFailure as exc:
        return ColoringSplitResponse(
            ok=False,
            reason=exc.reason,
            witness=None if exc.witness is None else format_subcube(exc.witness),
        )
    return ColoringSplitResponse(ok=True, coloring=_coloring_info(col))
