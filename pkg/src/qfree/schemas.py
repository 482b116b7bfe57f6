"""Pydantic request/response models for the HTTP service.

Graphs travel as bracket-token lists plus a present/omitted mode flag;
subcube witnesses are serialized as star patterns like "[0*1*0]".
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class GraphSpec(BaseModel):
    n: Optional[int] = None  # inferred from tokens when omitted
    edges: list[str] = Field(default_factory=list)
    mode: Literal["present", "omitted"] = "present"


class ColoringSpec(BaseModel):
    """Either a builtin name, or an explicit m + e/o token lists."""

    name: Optional[str] = None
    m: Optional[int] = None
    e_edges: list[str] = Field(default_factory=list)
    o_edges: list[str] = Field(default_factory=list)


class ClassStat(BaseModel):
    direction: int
    present: int
    omitted: int


class VerifyRequest(BaseModel):
    graph: GraphSpec
    forbid: Literal["q2", "q3"] | int = "q3"
    workers: int = 1


class VerifyResponse(BaseModel):
    n: int
    forbid_dimension: int
    present_count: int
    omitted_count: int
    free: bool
    witness: Optional[str] = None
    violation_count: int = 0
    class_stats: list[ClassStat]
    best_direction: int
    elapsed: float


class AnalyzeRequest(BaseModel):
    graph: GraphSpec
    forbid: Literal["q2", "q3"] | int = "q3"


class AnalyzeResponse(BaseModel):
    n: int
    present_count: int
    omitted_count: int
    class_stats: list[ClassStat]
    best_direction: int
    free: bool
    maximal: Optional[bool] = None  # None when the graph is not even free
    addable_edges: list[str] = Field(default_factory=list)
    parity_split: tuple[int, int]  # present edges at even/odd lower endpoint
    p_value_histogram: dict[int, int]
    elapsed: float


class ConstructRequest(BaseModel):
    base: GraphSpec
    coloring: ColoringSpec
    direction: Optional[int] = None  # None: best parallel class
    parity_convention: Literal[0, 1] = 0
    target: Literal["q3", "c4"] = "q3"
    verify: bool = True


class ConstructResponse(BaseModel):
    n: int
    present_count: int
    omitted_count: int
    predicted_count: int
    base_edge_count: int
    base_class_count: int
    direction: int
    free: Optional[bool] = None
    witness: Optional[str] = None
    edges: list[str]  # omitted edges of the product
    mode: Literal["omitted"] = "omitted"
    elapsed: float


class RecurRequest(BaseModel):
    seeds: dict[int, int]
    coloring: ColoringSpec = ColoringSpec(name="q4_aeo")
    k_max: int = 27


class TableRowModel(BaseModel):
    k: int
    lower_bound: Optional[int]
    upper_bound: int
    lb_ratio: Optional[float]
    ub_ratio: float
    seeded: bool


class RecurResponse(BaseModel):
    rows: list[TableRowModel]
    text: str


class GeneralRequest(BaseModel):
    n: int
    residue: Literal["best"] | int = "best"


class GeneralResponse(BaseModel):
    n: int
    residue: int
    class_size: int
    class_sizes: list[int]
    present_count: int
    omitted_count: int
    free: bool
    omitted_edges: list[str]
    elapsed: float


class SearchConfigModel(BaseModel):
    time_budget: Optional[float] = None
    remove_t: int = 2
    workers: int = 1
    rng_seed: int = 0
    node_limit: Optional[int] = 10_000_000
    sample_limit: Optional[int] = None


class ExactSearchRequest(BaseModel):
    n: int
    d: int = 3
    config: SearchConfigModel = SearchConfigModel()


class PerturbRequest(BaseModel):
    graph: GraphSpec
    d: int = 3
    config: SearchConfigModel = SearchConfigModel()


class SearchResponse(BaseModel):
    n: int
    present_count: int
    omitted_count: int
    optimal: bool
    improved: Optional[bool] = None  # perturb only
    nodes_explored: int
    elapsed: float
    note: str = ""
    omitted_edges: list[str]
    class_stats: list[ClassStat]
    best_direction: int


class ColoringValidateRequest(BaseModel):
    coloring: ColoringSpec
    target: Literal["q3", "c4"] = "q3"


class ColoringInfo(BaseModel):
    name: Optional[str] = None
    m: int
    count_a: int
    count_e: int
    count_o: int
    e_edges: list[str]
    o_edges: list[str]


class ColoringValidateResponse(BaseModel):
    ok: bool
    target: str
    coloring: ColoringInfo
    violations: list[dict]  # {"condition": ..., "subcube": "[0*1*0]"}


class ColoringSplitRequest(BaseModel):
    graph: GraphSpec  # a C4-free graph; its edges become the a-set


class ColoringSplitResponse(BaseModel):
    ok: bool
    coloring: Optional[ColoringInfo] = None
    reason: Optional[str] = None
    witness: Optional[str] = None


class ErrorResponse(BaseModel):
    detail: str
