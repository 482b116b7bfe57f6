"""Edge-form and omitted-form step recurrences, the pigeonhole bound on the
best parallel class, and reproduction of the k=7..27 upper-bound table.

For a coloring of Q_m with a/e/o counts (A, E, O), combining a base graph
on Q_k with e_k edges and p_k edges in the chosen parallel class yields

    e_{k+m-1} = 2^(m-1) (e_k - p_k) + A p_k + (E + O) 2^(k-2)

and the same step expressed in omitted counts (c_k non-edges, q_k non-edges
in the class) is

    c_{k+m-1} = 2^(m-1) c_k + (A - 2^(m-1)) q_k + (E + O) 2^(k-2).
"""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import ColoringStats
from .core import total_edges

# Known lower bounds on c(Q3,k) for k=7..27 (stored constants; their
# derivation is out of scope here).
LOWER_BOUNDS = {
    7: 52, 8: 119, 9: 268, 10: 596, 11: 1312, 12: 2863, 13: 6204,
    14: 13363, 15: 28635, 16: 61088, 17: 129812, 18: 274896,
    19: 580336, 20: 1221760, 21: 2565696, 22: 5375744, 23: 11240192,
    24: 23457792, 25: 48870400, 26: 101650432, 27: 211120128,
}

# Seeds for the published table: c(Q3,k) upper bounds from the explicit
# constructions, advanced with the Q4-coloring step.
DEFAULT_SEEDS = {7: 56, 8: 128, 9: 352}

_MAX_COUNTER = (1 << 63) - 1


def _check_range(*values):
    for v in values:
        if v > _MAX_COUNTER:
            raise OverflowError(f"counter {v} exceeds 64-bit range")


def step_edges(e_k: int, p_k: int, stats: ColoringStats, k: int) -> int:
    """Edges of the product graph on Q_{k+m-1}."""
    if k < 2:
        raise ValueError("base dimension must be >= 2")
    if not 0 <= p_k <= e_k:
        raise ValueError(f"need 0 <= p_k <= e_k, got p_k={p_k}, e_k={e_k}")
    half = 1 << (stats.m - 1)
    out = half * (e_k - p_k) + stats.count_a * p_k \
        + (stats.count_e + stats.count_o) * (1 << (k - 2))
    _check_range(out)
    return out


def step_omitted(c_k: int, q_k: int, stats: ColoringStats, k: int) -> int:
    """Omitted edges of the product graph on Q_{k+m-1}."""
    if k < 2:
        raise ValueError("base dimension must be >= 2")
    if not 0 <= q_k <= c_k:
        raise ValueError(f"need 0 <= q_k <= c_k, got q_k={q_k}, c_k={c_k}")
    half = 1 << (stats.m - 1)
    out = half * c_k + (stats.count_a - half) * q_k \
        + (stats.count_e + stats.count_o) * (1 << (k - 2))
    _check_range(out)
    return out


def pigeonhole_q(c_k: int, k: int) -> int:
    """Some parallel class omits at most floor(c_k / k) edges."""
    if c_k < 0 or k < 1:
        raise ValueError("need c_k >= 0 and k >= 1")
    return c_k // k


@dataclass(frozen=True)
class TableRow:
    k: int
    lower_bound: int | None
    upper_bound: int
    seeded: bool

    @property
    def total(self) -> int:
        return total_edges(self.k)

    @property
    def lb_ratio(self) -> float | None:
        return None if self.lower_bound is None else self.lower_bound / self.total

    @property
    def ub_ratio(self) -> float:
        return self.upper_bound / self.total


def bound_table(seeds: dict, stats: ColoringStats, k_max: int,
                lower_bounds: dict | None = None) -> list:
    """Upper bounds on c(Q3,k) from the seeds, advanced with the coloring's
    +(m-1) step and the pigeonhole class bound."""
    if not seeds:
        raise ValueError("need at least one seed")
    if lower_bounds is None:
        lower_bounds = LOWER_BOUNDS
    step = stats.m - 1
    ub = dict(seeds)
    rows = []
    for k in range(min(seeds), k_max + 1):
        if k not in ub:
            prev = k - step
            if prev not in ub:
                continue  # not reachable by +(m-1) steps from any seed
            ub[k] = step_omitted(ub[prev], pigeonhole_q(ub[prev], prev), stats, prev)
        rows.append(TableRow(k, lower_bounds.get(k), ub[k], k in seeds))
    if k_max not in ub:
        raise ValueError(f"k={k_max} not reachable from seeds {sorted(seeds)}")
    return rows


def format_table(rows) -> str:
    head = f"{'k':>3} {'LB':>12} {'UB':>12} {'LB/e(Qk)':>9} {'UB/e(Qk)':>9}"
    lines = [head, "-" * len(head)]
    for r in rows:
        lb = f"{r.lower_bound:,}" if r.lower_bound is not None else "-"
        lbr = f"{r.lb_ratio:.5f}" if r.lb_ratio is not None else "-"
        lines.append(f"{r.k:>3} {lb:>12} {r.upper_bound:>12,} {lbr:>9} {r.ub_ratio:>9.5f}")
    return "\n".join(lines)
