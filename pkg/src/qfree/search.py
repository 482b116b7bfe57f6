"""Exact minimum hitting-set search for small cubes and the remove-t /
re-add perturbation local search.

The exact solver looks for a minimum set of omitted edges meeting every
d-subcube.  It branches on the uncovered subcube with the fewest allowed
edges, forbidding already-tried edges in later siblings so each omission
set is visited once.  The lower bound is the better of a greedy packing of
subcubes with pairwise disjoint allowed edges and the density bound
ceil(#uncovered / max subcubes per allowed edge).  Pruning is strict
(only when the bound exceeds the incumbent), so every optimal solution is
enumerated and the reported incumbent is the canonically smallest one;
this is what makes results independent of worker count and timing.
"""

from __future__ import annotations

import itertools
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .core import popcount, subcube_tables, total_edges
from .subgraph import CubeSubgraph, bit_indices, greedy_complete, is_free


@dataclass(frozen=True)
class SearchConfig:
    time_budget: float | None = None  # soft wall-clock limit, seconds
    remove_t: int = 2
    workers: int = 1
    rng_seed: int = 0
    node_limit: int | None = 10_000_000
    sample_limit: int | None = None  # max removal subsets for perturb


@dataclass
class SearchResult:
    best: CubeSubgraph
    optimal: bool
    nodes_explored: int
    elapsed: float
    note: str = ""


def _edge_keys(mask: int):
    return tuple(bit_indices(mask))


class _Budget:
    def __init__(self, cfg: SearchConfig):
        self.node_limit = cfg.node_limit
        self.deadline = None if cfg.time_budget is None else time.monotonic() + cfg.time_budget
        self.nodes = 0
        self.exhausted = False

    def tick(self) -> bool:
        self.nodes += 1
        if self.node_limit is not None and self.nodes >= self.node_limit:
            self.exhausted = True
        elif self.deadline is not None and self.nodes % 4096 == 0 \
                and time.monotonic() > self.deadline:
            self.exhausted = True
        return not self.exhausted


def _lower_bound(uncovered, masks, allowed):
    """max(greedy disjoint packing, density bound) on extra edges needed."""
    if not uncovered:
        return 0
    # density: one allowed edge can cover at most max_cover subcubes
    cover = {}
    for ci in uncovered:
        for i in bit_indices(masks[ci] & allowed):
            cover[i] = cover.get(i, 0) + 1
    if not cover:
        return len(uncovered) + 1  # some subcube cannot be hit at all
    density = -(-len(uncovered) // max(cover.values()))
    # greedy packing over subcubes with disjoint allowed-edge sets
    packing = 0
    used = 0
    for ci in sorted(uncovered, key=lambda c: popcount(masks[c] & allowed)):
        am = masks[ci] & allowed
        if am and not (am & used):
            packing += 1
            used |= am
    return max(density, packing)


def exact_min_hitting(n: int, d: int, cfg: SearchConfig | None = None) -> SearchResult:
    """Minimum omitted-edge set killing every d-subcube of Q_n."""
    if cfg is None:
        cfg = SearchConfig()
    if not 2 <= d <= n:
        raise ValueError(f"need 2 <= d <= n, got d={d}, n={n}")
    t0 = time.monotonic()
    _, masks, _ = subcube_tables(n, d)
    ncubes = len(masks)
    full_allowed = (1 << total_edges(n)) - 1

    # initial incumbent: omissions of a greedily completed maximal graph
    seed_graph = greedy_complete(CubeSubgraph(n, 0), d)
    best_size = seed_graph.omitted_count
    best_set = _edge_keys(full_allowed & ~seed_graph.present)
    budget = _Budget(cfg)
    incumbent_lock = threading.Lock()

    def search(chosen, chosen_mask, allowed, uncovered):
        nonlocal best_size, best_set
        if not budget.tick():
            return
        if not uncovered:
            key = tuple(sorted(chosen))
            with incumbent_lock:
                if len(chosen) < best_size or (len(chosen) == best_size and key < best_set):
                    best_size, best_set = len(chosen), key
            return
        if len(chosen) + _lower_bound(uncovered, masks, allowed) > best_size:
            return
        # fail-first: branch on the uncovered subcube with fewest options
        bi = min(uncovered, key=lambda c: popcount(masks[c] & allowed))
        options = list(bit_indices(masks[bi] & allowed))
        if not options:
            return
        rem_allowed = allowed
        for i in options:
            bit = 1 << i
            rem_allowed &= ~bit
            nxt = [c for c in uncovered if not (masks[c] & bit)]
            search(chosen + [i], chosen_mask | bit, rem_allowed | bit, nxt)
            if budget.exhausted:
                return

    all_uncovered = list(range(ncubes))
    if cfg.workers <= 1:
        search([], 0, full_allowed, all_uncovered)
    else:
        # split the root branching across workers; strict pruning plus the
        # canonical merge keeps the outcome identical to the serial run
        bi = min(all_uncovered, key=lambda c: popcount(masks[c]))
        options = list(bit_indices(masks[bi]))
        tasks = []
        rem_allowed = full_allowed
        for i in options:
            bit = 1 << i
            rem_allowed &= ~bit
            nxt = [c for c in all_uncovered if not (masks[c] & bit)]
            tasks.append(([i], bit, rem_allowed | bit, nxt))
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            list(pool.map(lambda t: search(*t), tasks))

    best_mask = 0
    for i in best_set:
        best_mask |= 1 << i
    result = CubeSubgraph(n, full_allowed & ~best_mask)
    free, witness = is_free(result, d)
    assert free, f"incumbent is not {d}-free: {witness}"
    return SearchResult(
        best=result,
        optimal=not budget.exhausted,
        nodes_explored=budget.nodes,
        elapsed=time.monotonic() - t0,
        note="" if not budget.exhausted else "budget exhausted",
    )


def _max_additions(present: int, candidates, masks, per_edge, budget):
    """Best (count, edge tuple) over all ways to add candidate edges while
    staying free.  Candidate lists here are tiny, so plain DFS suffices."""
    best = (0, ())

    def addable(p, i):
        cand = p | (1 << i)
        for pos in per_edge[i]:
            m = masks[pos]
            if cand & m == m:
                return False
        return True

    def dfs(p, picked, rest):
        nonlocal best
        budget.tick()
        if len(picked) > best[0]:
            best = (len(picked), tuple(picked))
        for j, i in enumerate(rest):
            if len(picked) + len(rest) - j <= best[0]:
                break
            if addable(p, i):
                dfs(p | (1 << i), picked + [i], rest[j + 1:])

    dfs(present, [], sorted(candidates))
    return best


def perturb(G: CubeSubgraph, d: int, cfg: SearchConfig | None = None) -> SearchResult:
    """Remove every t-subset of present edges (enumerated, or sampled when a
    sample_limit is set) and re-add edges, keeping the best graph found.
    Never returns a smaller graph than the input."""
    if cfg is None:
        cfg = SearchConfig()
    t0 = time.monotonic()
    free, witness = is_free(G, d)
    if not free:
        raise ValueError(f"input is not {d}-free (witness {witness})")
    t = cfg.remove_t
    n = G.n
    _, masks, per_edge = subcube_tables(n, d)
    budget = _Budget(cfg)

    best_count = G.present_count
    best_present = G.present
    base_note = ""

    if t == 0:
        cnt, picked = _max_additions(
            G.present, [i for i in range(total_edges(n)) if not (G.present >> i) & 1
                        and _is_addable(G.present, i, masks, per_edge)],
            masks, per_edge, budget)
        p = G.present
        for i in picked:
            p |= 1 << i
        if cnt:
            best_count, best_present = best_count + cnt, p
    else:
        present_edges = list(bit_indices(G.present))
        omitted = [i for i in range(total_edges(n)) if not (G.present >> i) & 1]
        # blocking subcubes per omitted edge: those missing exactly that edge
        full = (1 << total_edges(n)) - 1
        missing = full & ~G.present
        blockers = {}
        for i in omitted:
            bl = [masks[pos] for pos in per_edge[i]
                  if (masks[pos] & missing) == (1 << i)]
            blockers[i] = bl
        # index omitted edges by one blocker, to enumerate candidates fast;
        # edges with no blocker are addable already (input not maximal)
        first_blocker_of = {}
        always_candidates = [i for i in omitted if not blockers[i]]
        for i in omitted:
            if blockers[i]:
                for j in bit_indices(blockers[i][0]):
                    first_blocker_of.setdefault(j, []).append(i)

        if cfg.sample_limit is None:
            combos = list(itertools.combinations(present_edges, t))
        else:
            import random

            rng = random.Random(cfg.rng_seed)
            picked = set()
            attempts = 0
            while len(picked) < cfg.sample_limit and attempts < cfg.sample_limit * 20:
                picked.add(tuple(sorted(rng.sample(present_edges, t))))
                attempts += 1
            combos = sorted(picked)
            base_note = f"sampled {len(combos)} removal sets"

        incumbent_lock = threading.Lock()

        def consider(removed):
            nonlocal best_count, best_present
            rm_mask = 0
            for i in removed:
                rm_mask |= 1 << i
            cand = set(removed) | set(always_candidates)
            seen = set()
            for i in removed:
                for e in first_blocker_of.get(i, ()):  # e's first blocker hit
                    if e in seen:
                        continue
                    seen.add(e)
                    if all(b & rm_mask for b in blockers[e]):
                        cand.add(e)
            if len(cand) <= t:
                budget.tick()
                return  # cannot beat the input
            p = G.present & ~rm_mask
            cnt, picked = _max_additions(p, cand, masks, per_edge, budget)
            new_count = G.present_count - t + cnt
            if new_count <= G.present_count:
                return
            for i in picked:
                p |= 1 << i
            with incumbent_lock:
                # canonical tie-break: the smaller membership mask wins
                if new_count > best_count or (new_count == best_count and p < best_present):
                    best_count, best_present = new_count, p

        if cfg.workers <= 1:
            for rm in combos:
                consider(rm)
                if budget.exhausted:
                    break
        else:
            chunk = -(-len(combos) // cfg.workers)
            parts = [combos[i:i + chunk] for i in range(0, len(combos), chunk)]

            def run_part(part):
                nonlocal best_count, best_present
                for rm in part:
                    consider(rm)
                    if budget.exhausted:
                        break

            with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
                list(pool.map(run_part, parts))

    result = CubeSubgraph(n, best_present)
    free, witness = is_free(result, d)
    assert free, f"perturbed graph is not {d}-free: {witness}"
    assert result.present_count >= G.present_count
    return SearchResult(
        best=result,
        optimal=not budget.exhausted,
        nodes_explored=budget.nodes,
        elapsed=time.monotonic() - t0,
        note=base_note if not budget.exhausted else (base_note + " budget exhausted").strip(),
    )


def _is_addable(present, i, masks, per_edge):
    cand = present | (1 << i)
    for pos in per_edge[i]:
        m = masks[pos]
        if cand & m == m:
            return False
    return True
