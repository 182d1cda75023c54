"""Graph coloring: DSATUR construction, tabu-search refinement, a
descending-k driver with optional ball peeling, verification, and an exact
oracle for tiny graphs.

A proper k-coloring of a conflict graph divides the underlying vector set
into k parts of diameter below sqrt(96).  All randomized searches draw
from a single seeded Mersenne Twister stream (rng id "mt19937-python"), so
identical (graph, config, seed) reproduce the identical trajectory.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .confgraph import ConflictGraph, peel as peel_balls

RNG_ALGORITHM = "mt19937-python"

_BIG = 1 << 30


class LengthMismatch(Exception):
    pass


class GraphTooLarge(Exception):
    pass


@dataclass
class SearchConfig:
    k: int
    seed: int
    max_iterations: int = 100_000
    tabu_tenure_base: int = 10
    tabu_tenure_slope: float = 0.6
    restarts: int = 1
    peel_count: int = 0
    time_limit: float | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass
class Coloring:
    assignment: np.ndarray      # per-vertex color in 0..k-1
    k: int
    conflicts: int
    meta: dict = field(default_factory=dict)

    @property
    def proper(self) -> bool:
        return self.conflicts == 0


def verify_coloring(G: ConflictGraph, assignment: np.ndarray,
                    max_listed: int = 100) -> tuple[int, list[tuple[int, int]]]:
    """From-scratch recount of monochromatic edges, independent of any
    incremental bookkeeping.  Returns (count, first <= max_listed edges)."""
    assignment = np.asarray(assignment)
    if len(assignment) != G.vertex_count:
        raise LengthMismatch(
            f"assignment length {len(assignment)} != {G.vertex_count} vertices")
    count = 0
    listed: list[tuple[int, int]] = []
    if G.mode == "explicit":
        for u in range(G.vertex_count):
            row = G.neighbors(u)
            higher = row[row > u]
            bad = higher[assignment[higher] == assignment[u]]
            count += len(bad)
            for v in bad[:max(0, max_listed - len(listed))]:
                listed.append((u, int(v)))
        return count, listed
    block = 2048
    Xf = G.vectors.astype(np.float32)
    for s in range(0, G.vertex_count, block):
        ips = Xf[s:s + block] @ Xf.T
        adj = ips <= -16
        n = adj.shape[0]
        same = assignment[s:s + n, None] == assignment[None, :]
        bad = adj & same
        # keep u < v only
        cols = np.arange(G.vertex_count)
        bad &= cols[None, :] > (np.arange(s, s + n))[:, None]
        count += int(bad.sum())
        if len(listed) < max_listed:
            for r, v in zip(*np.nonzero(bad)):
                if len(listed) >= max_listed:
                    break
                listed.append((s + int(r), int(v)))
    return count, listed


def dsatur(G: ConflictGraph) -> Coloring:
    """Greedy coloring by maximum saturation; ties go to the lowest vertex
    id.  Deterministic and always proper."""
    t0 = time.monotonic()
    V = G.vertex_count
    colors = np.full(V, -1, dtype=np.int32)
    kcap = 64
    seen = np.zeros((V, kcap), dtype=bool)
    sat = np.zeros(V, dtype=np.int32)
    for _ in range(V):
        masked = np.where(colors < 0, sat, -1)
        v = int(masked.argmax())        # argmax picks the lowest id on ties
        avail = np.flatnonzero(~seen[v])
        if len(avail) == 0:
            seen = np.concatenate([seen, np.zeros((V, kcap), dtype=bool)], axis=1)
            avail = np.array([kcap])
            kcap *= 2
        c = int(avail[0])
        colors[v] = c
        nb = G.neighbors(v)
        fresh = nb[~seen[nb, c]]
        seen[fresh, c] = True
        sat[fresh] += 1
    k = int(colors.max()) + 1
    return Coloring(assignment=colors, k=k, conflicts=0, meta={
        "strategy": "dsatur", "seed": None, "iterations": V,
        "wall_time": time.monotonic() - t0, "rng": None,
    })


def _greedy_start(G: ConflictGraph, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Sequential least-conflict start; returns (colors, gamma) where
    gamma[v, c] counts neighbors of v colored c."""
    V = G.vertex_count
    colors = np.empty(V, dtype=np.int32)
    gamma = np.zeros((V, k), dtype=np.int32)
    for v in range(V):
        c = int(gamma[v].argmin())
        colors[v] = c
        gamma[G.neighbors(v), c] += 1
    return colors, gamma


def tabucol(G: ConflictGraph, cfg: SearchConfig,
            rng: random.Random | None = None) -> Coloring:
    """Tabu search at fixed k = cfg.k, minimizing monochromatic edges.

    One move recolors a single conflicting vertex; moves are evaluated by
    incremental conflict delta over all (conflicting vertex, color) pairs;
    a move back to (vertex, old color) is tabu for
    tenure_base + tenure_slope * #conflicting + uniform(0..9) iterations
    unless it beats the best count seen (aspiration).  Returns the best
    assignment found, proper or not.
    """
    t0 = time.monotonic()
    own_rng = rng is None
    if own_rng:
        rng = random.Random(cfg.seed)
    k = cfg.k
    V = G.vertex_count
    colors, gamma = _greedy_start(G, k)
    ar = np.arange(V)
    conflicting = gamma[ar, colors] > 0
    conflicts = int(gamma[ar, colors].sum()) // 2
    best = conflicts
    best_colors = colors.copy()
    tabu_until = np.zeros((V, k), dtype=np.int64)
    it = 0
    deadline = None if cfg.time_limit is None else t0 + cfg.time_limit
    while it < cfg.max_iterations and conflicts > 0:
        if deadline is not None and time.monotonic() > deadline:
            break
        it += 1
        ci = np.flatnonzero(conflicting)
        nc = len(ci)
        sub = gamma[ci]
        cur = colors[ci]
        delta = sub - sub[np.arange(nc), cur][:, None]
        allowed = (tabu_until[ci] < it) | (conflicts + delta < best)
        delta = np.where(allowed, delta, _BIG)
        delta[np.arange(nc), cur] = _BIG
        mn = int(delta.min())
        if mn >= _BIG:
            # every move tabu and none aspires: random conflicting move
            v = int(ci[rng.randrange(nc)])
            c = rng.randrange(k - 1)
            if c >= colors[v]:
                c += 1
            d = int(gamma[v, c] - gamma[v, colors[v]])
        else:
            ties = np.flatnonzero(delta.ravel() == mn)
            pick = int(ties[rng.randrange(len(ties))])
            v = int(ci[pick // k])
            c = pick % k
            d = mn
        old = int(colors[v])
        nb = G.neighbors(v)
        gamma[nb, old] -= 1
        gamma[nb, c] += 1
        colors[v] = c
        conflicts += d
        tenure = int(cfg.tabu_tenure_base + cfg.tabu_tenure_slope * nc)
        tabu_until[v, old] = it + tenure + rng.randrange(10)
        conflicting[nb] = gamma[nb, colors[nb]] > 0
        conflicting[v] = gamma[v, c] > 0
        if conflicts < best:
            best = conflicts
            best_colors = colors.copy()
    return Coloring(assignment=best_colors, k=k, conflicts=best, meta={
        "strategy": "tabucol", "seed": cfg.seed if own_rng else None,
        "iterations": it, "wall_time": time.monotonic() - t0,
        "rng": RNG_ALGORITHM,
    })


def _merge_with_reserved(residual_coloring: Coloring, balls,
                         vertex_count: int, residual_ids: np.ndarray) -> Coloring:
    """Lift a residual coloring back to the peeled graph, giving each ball
    its own reserved color above the residual colors."""
    assignment = np.full(vertex_count, -1, dtype=np.int32)
    assignment[residual_ids] = residual_coloring.assignment
    base = residual_coloring.k
    for i, ball in enumerate(balls):
        assignment[ball.member_ids] = base + i
    assert (assignment >= 0).all()
    return Coloring(assignment=assignment, k=base + len(balls),
                    conflicts=residual_coloring.conflicts,
                    meta=dict(residual_coloring.meta))


def solve(G: ConflictGraph, cfg: SearchConfig, initial_k: int | None = None,
          source=None) -> Coloring:
    """Best proper coloring found by a descending-k loop.

    Starts from a DSATUR coloring (or from initial_k when that is lower),
    then repeatedly attempts one color fewer with tabu search
    (cfg.restarts attempts per k) until an attempt fails or the time
    budget expires.  With cfg.peel_count > 0, peeled ball sets are
    reserved one color each and only the residual is searched; G must
    then be a freshly built graph.  The reported best k never increases
    during a run.
    """
    t0 = time.monotonic()
    rng = random.Random(cfg.seed)
    balls, residual = [], G
    if cfg.peel_count > 0:
        assert (G.vertex_ids == np.arange(G.vertex_count)).all(), \
            "peeling needs a freshly built graph"
        balls, residual = peel_balls(G, cfg.peel_count, source=source)
    residual_ids = residual.vertex_ids
    ds = dsatur(residual)
    best = _merge_with_reserved(ds, balls, G.vertex_count, residual_ids)
    total_iters = ds.meta["iterations"]
    deadline = None if cfg.time_limit is None else t0 + cfg.time_limit
    k_next = best.k - 1
    if initial_k is not None and initial_k < best.k:
        k_next = initial_k
    while k_next >= 1 + len(balls):
        if deadline is not None and time.monotonic() > deadline:
            break
        found = None
        for _ in range(max(1, cfg.restarts)):
            remaining = None if deadline is None else deadline - time.monotonic()
            if remaining is not None and remaining <= 0:
                break
            sub_cfg = replace(cfg, k=k_next - len(balls), time_limit=remaining)
            attempt = tabucol(residual, sub_cfg, rng=rng)
            total_iters += attempt.meta["iterations"]
            if attempt.proper:
                found = attempt
                break
        if found is None:
            break
        best = _merge_with_reserved(found, balls, G.vertex_count, residual_ids)
        k_next = best.k - 1
    best.meta.update({
        "strategy": "solve" + (f"+peel{len(balls)}" if balls else ""),
        "seed": cfg.seed, "iterations": int(total_iters),
        "wall_time": time.monotonic() - t0, "rng": RNG_ALGORITHM,
    })
    return best


def exact_chromatic(G: ConflictGraph) -> int:
    """Exact chromatic number by branch and bound over color classes with a
    greedy clique lower bound.  Limited to 64 vertices."""
    V = G.vertex_count
    if V > 64:
        raise GraphTooLarge(f"{V} vertices > 64")
    if V == 0:
        return 0
    adj = [0] * V
    for v in range(V):
        for u in G.neighbors(v):
            adj[v] |= 1 << int(u)
    order = sorted(range(V), key=lambda v: -G.degree(v))
    clique: list[int] = []
    cmask = 0
    for v in order:
        if (cmask & ~adj[v]) == 0:
            clique.append(v)
            cmask |= 1 << v
    rest = [v for v in order if v not in clique]
    seq = clique + rest

    def colorable(k: int) -> bool:
        if len(clique) > k:
            return False
        colors = {v: i for i, v in enumerate(clique)}

        def rec(i: int, used: int) -> bool:
            if i == len(seq):
                return True
            v = seq[i]
            forb = 0
            for u, cu in colors.items():
                if (adj[v] >> u) & 1:
                    forb |= 1 << cu
            for c in range(min(used + 1, k)):
                if (forb >> c) & 1:
                    continue
                colors[v] = c
                if rec(i + 1, max(used, c + 1)):
                    return True
                del colors[v]
            return False

        return rec(len(clique), len(clique))

    k = max(1, len(clique))
    while not colorable(k):
        k += 1
    return k


# ---------------------------------------------------------------------------
# coloring file format: JSON with fixed field names
# ---------------------------------------------------------------------------

COLORING_FIELDS = ("dimension", "colors", "seed", "strategy", "iterations",
                   "conflicts", "assignment")


def save_coloring(path, coloring: Coloring, dimension: int) -> None:
    doc = {
        "dimension": dimension,
        "colors": coloring.k,
        "seed": coloring.meta.get("seed"),
        "strategy": coloring.meta.get("strategy"),
        "iterations": coloring.meta.get("iterations"),
        "conflicts": coloring.conflicts,
        "assignment": [int(c) for c in coloring.assignment],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_coloring(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    missing = [f for f in COLORING_FIELDS if f not in doc]
    if missing:
        raise ValueError(f"coloring file missing fields {missing}")
    doc["assignment"] = np.array(doc["assignment"], dtype=np.int32)
    return doc
