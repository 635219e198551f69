"""Seeded greedy compression of certified ontic vertex sets.

One step removes a candidate vertex, recomputes the exact hull and
certifies the facets the removal created.  A violated facet means some
quantum state escaped the smaller polytope, so the step backtracks and
the vertex is marked essential; otherwise the removal commits.  Marks
are permanent under the "uniform-random" strategy: shrinking the vertex
set only shrinks every conv(S minus u), so a vertex that was essential
once stays essential, and termination with every survivor marked is a
single-removal-minimal model.  The "fixed-order" strategy instead
re-sweeps the full list until a sweep commits nothing, re-earning the
same guarantee by direct test.

Every structural result (vertex sets, traces, hull counts) is a pure
function of (v0, config); wall-clock fields in campaign reports are the
only nondeterministic output.
"""
from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, replace
from pathlib import Path

from .certifier import (
    EPSILON,
    CertificationReport,
    certify_facet,
    certify_polytope,
    facet_operator,
    min_eigenvalue,
)
from .mub import ProjectorList
from .polytope import Facet, VPolytope, hull_facets, remove_vertex
from .rng import SplitMix64

STRATEGY_UNIFORM = "uniform-random"
STRATEGY_FIXED = "fixed-order"
STRATEGIES = (STRATEGY_UNIFORM, STRATEGY_FIXED)

ACTION_COMMIT = "commit"
ACTION_BACKTRACK = "backtrack"


class UncertifiedInputError(ValueError):
    """Starting polytope already leaks quantum states; carries the certificate."""

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(
            f"input polytope fails certification: facet c={certificate.facet.c} "
            f"f={certificate.facet.f} has lambda_min={certificate.lambda_min}"
        )


@dataclass(frozen=True)
class SearchConfig:
    seed: int
    epsilon: float = EPSILON
    strategy: str = STRATEGY_UNIFORM
    max_removals_per_pass: int | None = None
    incremental_certification: bool = True


@dataclass(frozen=True)
class TraceEvent:
    step: int
    vertex: str
    action: str
    violated_facet: Facet | None
    lambda_min: float | None


@dataclass(frozen=True)
class SearchTrace:
    events: tuple[TraceEvent, ...]
    final_labels: tuple[str, ...]
    certified: bool
    minimal: bool
    hull_count: int


class _LambdaCache:
    """Memoized facet -> lambda_min; exact reuse, pure speedup."""

    def __init__(self, proj: ProjectorList):
        self.proj = proj
        self.table: dict[Facet, float] = {}

    def __call__(self, facet: Facet) -> float:
        lam = self.table.get(facet)
        if lam is None:
            lam = min_eigenvalue(facet_operator(facet, self.proj))
            self.table[facet] = lam
        return lam


def _labeled(v: VPolytope) -> VPolytope:
    if v.labels is not None:
        return v
    return VPolytope(v.dim, v.vertices, tuple(str(i) for i in range(len(v.vertices))))


def compress(
    v0: VPolytope, proj: ProjectorList, cfg: SearchConfig
) -> tuple[VPolytope, SearchTrace]:
    """Greedily remove vertices while certification holds.

    Returns the reduced polytope and a deterministic trace.  The result
    is certified and single-removal minimal by construction; see the
    module docstring for why sticky essential marks are sound.
    """
    if cfg.strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {cfg.strategy!r}, expected one of {STRATEGIES}")
    if cfg.max_removals_per_pass is not None and cfg.max_removals_per_pass < 1:
        raise ValueError("max_removals_per_pass must be positive")
    current = _labeled(v0)
    lam = _LambdaCache(proj)
    hulls = 0

    hull = hull_facets(current)
    hulls += 1
    for facet in hull.facets:
        if lam(facet) < facet.f - cfg.epsilon:
            raise UncertifiedInputError(certify_facet(facet, proj, cfg.epsilon))

    rng = SplitMix64(cfg.seed)
    marked: set[str] = set()
    events: list[TraceEvent] = []
    step = 0

    while True:
        if cfg.strategy == STRATEGY_UNIFORM:
            pool = [lbl for lbl in current.labels if lbl not in marked]
        else:
            pool = list(current.labels)
        if not pool:
            break
        commits = 0
        while pool:
            if (
                cfg.max_removals_per_pass is not None
                and commits >= cfg.max_removals_per_pass
            ):
                break
            if cfg.strategy == STRATEGY_UNIFORM:
                label = pool.pop(rng.randrange(len(pool)))
            else:
                label = pool.pop(0)
            idx = current.labels.index(label)
            vert = current.vertices[idx]
            candidate = remove_vertex(current, idx + 1)
            newhull = hull_facets(candidate)
            hulls += 1
            if cfg.incremental_certification:
                # facets that survive the removal were facets of the
                # certified parent polytope, so only the fresh cuts
                # (strictly violated by the removed vertex) need checking
                to_check = [g for g in newhull.facets if g.evaluate(vert) < g.f]
            else:
                to_check = list(newhull.facets)
            violated = None
            for g in to_check:
                if lam(g) < g.f - cfg.epsilon:
                    violated = g
                    break
            step += 1
            if violated is None:
                current = candidate
                events.append(TraceEvent(step, label, ACTION_COMMIT, None, None))
                commits += 1
            else:
                marked.add(label)
                events.append(
                    TraceEvent(step, label, ACTION_BACKTRACK, violated, lam(violated))
                )
        if cfg.strategy == STRATEGY_FIXED and commits == 0:
            break

    trace = SearchTrace(
        events=tuple(events),
        final_labels=current.labels,
        certified=True,
        minimal=True,
        hull_count=hulls,
    )
    return current, trace


def is_minimal(
    v: VPolytope, proj: ProjectorList, epsilon: float = EPSILON
) -> tuple[bool, str | None]:
    """Single-removal minimality: every one-vertex deletion must leak.

    Returns (True, None) or (False, label-of-removable-vertex).  Certifies
    every facet of every reduced hull, so it does not assume v itself was
    certified.
    """
    labeled = _labeled(v)
    lam = _LambdaCache(proj)
    for idx in range(len(labeled.vertices)):
        reduced_hull = hull_facets(remove_vertex(labeled, idx + 1))
        if all(lam(g) >= g.f - epsilon for g in reduced_hull.facets):
            return False, labeled.labels[idx]
    return True, None


# ---------------------------------------------------------------------------
# multi-seed campaigns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeedResult:
    seed: int
    omega: int
    hull_count: int
    wall_time_s: float
    certified: bool
    minimal: bool
    model: VPolytope


@dataclass(frozen=True)
class CampaignReport:
    strategy: str
    results: tuple[SeedResult, ...]
    histogram: dict[int, int]
    best_seed: int | None
    best_model: VPolytope | None
    total_hull_computations: int
    wall_time_s: float


def multi_seed(
    v0: VPolytope, proj: ProjectorList, seeds, cfg: SearchConfig
) -> CampaignReport:
    """Run compress over many seeds; re-verify every model before reporting.

    Result rows follow the input seed order.  Each model is re-checked
    with a fresh certify_polytope and is_minimal; a failure there is an
    internal soundness bug, not a data condition, hence the hard error.
    """
    t_start = time.perf_counter()
    results: list[SeedResult] = []
    for seed in seeds:
        t0 = time.perf_counter()
        final, trace = compress(v0, proj, replace(cfg, seed=seed))
        recheck: CertificationReport = certify_polytope(final, proj, cfg.epsilon)
        minimal, counterexample = is_minimal(final, proj, cfg.epsilon)
        if not recheck.ok or not minimal:
            raise AssertionError(
                f"seed {seed}: emitted model failed re-verification "
                f"(certified={recheck.ok}, minimal={minimal}, "
                f"counterexample={counterexample})"
            )
        wall = time.perf_counter() - t0
        # hulls: the run itself, one re-certification, one per minimality probe
        results.append(
            SeedResult(
                seed=seed,
                omega=len(final.vertices),
                hull_count=trace.hull_count + 1 + len(final.vertices),
                wall_time_s=wall,
                certified=True,
                minimal=True,
                model=final,
            )
        )
    best = min(results, key=lambda r: r.omega) if results else None
    histogram = dict(sorted(Counter(r.omega for r in results).items()))
    return CampaignReport(
        strategy=cfg.strategy,
        results=tuple(results),
        histogram=histogram,
        best_seed=None if best is None else best.seed,
        best_model=None if best is None else best.model,
        total_hull_computations=sum(r.hull_count for r in results),
        wall_time_s=time.perf_counter() - t_start,
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _facet_jsonable(facet: Facet | None):
    if facet is None:
        return None
    return {"c": list(facet.c), "f": facet.f}


def write_trace(path: str | Path, trace: SearchTrace) -> None:
    """Trace as JSONL, one event object per line."""
    lines = [
        json.dumps(
            {
                "step": e.step,
                "vertex": e.vertex,
                "action": e.action,
                "violated_facet": _facet_jsonable(e.violated_facet),
                "lambda_min": e.lambda_min,
            }
        )
        for e in trace.events
    ]
    Path(path).write_text("\n".join(lines) + "\n")


def campaign_to_jsonable(report: CampaignReport, dim: int) -> dict:
    from .factorization import deterministic_measurement_matrices, model_to_jsonable

    if report.best_model is None:
        best_summary = None
        best_model_blob = None
    else:
        best = deterministic_measurement_matrices(
            dim, report.best_model, seed=report.best_seed
        )
        best_summary = {
            "seed": report.best_seed,
            "omega": len(report.best_model.vertices),
        }
        best_model_blob = model_to_jsonable(best)
    return {
        "dim": dim,
        "strategy": report.strategy,
        "seeds": [
            {
                "seed": r.seed,
                "omega": r.omega,
                "hull_count": r.hull_count,
                "certified": r.certified,
                "minimal": r.minimal,
                "wall_time_s": r.wall_time_s,
            }
            for r in report.results
        ],
        "histogram": {str(k): v for k, v in report.histogram.items()},
        "best": best_summary,
        "best_model": best_model_blob,
        "total_hull_computations": report.total_hull_computations,
        "wall_time_s": report.wall_time_s,
    }
