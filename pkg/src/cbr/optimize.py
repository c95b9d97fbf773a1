"""Discrete parameter search maximizing the overall cost-benefit ratio.

Parameter spaces are finite candidate lists attached to named transforms,
reconstructions or edges. Exhaustive search is the certified route up to a
combination cap; coordinate-ascent with seeded restarts covers larger
spaces without a global-optimum guarantee.
"""

import itertools
import math
import os
import random
from dataclasses import dataclass, field, replace
from typing import Optional

from .alphabet import Alphabet, Symbolic
from .transform import (
    Aggregator,
    CostRecord,
    DeclaredHuman,
    Quantizer,
    Transform,
    pushforward,
)
from .reconstruction import DeclaredDivergence, Reconstruction
from .workflow import Edge, Interval, WorkflowGraph

DEFAULT_SEED = 0x9E3779B97F4A7C15  # documented fixed seed; override with CBR_SEED
EXHAUSTIVE_CAP = 10**6


@dataclass(frozen=True)
class Dimension:
    target: str  # "transform:<name>", "reconstruction:<name>" or "edge:<src>-><dst>"
    field: str
    values: tuple

    def __post_init__(self):
        if not self.values:
            raise ValueError("dimension needs at least one candidate value")
        scope = self.target.split(":", 1)[0]
        if scope not in ("transform", "reconstruction", "edge"):
            raise ValueError(f"unknown dimension target {self.target!r}")


@dataclass(frozen=True)
class ParamSpace:
    dimensions: tuple

    def combination_count(self) -> int:
        return math.prod(len(d.values) for d in self.dimensions)

    def assignments(self):
        """All assignments in lexicographic (dimension-order) order."""
        if not self.dimensions:
            yield {}
            return
        for combo in itertools.product(*(d.values for d in self.dimensions)):
            yield {
                (d.target, d.field): v for d, v in zip(self.dimensions, combo)
            }


@dataclass
class OptimizeResult:
    best_assignment: dict
    best_cbr: Interval
    best_cost: float
    frontier: list  # nondominated (cost, benefit) points, cost ascending
    evaluations: int
    certified: bool
    records: list = field(default_factory=list)  # (assignment, cost, benefit, cbr)


def _seed() -> int:
    env = os.environ.get("CBR_SEED")
    return int(env) if env else DEFAULT_SEED


def _uniform_boundaries(lo: float, hi: float, k: int) -> tuple:
    step = (hi - lo) / k
    return tuple(lo + i * step for i in range(k)) + (hi,)


def _apply_to_transform(t: Transform, field_name: str, value) -> Transform:
    k = t.kind
    if field_name == "cost_amount":
        return replace(t, cost=replace(t.cost, amount=float(value)))
    if field_name == "bins":
        if not isinstance(k, Quantizer):
            raise ValueError(f"{t.name} is not a quantizer")
        if k.boundaries is None:
            return replace(t, kind=Quantizer(int(value), None))
        lo, hi = k.boundaries[0], k.boundaries[-1]
        return replace(t, kind=Quantizer(int(value), _uniform_boundaries(lo, hi, int(value))))
    if field_name == "window":
        if not isinstance(k, Aggregator):
            raise ValueError(f"{t.name} is not an aggregator")
        return replace(t, kind=replace(k, window=int(value)))
    if field_name == "declared_distortion_bits":
        if not isinstance(k, DeclaredHuman):
            raise ValueError(f"{t.name} is not a declared step")
        return replace(t, kind=replace(k, declared_distortion_bits=float(value)))
    raise ValueError(f"unknown transform field {field_name!r}")


def _apply_to_reconstruction(g: Reconstruction, field_name: str, value) -> Reconstruction:
    if field_name == "declared_bits":
        if not isinstance(g.kind, DeclaredDivergence):
            raise ValueError(f"{g.name} is not a declared divergence")
        return replace(g, kind=DeclaredDivergence(float(value)))
    raise ValueError(f"unknown reconstruction field {field_name!r}")


def apply_assignment(g: WorkflowGraph, assignment: dict) -> WorkflowGraph:
    """Rebuild the graph with parameters applied, propagating alphabets.

    Source and declared-output alphabets are kept; every other node is
    recomputed by pushforward so parameter changes flow downstream.
    """
    edges = []
    for e in g.edges:
        t, r = e.transform, e.reconstruction
        enabled = True
        for (target, field_name), value in assignment.items():
            scope, name = target.split(":", 1)
            if scope == "transform" and name == t.name:
                t = _apply_to_transform(t, field_name, value)
            elif scope == "reconstruction" and r is not None and name == r.name:
                r = _apply_to_reconstruction(r, field_name, value)
            elif scope == "edge" and name == f"{e.src}->{e.dst}":
                if field_name != "enabled":
                    raise ValueError(f"unknown edge field {field_name!r}")
                enabled = bool(value)
        if enabled:
            edges.append(Edge(e.src, e.dst, t, r))

    # propagate alphabets from sources in topological order
    used = {e.src for e in edges} | {e.dst for e in edges} | {g.decisional}
    nodes = {n: a for n, a in g.nodes.items() if n in used}
    incoming: dict = {}
    for e in edges:
        incoming.setdefault(e.dst, []).append(e)
    for n in g.topo_order():
        if n not in used or n not in incoming:
            continue
        e = incoming[n][0]
        nodes[n] = pushforward(e.transform, nodes[e.src], name=n)
    return WorkflowGraph(
        nodes, edges, decisional=g.decisional, class_tag=g.class_tag, level_tag=g.level_tag
    )


def evaluate(
    g: WorkflowGraph,
    entropy_mode: str = "actual",
    merge: str = "sum",
) -> tuple:
    """(cost amount, benefit interval, cbr interval) for one instantiation."""
    cost = g.total_cost(merge)
    ben = g.total_benefit(entropy_mode)
    return cost.amount, ben, ben.scale(1.0 / cost.amount)


def _objective(cbr: Interval, objective: str) -> float:
    return cbr.midpoint if objective == "midpoint" else cbr.lo


def _feasible(cost: float, budget: Optional[CostRecord]) -> bool:
    return budget is None or cost <= budget.amount + 1e-12


def exhaustive_search(
    g: WorkflowGraph,
    space: ParamSpace,
    budget: Optional[CostRecord] = None,
    entropy_mode: str = "actual",
    merge: str = "sum",
    objective: str = "midpoint",
    cap: int = EXHAUSTIVE_CAP,
) -> OptimizeResult:
    """Evaluate every assignment; certified global argmax of the objective."""
    count = space.combination_count()
    if count > cap:
        raise ValueError(
            f"parameter space has {count} combinations, over the exhaustive cap "
            f"{cap}; use greedy_search"
        )
    best = None
    points = []
    records = []
    evaluations = 0
    for assignment in space.assignments():
        cost, ben, cbr = evaluate(apply_assignment(g, assignment), entropy_mode, merge)
        evaluations += 1
        points.append((cost, ben.midpoint))
        records.append((assignment, cost, ben, cbr))
        if not _feasible(cost, budget):
            continue
        score = _objective(cbr, objective)
        if best is None or score > best[0] or (score == best[0] and cost < best[1]):
            best = (score, cost, assignment, cbr)
    if best is None:
        raise ValueError("infeasible budget")
    return OptimizeResult(
        best_assignment=best[2],
        best_cbr=best[3],
        best_cost=best[1],
        frontier=pareto_frontier(points),
        evaluations=evaluations,
        certified=True,
        records=records,
    )


def greedy_search(
    g: WorkflowGraph,
    space: ParamSpace,
    budget: Optional[CostRecord] = None,
    restarts: int = 1,
    entropy_mode: str = "actual",
    merge: str = "sum",
    objective: str = "midpoint",
    seed: Optional[int] = None,
) -> OptimizeResult:
    """Coordinate ascent from seeded random starts; local optimum only."""
    if restarts < 1:
        raise ValueError("restarts must be positive")
    rng = random.Random(_seed() if seed is None else seed)
    dims = space.dimensions
    best = None
    points = []
    records = []
    evaluations = 0

    def score_of(assignment):
        nonlocal evaluations
        cost, ben, cbr = evaluate(apply_assignment(g, assignment), entropy_mode, merge)
        evaluations += 1
        points.append((cost, ben.midpoint))
        records.append((assignment, cost, ben, cbr))
        if not _feasible(cost, budget):
            return None
        return (_objective(cbr, objective), cost, cbr)

    for _ in range(restarts):
        current = {
            (d.target, d.field): rng.choice(d.values) for d in dims
        }
        current_score = score_of(current)
        improved = True
        while improved:
            improved = False
            for d in dims:
                key = (d.target, d.field)
                for v in d.values:
                    if v == current[key]:
                        continue
                    candidate = dict(current)
                    candidate[key] = v
                    s = score_of(candidate)
                    if s is not None and (
                        current_score is None or s[0] > current_score[0]
                    ):
                        current, current_score = candidate, s
                        improved = True
        if current_score is not None and (best is None or current_score[0] > best[0][0]):
            best = (current_score, current)
    if best is None:
        raise ValueError("infeasible budget")
    (score, cost, cbr), assignment = best
    return OptimizeResult(
        best_assignment=assignment,
        best_cbr=cbr,
        best_cost=cost,
        frontier=pareto_frontier(points),
        evaluations=evaluations,
        certified=False,
        records=records,
    )


def pareto_frontier(points: list) -> list:
    """Nondominated (cost, benefit) subset, sorted by cost ascending.

    Lower cost and higher benefit are better; weak duplicates keep one
    representative.
    """
    if not points:
        raise ValueError("no points")
    ordered = sorted(points, key=lambda p: (p[0], -p[1]))
    frontier = []
    best_benefit = -math.inf
    for cost, ben in ordered:
        if ben > best_benefit:
            frontier.append((cost, ben))
            best_benefit = ben
    return frontier


def frontier_csv(result: OptimizeResult) -> str:
    """Nondominated evaluations as CSV, one row per frontier point."""
    lines = ["assignment,cost,benefit_lo,benefit_hi,cbr_mid"]
    frontier = set(result.frontier)
    seen = set()
    for assignment, cost, ben, cbr in result.records:
        key = (cost, ben.midpoint)
        if key in frontier and key not in seen:
            seen.add(key)
            desc = ";".join(
                f"{target}.{field_name}={value}"
                for (target, field_name), value in sorted(assignment.items())
            )
            lines.append(f"{desc},{cost},{ben.lo},{ben.hi},{cbr.midpoint}")
    return "\n".join(lines) + "\n"
