"""Workflow graphs: DAGs of alphabets connected by transforms.

Per-edge metrics telescope into an overall benefit. Sequential segments
give exact point values; parallel joints give intervals, because the
combined benefit at a joint is only bounded, not determined: machine-only
branches are capped by the entropy at the fork, human-involved branches
range between the maximum and the sum of the arriving benefits.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import networkx as nx

from .alphabet import Alphabet, Enumerated, Pmf, Symbolic, entropy, max_entropy
from .transform import CostRecord, Transform, DeclaredHuman, pushforward
from .reconstruction import Reconstruction
from .metrics import StepMetrics, step_metrics

ENTROPY_TOL = 1e-9


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi + 1e-12:
            raise ValueError("interval lo exceeds hi")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def is_point(self) -> bool:
        return self.hi - self.lo <= 1e-12

    def __add__(self, other):
        if isinstance(other, Interval):
            return Interval(self.lo + other.lo, self.hi + other.hi)
        return Interval(self.lo + other, self.hi + other)

    def scale(self, factor: float) -> "Interval":
        a, b = self.lo * factor, self.hi * factor
        return Interval(min(a, b), max(a, b))


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    transform: Transform
    reconstruction: Optional[Reconstruction] = None


@dataclass(frozen=True)
class LevelInfo:
    level: str
    question_form: str
    complexity_class: str


LEVELS = {
    "V_D": LevelInfo("V_D", "This is A.", "O(1)"),
    "V_O": LevelInfo("V_O", "What has happened, when and where?", "O(n)"),
    "V_A": LevelInfo("V_A", "What does A relate to, and why?", "O(n^k)"),
    "V_M": LevelInfo("V_M", "How does A lead to B?", "O(k^n) / O(n!)"),
}

CLASS_LEVEL = {"W1": "V_D", "W2": "V_O", "W3": "V_D", "W4": "V_A", "W5": "V_M", "W6": "V_M"}


@dataclass(frozen=True)
class OverallMetrics:
    total_cost: CostRecord
    total_benefit_bits: Interval
    overall_cbr: Interval


@dataclass
class MetricsReport:
    entropy_mode: str
    per_edge: dict  # transform name -> StepMetrics
    overall: OverallMetrics
    notes: list = field(default_factory=list)


def _alphabets_close(a: Alphabet, b: Alphabet) -> bool:
    if a.is_enumerated != b.is_enumerated:
        return False
    if a.is_enumerated:
        if set(a.letter_ids()) != set(b.letter_ids()):
            return False
        return all(
            abs(a.model.pmf[i] - b.model.pmf[i]) <= 1e-9 for i in a.letter_ids()
        )
    return (
        abs(entropy(a) - entropy(b)) <= 1e-6
        and abs(max_entropy(a) - max_entropy(b)) <= 1e-6
    )


class WorkflowGraph:
    """Validated DAG with exactly one decisional sink alphabet."""

    def __init__(
        self,
        nodes: dict,
        edges: list,
        decisional: Optional[str] = None,
        class_tag: Optional[str] = None,
        level_tag: Optional[str] = None,
    ):
        self.nodes = dict(nodes)
        self.edges = list(edges)
        self.class_tag = class_tag
        self.level_tag = level_tag

        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        for e in self.edges:
            if e.src not in self.nodes or e.dst not in self.nodes:
                raise ValueError(f"dangling reference: edge {e.src}->{e.dst}")
            g.add_edge(e.src, e.dst, edge=e)
        if not nx.is_directed_acyclic_graph(g):
            raise ValueError("workflow graph must be acyclic")
        self._g = g

        for e in self.edges:
            out = pushforward(e.transform, self.nodes[e.src])
            if not _alphabets_close(out, self.nodes[e.dst]):
                raise ValueError(
                    f"edge {e.transform.name}: pushforward does not match node {e.dst}"
                )

        sinks = [n for n in g.nodes if g.out_degree(n) == 0]
        if decisional is None:
            if len(sinks) != 1:
                raise ValueError("exactly one decisional sink required")
            decisional = sinks[0]
        elif decisional not in sinks:
            raise ValueError("decisional node must be a sink")
        elif len(sinks) != 1:
            raise ValueError("exactly one decisional sink required")
        self.decisional = decisional

    # -- structure helpers ------------------------------------------------

    def topo_order(self) -> list:
        return list(nx.topological_sort(self._g))

    def in_edges(self, node: str) -> list:
        return [d["edge"] for _, _, d in self._g.in_edges(node, data=True)]

    def is_chain(self) -> bool:
        if len(self.nodes) > 1 and not nx.is_weakly_connected(self._g):
            return False
        return all(
            self._g.out_degree(n) <= 1 and self._g.in_degree(n) <= 1 for n in self._g.nodes
        )

    def edge_by_transform(self, name: str) -> Edge:
        for e in self.edges:
            if e.transform.name == name:
                return e
        raise KeyError(name)

    def _fork_of(self, joint: str) -> str:
        """Latest common ancestor of all branches arriving at ``joint``."""
        srcs = [e.src for e in self.in_edges(joint)]
        common = None
        for s in srcs:
            anc = nx.ancestors(self._g, s) | {s}
            common = anc if common is None else common & anc
        if not common:
            raise ValueError(f"no common branch point for joint {joint}")
        order = {n: i for i, n in enumerate(self.topo_order())}
        return max(common, key=lambda n: order[n])

    def _branch_edges(self, fork: str, joint: str) -> list:
        between = (nx.descendants(self._g, fork) | {fork}) & (
            nx.ancestors(self._g, joint) | {joint}
        )
        return [e for e in self.edges if e.src in between and e.dst in between]

    # -- analysis ---------------------------------------------------------

    def edge_benefits(self, entropy_mode: str = "actual") -> dict:
        """Per-edge benefit in bits, without the ratio guards.

        Ratios are undefined on zero-entropy inputs, but benefit still is;
        a fully-determined (presenter-perspective) workflow has benefit 0.
        """
        from .reconstruction import distortion_bits
        from .metrics import benefit as benefit_bits

        h = entropy if entropy_mode == "actual" else max_entropy
        out = {}
        for e in self.edges:
            g = e.reconstruction
            if g is None and not isinstance(e.transform.kind, DeclaredHuman):
                raise ValueError(f"unscored edge: {e.transform.name}")
            d = distortion_bits(g, e.transform, self.nodes[e.src])
            out[e.transform.name] = benefit_bits(
                h(self.nodes[e.src]), h(self.nodes[e.dst]), d
            )
        return out

    def edge_metrics(self, entropy_mode: str = "actual") -> dict:
        out = {}
        for e in self.edges:
            g = e.reconstruction
            if g is None and not isinstance(e.transform.kind, DeclaredHuman):
                raise ValueError(f"unscored edge: {e.transform.name}")
            out[e.transform.name] = step_metrics(
                e.transform, g, self.nodes[e.src], self.nodes[e.dst], entropy_mode
            )
        return out

    def total_cost(self, merge: str = "sum") -> CostRecord:
        if merge not in ("sum", "max_parallel"):
            raise ValueError(f"unknown cost merge {merge!r}")
        kinds = {(e.transform.cost.kind, e.transform.cost.unit) for e in self.edges}
        if len(kinds) != 1:
            raise ValueError("incommensurable costs")
        kind, unit = next(iter(kinds))
        if merge == "sum":
            return CostRecord(kind, sum(e.transform.cost.amount for e in self.edges), unit)
        # time semantics: critical-path accumulation, maximum at each joint
        acc = {n: 0.0 for n in self.nodes}
        for n in self.topo_order():
            incoming = self.in_edges(n)
            if incoming:
                acc[n] = max(acc[e.src] + e.transform.cost.amount for e in incoming)
        return CostRecord(kind, acc[self.decisional], unit)

    def total_benefit(
        self,
        entropy_mode: str = "actual",
        shared_mi_bits: float = 0.0,
    ) -> Interval:
        """Benefit interval accumulated from sources to the decisional sink."""
        per_edge = self.edge_benefits(entropy_mode)
        h = entropy if entropy_mode == "actual" else max_entropy
        acc: dict = {}
        for n in self.topo_order():
            incoming = self.in_edges(n)
            if not incoming:
                acc[n] = Interval(0.0, 0.0)
            elif len(incoming) == 1:
                e = incoming[0]
                acc[n] = acc[e.src] + per_edge[e.transform.name]
            else:
                fork = self._fork_of(n)
                base = acc[fork]
                arriving = []
                for e in incoming:
                    total = acc[e.src] + per_edge[e.transform.name]
                    arriving.append(Interval(total.lo - base.lo, total.hi - base.hi))
                branch_kinds = {
                    e.transform.node_kind for e in self._branch_edges(fork, n)
                }
                lo = max(iv.lo for iv in arriving)
                hi = sum(iv.hi for iv in arriving)
                if branch_kinds <= {"M"}:
                    hi = min(hi - shared_mi_bits, h(self.nodes[fork]))
                acc[n] = base + Interval(min(lo, hi), hi)
        return acc[self.decisional]

    def overall_cbr(
        self,
        merge: str = "sum",
        entropy_mode: str = "actual",
        shared_mi_bits: float = 0.0,
    ) -> Interval:
        cost = self.total_cost(merge)
        return self.total_benefit(entropy_mode, shared_mi_bits).scale(1.0 / cost.amount)

    def analyze(
        self,
        entropy_mode: str = "actual",
        merge: str = "sum",
        shared_mi_bits: float = 0.0,
    ) -> MetricsReport:
        per_edge = self.edge_metrics(entropy_mode)
        cost = self.total_cost(merge)
        ben = self.total_benefit(entropy_mode, shared_mi_bits)
        overall = OverallMetrics(cost, ben, ben.scale(1.0 / cost.amount))
        notes = []
        if entropy_mode == "maximal":
            notes.append("entropies reported are maximal (uniform-distribution) values")
        return MetricsReport(entropy_mode, per_edge, overall, notes)

    def path_metrics(self, node_path: list, entropy_mode: str = "actual") -> tuple:
        """(benefit, cost) summed along a given node path."""
        per_edge = self.edge_benefits(entropy_mode)
        b = 0.0
        c = 0.0
        for src, dst in zip(node_path, node_path[1:]):
            for e in self.edges:
                if e.src == src and e.dst == dst:
                    b += per_edge[e.transform.name]
                    c += e.transform.cost.amount
                    break
            else:
                raise ValueError(f"no edge {src}->{dst}")
        return b, c

    # -- classification ---------------------------------------------------

    def classify(self) -> tuple:
        """(class_tag or None, LevelInfo or None) by structural matching."""
        tag = self._match_class()
        if tag is not None:
            return tag, LEVELS[CLASS_LEVEL[tag]]
        if self.level_tag is not None:
            return None, LEVELS.get(self.level_tag)
        return None, None

    def _match_class(self) -> Optional[str]:
        if self.is_chain():
            order = self.topo_order()
            kinds = [
                self._g.edges[s, d]["edge"].transform.node_kind
                for s, d in zip(order, order[1:])
            ]
            chain_patterns = [
                ("W1", ["H", "V", "H"]),
                ("W2", ["V", "H"]),
                ("W3", ["M", "V", "H"]),
                ("W5", ["V", "H", "M"]),
                ("W6", ["H", "M"]),
            ]
            for tag, pattern in chain_patterns:
                if kinds == pattern:
                    return tag
            return None
        # branching: machine branch parallel with a visual branch feeding H
        joints = [n for n in self._g.nodes if self._g.in_degree(n) >= 2]
        for joint in joints:
            fork = self._fork_of(joint)
            branch_edges = self._branch_edges(fork, joint)
            kinds = {e.transform.node_kind for e in branch_edges}
            downstream = [
                d["edge"].transform.node_kind
                for _, _, d in self._g.out_edges(joint, data=True)
            ]
            arriving = {e.transform.node_kind for e in self.in_edges(joint)}
            if "M" in kinds and "V" in kinds and ("H" in downstream or "H" in arriving):
                return "W4"
        return None

    # -- export -----------------------------------------------------------

    def to_dot(self, entropy_mode: str = "actual") -> str:
        h = entropy if entropy_mode == "actual" else max_entropy
        lines = ["digraph workflow {", "  rankdir=LR;"]
        for name, a in self.nodes.items():
            label = f"{name}\\nH={h(a):.4g} bits"
            shape = "doubleoctagon" if name == self.decisional else "box"
            lines.append(f'  "{name}" [label="{label}", shape={shape}];')
        try:
            per_edge = self.edge_metrics(entropy_mode)
        except ValueError:
            per_edge = {}
        for e in self.edges:
            m = per_edge.get(e.transform.name)
            if m is not None:
                label = (
                    f"{e.transform.name} [{e.transform.node_kind}]\\n"
                    f"ACR={m.acr:.4g} PDR={m.pdr:.4g}\\n"
                    f"B={m.benefit_bits:.4g} bits CBR={m.incremental_cbr:.4g}"
                )
            else:
                label = f"{e.transform.name} [{e.transform.node_kind}]"
            lines.append(f'  "{e.src}" -> "{e.dst}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)
