"""Workflow spec files (JSON, schema version 1) and executable fixtures.

A spec file declares alphabets, transforms, reconstructions and the graph
wiring them together, plus an optional parameter space for the optimizer.
Fixtures encode the case-study workflows with their expected metric values
and provenance tags.
"""

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import jsonschema

from .alphabet import Alphabet, Enumerated, Letter, Pmf, Product, Symbolic
from .transform import (
    Aggregator,
    Channel,
    CostRecord,
    DeclaredHuman,
    Grouping,
    Quantizer,
    Transform,
)
from .reconstruction import (
    DeclaredDivergence,
    ExactConditional,
    PriorWeighted,
    Reconstruction,
    UniformPreimage,
)
from .workflow import Edge, WorkflowGraph
from .optimize import Dimension, ParamSpace

SCHEMA_VERSION = "1"

_COST = {
    "type": "object",
    "required": ["kind", "amount", "unit"],
    "properties": {
        "kind": {"enum": ["energy", "time", "monetary", "abstract"]},
        "amount": {"type": "number", "exclusiveMinimum": 0},
        "unit": {"type": "string"},
    },
    "additionalProperties": False,
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "alphabets", "transforms", "graph"],
    "properties": {
        "schema_version": {"type": "string"},
        "entropy_mode": {"enum": ["actual", "maximal"]},
        "cost_model": {
            "type": "object",
            "required": ["kind", "unit"],
            "properties": {"kind": {"type": "string"}, "unit": {"type": "string"}},
        },
        "fixture_tag": {"type": "string"},
        "alphabets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "model"],
                "properties": {
                    "name": {"type": "string"},
                    "model": {
                        "type": "object",
                        "required": ["type"],
                        "properties": {
                            "type": {"enum": ["enumerated", "symbolic", "product"]},
                            "probs": {"type": "object"},
                            "entropy_bits": {"type": "number", "minimum": 0},
                            "max_entropy_bits": {"type": "number", "minimum": 0},
                            "factor": {"type": "string"},
                            "count": {"type": "integer", "minimum": 1},
                        },
                    },
                },
            },
        },
        "transforms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "kind", "cost"],
                "properties": {
                    "name": {"type": "string"},
                    "node_kind": {"enum": ["M", "H", "V", "I"]},
                    "cost": _COST,
                    "kind": {
                        "type": "object",
                        "required": ["type"],
                        "properties": {
                            "type": {
                                "enum": [
                                    "grouping",
                                    "quantizer",
                                    "aggregator",
                                    "channel",
                                    "declared",
                                ]
                            }
                        },
                    },
                },
            },
        },
        "reconstructions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "kind"],
                "properties": {
                    "name": {"type": "string"},
                    "kind": {
                        "type": "object",
                        "required": ["type"],
                        "properties": {
                            "type": {
                                "enum": [
                                    "exact_conditional",
                                    "uniform_preimage",
                                    "prior_weighted",
                                    "declared",
                                ]
                            }
                        },
                    },
                },
            },
        },
        "graph": {
            "type": "object",
            "required": ["edges"],
            "properties": {
                "edges": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["from", "to", "transform"],
                        "properties": {
                            "from": {"type": "string"},
                            "to": {"type": "string"},
                            "transform": {"type": "string"},
                            "reconstruction": {"type": "string"},
                        },
                    },
                },
                "decisional": {"type": "string"},
                "class_tag": {"enum": ["W1", "W2", "W3", "W4", "W5", "W6"]},
                "level_tag": {"enum": ["V_D", "V_O", "V_A", "V_M"]},
            },
        },
        "param_space": {
            "type": "object",
            "required": ["dimensions"],
            "properties": {
                "dimensions": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["target", "field", "values"],
                        "properties": {
                            "target": {"type": "string"},
                            "field": {"type": "string"},
                            "values": {"type": "array", "minItems": 1},
                        },
                    },
                }
            },
        },
    },
}


class SpecError(ValueError):
    """Structured spec parse/validation failure with a JSON-path context."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{message}{f' at {path}' if path else ''}")


@dataclass
class WorkflowSpec:
    """Parsed, validated workflow spec; ``data`` is the canonical document."""

    data: dict

    @property
    def schema_version(self) -> str:
        return self.data["schema_version"]

    @property
    def entropy_mode(self) -> str:
        return self.data.get("entropy_mode", "actual")

    @property
    def fixture_tag(self) -> Optional[str]:
        return self.data.get("fixture_tag")

    def alphabets(self) -> dict:
        cache: dict = {}
        decls = {a["name"]: a for a in self.data["alphabets"]}

        def build(name: str, trail: tuple) -> Alphabet:
            if name in cache:
                return cache[name]
            if name in trail:
                raise SpecError("circular alphabet reference", f"alphabets[{name}]")
            if name not in decls:
                raise SpecError(f"dangling reference: alphabet {name!r}")
            m = decls[name]["model"]
            t = m["type"]
            if t == "enumerated":
                probs = m.get("probs")
                if not probs:
                    raise SpecError("enumerated model needs probs", f"alphabets[{name}]")
                letters = tuple(Letter(lid) for lid in probs)
                a = Alphabet(name, Enumerated(letters, Pmf(probs)))
            elif t == "symbolic":
                e = m.get("entropy_bits")
                if e is None:
                    raise SpecError("symbolic model needs entropy_bits", f"alphabets[{name}]")
                a = Alphabet(name, Symbolic(e, m.get("max_entropy_bits", e)))
            else:
                factor = build(m["factor"], trail + (name,))
                a = Alphabet(name, Product(factor, m["count"]))
            cache[name] = a
            return a

        return {name: build(name, ()) for name in decls}

    def transforms(self) -> dict:
        alphabets = self.alphabets()
        out = {}
        for i, td in enumerate(self.data["transforms"]):
            kd = td["kind"]
            t = kd["type"]
            path = f"transforms[{i}]"
            if t == "grouping":
                kind = Grouping(dict(kd["map"]))
            elif t == "quantizer":
                b = kd.get("boundaries")
                kind = Quantizer(kd["levels"], tuple(b) if b else None)
            elif t == "aggregator":
                kind = Aggregator(kd["window"], kd.get("statistic", "mean"))
            elif t == "channel":
                kind = Channel(
                    tuple(kd["inputs"]),
                    tuple(kd["outputs"]),
                    tuple(tuple(row) for row in kd["matrix"]),
                )
            else:
                out_name = kd["output"]
                if out_name not in alphabets:
                    raise SpecError(
                        f"dangling reference: alphabet {out_name!r}", f"{path}.kind.output"
                    )
                kind = DeclaredHuman(alphabets[out_name], kd.get("distortion_bits", 0.0))
            c = td["cost"]
            out[td["name"]] = Transform(
                td["name"],
                kind,
                CostRecord(c["kind"], c["amount"], c["unit"]),
                td.get("node_kind", "M"),
            )
        return out

    def reconstructions(self) -> dict:
        out = {}
        for rd in self.data.get("reconstructions", []):
            kd = rd["kind"]
            t = kd["type"]
            if t == "exact_conditional":
                kind = ExactConditional()
            elif t == "uniform_preimage":
                kind = UniformPreimage()
            elif t == "prior_weighted":
                kind = PriorWeighted(Pmf(kd["prior"]))
            else:
                kind = DeclaredDivergence(kd["bits"])
            out[rd["name"]] = Reconstruction(rd["name"], kind)
        return out

    def build_graph(self) -> WorkflowGraph:
        alphabets = self.alphabets()
        transforms = self.transforms()
        recons = self.reconstructions()
        edges = []
        for i, ed in enumerate(self.data["graph"]["edges"]):
            path = f"graph.edges[{i}]"
            for key, pool, label in (
                ("from", alphabets, "alphabet"),
                ("to", alphabets, "alphabet"),
                ("transform", transforms, "transform"),
            ):
                if ed[key] not in pool:
                    raise SpecError(f"dangling reference: {label} {ed[key]!r}", f"{path}.{key}")
            r = None
            if "reconstruction" in ed:
                if ed["reconstruction"] not in recons:
                    raise SpecError(
                        f"dangling reference: reconstruction {ed['reconstruction']!r}",
                        f"{path}.reconstruction",
                    )
                r = recons[ed["reconstruction"]]
            edges.append(Edge(ed["from"], ed["to"], transforms[ed["transform"]], r))
        gd = self.data["graph"]
        # factor/helper alphabets that no edge touches stay out of the graph
        used = {e.src for e in edges} | {e.dst for e in edges}
        if gd.get("decisional"):
            used.add(gd["decisional"])
        nodes = {n: a for n, a in alphabets.items() if n in used} if edges else alphabets
        try:
            return WorkflowGraph(
                nodes,
                edges,
                decisional=gd.get("decisional"),
                class_tag=gd.get("class_tag"),
                level_tag=gd.get("level_tag"),
            )
        except ValueError as exc:
            raise SpecError(str(exc), "graph")

    def param_space(self) -> Optional[ParamSpace]:
        ps = self.data.get("param_space")
        if ps is None:
            return None
        dims = tuple(
            Dimension(d["target"], d["field"], tuple(d["values"]))
            for d in ps["dimensions"]
        )
        return ParamSpace(dims)


def parse_spec(text: str) -> WorkflowSpec:
    """Parse and validate a JSON workflow spec document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON: {exc}")
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecError(exc.message, "/".join(str(p) for p in exc.absolute_path))
    if data["schema_version"] != SCHEMA_VERSION:
        raise SpecError(f"unknown schema_version {data['schema_version']!r}")
    spec = WorkflowSpec(data)
    spec.build_graph()  # surfaces dangling references and invariant violations
    return spec


def emit_spec(spec: WorkflowSpec) -> str:
    return json.dumps(spec.data, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Expectation:
    """A metric path checked against a value (or another metric path).

    ``op`` is one of approx/le/ge/lt/gt; for the comparison ops the value
    may itself be a metric path, which encodes a qualitative ordering.
    """

    path: str
    op: str
    value: Union[float, str]
    tolerance: float = 0.0
    provenance: str = "derived"


@dataclass
class Fixture:
    name: str
    spec: WorkflowSpec
    expected: list


def resolve_metric(graph: WorkflowGraph, path: str, entropy_mode: str) -> float:
    """Evaluate a metric path like ``node:Z2:max_entropy`` on a graph."""
    from .alphabet import entropy as h_actual, max_entropy as h_max

    scope, rest = path.split(":", 1)
    if scope == "graph":
        name, metric = "", rest
    else:
        name, metric = rest.split(":", 1)
    if scope == "node":
        a = graph.nodes[name]
        return h_actual(a) if metric == "entropy" else h_max(a)
    if scope == "edge":
        if metric == "cost":
            return graph.edge_by_transform(name).transform.cost.amount
        m = graph.edge_metrics(entropy_mode)[name]
        return {
            "acr": m.acr,
            "pdr": m.pdr,
            "ecr": m.ecr,
            "benefit": m.benefit_bits,
            "cbr": m.incremental_cbr,
        }[metric]
    if scope == "path":
        nodes = name.split(",")
        b, c = graph.path_metrics(nodes, entropy_mode)
        if metric == "benefit":
            return b
        if metric == "cost":
            return c
        if metric == "cbr":
            return b / c
        if metric == "as_printed":
            return _as_printed_cbr(graph, nodes, entropy_mode)
        raise ValueError(f"unknown path metric {metric!r}")
    if scope == "graph":
        if metric in ("benefit_lo", "benefit_hi"):
            iv = graph.total_benefit(entropy_mode)
            return iv.lo if metric == "benefit_lo" else iv.hi
        if metric == "cost":
            return graph.total_cost().amount
        if metric in ("cbr_lo", "cbr_hi"):
            iv = graph.overall_cbr(entropy_mode=entropy_mode)
            return iv.lo if metric == "cbr_lo" else iv.hi
        raise ValueError(f"unknown graph metric {metric!r}")
    raise ValueError(f"unknown metric scope {scope!r}")


def _as_printed_cbr(graph: WorkflowGraph, nodes: list, entropy_mode: str) -> float:
    """The case studies' literal per-branch sum of (H_out + D_KL)/C.

    This disagrees with the benefit/cost form of the incremental ratio; it
    is reported as an as-printed variant, not reconciled.
    """
    from .alphabet import entropy as h_actual, max_entropy as h_max
    from .reconstruction import distortion_bits

    h = h_actual if entropy_mode == "actual" else h_max
    total = 0.0
    for src, dst in zip(nodes, nodes[1:]):
        for e in graph.edges:
            if e.src == src and e.dst == dst:
                d = distortion_bits(e.reconstruction, e.transform, graph.nodes[src])
                total += (h(graph.nodes[dst]) + d) / e.transform.cost.amount
                break
        else:
            raise ValueError(f"no edge {src}->{dst}")
    return total


def check_fixture(f: Fixture) -> list:
    """Evaluate every expectation; returns (path, op, expected, computed, ok)."""
    graph = f.spec.build_graph()
    mode = f.spec.entropy_mode
    rows = []
    for e in f.expected:
        computed = resolve_metric(graph, e.path, mode)
        expected = e.value
        if isinstance(expected, str):
            expected = resolve_metric(graph, expected, mode)
        if e.op == "approx":
            ok = abs(computed - expected) <= e.tolerance
        elif e.op == "le":
            ok = computed <= expected + e.tolerance
        elif e.op == "ge":
            ok = computed >= expected - e.tolerance
        elif e.op == "lt":
            ok = computed < expected
        elif e.op == "gt":
            ok = computed > expected
        else:
            raise ValueError(f"unknown expectation op {e.op!r}")
        rows.append((e.path, e.op, expected, computed, ok, e.provenance))
    return rows


def _cost(amount: float) -> dict:
    return {"kind": "time", "amount": amount, "unit": "min"}


def _sym(name: str, entropy_bits: float, max_entropy_bits: Optional[float] = None) -> dict:
    return {
        "name": name,
        "model": {
            "type": "symbolic",
            "entropy_bits": entropy_bits,
            "max_entropy_bits": max_entropy_bits if max_entropy_bits is not None else entropy_bits,
        },
    }


def _prod(name: str, factor: str, count: int) -> dict:
    return {"name": name, "model": {"type": "product", "factor": factor, "count": count}}


def _declared(name: str, output: str, distortion: float, cost: float, node_kind: str) -> dict:
    return {
        "name": name,
        "node_kind": node_kind,
        "cost": _cost(cost),
        "kind": {"type": "declared", "output": output, "distortion_bits": distortion},
    }


def _edge(src: str, dst: str, transform: str, recon: Optional[str] = None) -> dict:
    e = {"from": src, "to": dst, "transform": transform}
    if recon:
        e["reconstruction"] = recon
    return e


def fixture_share_price(r: int = 1) -> WorkflowSpec:
    """Share-price analysis chain: aggregate, plot, features, correlations.

    Five stages of symbolic bookkeeping whose maximal entropies fall from
    23040r bits at the raw alphabet to under 2r bits at the decision.
    """
    if r < 1:
        raise ValueError("r must be positive")
    pairs = r * (r - 1) // 2
    alphabets = [
        _sym("point32", 32.0),
        _prod("Z1", "point32", 720 * r),
        _prod("Z2", "point32", 60 * r),
        _sym("plotpoint", 7.0),
        _prod("Z3", "plotpoint", 60 * r),
        _sym("featvar", 3.0),
        _prod("Z4", "featvar", 10 * r),
        _sym("corrvar", 30.0),
        _sym("colorvar", math.log2(5)),
        _sym("decvar", math.log2(3)),
        _prod("Z5", "decvar", r),
    ]
    if pairs > 0:
        alphabets += [_prod("Z3c", "corrvar", pairs), _prod("Z4c", "colorvar", pairs)]
    else:
        alphabets += [_sym("Z3c", 0.0), _sym("Z4c", 0.0)]
    transforms = [
        {
            "name": "aggregate",
            "node_kind": "M",
            "cost": _cost(1),
            "kind": {"type": "aggregator", "window": 12, "statistic": "mean"},
        },
        {
            "name": "plot",
            "node_kind": "V",
            "cost": _cost(1),
            "kind": {"type": "quantizer", "levels": 128},
        },
        _declared("recognize", "Z4", 0.0, 5, "H"),
        _declared("correlate", "Z3c", 0.0, 1, "M"),
        _declared("colormap", "Z4c", 0.0, 1, "V"),
        _declared("decide_features", "Z5", 0.0, 2, "H"),
        _declared("decide_corr", "Z5", 0.0, 2, "H"),
    ]
    recons = [{"name": "lossless", "kind": {"type": "declared", "bits": 0.0}}]
    edges = [
        _edge("Z1", "Z2", "aggregate", "lossless"),
        _edge("Z2", "Z3", "plot", "lossless"),
        _edge("Z3", "Z4", "recognize"),
        _edge("Z2", "Z3c", "correlate"),
        _edge("Z3c", "Z4c", "colormap"),
        _edge("Z4", "Z5", "decide_features"),
        _edge("Z4c", "Z5", "decide_corr"),
    ]
    data = {
        "schema_version": SCHEMA_VERSION,
        "entropy_mode": "maximal",
        "cost_model": {"kind": "time", "unit": "min"},
        "fixture_tag": "share_price_chain",
        "alphabets": alphabets,
        "transforms": transforms,
        "reconstructions": recons,
        "graph": {"edges": edges, "decisional": "Z5"},
    }
    return parse_spec(json.dumps(data))


def share_price_expected(r: int) -> list:
    pairs = r * (r - 1) // 2
    corr_tol = max(0.005 * r * (r - 1), 1e-9)
    return [
        Expectation("node:Z1:max_entropy", "approx", 23040.0 * r, 1e-6, "formula"),
        Expectation("node:Z2:max_entropy", "approx", 1920.0 * r, 1e-6, "formula"),
        Expectation("node:Z3:max_entropy", "approx", 420.0 * r, 1e-6, "formula"),
        Expectation("node:Z4:max_entropy", "approx", 30.0 * r, 1e-6, "formula"),
        Expectation("node:Z3c:max_entropy", "approx", 15.0 * r * (r - 1), 1e-6, "formula"),
        Expectation("node:Z4c:max_entropy", "approx", 1.16 * r * (r - 1), corr_tol, "formula"),
        Expectation("node:Z5:max_entropy", "le", 2.0 * r, 0.0, "bound"),
    ]


def fixture_plot_vs_binary(presenter: bool = False) -> WorkflowSpec:
    """Time-series plot vs binary-digits view for dissemination.

    Human costs and distortions are declared estimates; the binary view
    carries a much larger feature-recognition distortion and cost. The
    presenter variant models the speaker's own perspective, where every
    alphabet is already certain and the total benefit is zero.
    """
    if presenter:
        h1, m1 = 0.0, 0.0
        ha2 = hb2_max = hfeat = hdec = 0.0
        d_plot, d_rec_a, d_rec_b = 0.0, 0.0, 0.0
    else:
        h1, m1 = 420.0, 1920.0
        ha2, hb2_max = 420.0, 1920.0
        hfeat = math.log2(9)  # two 3-valued feature variables
        hdec = math.log2(3)
        d_plot, d_rec_a, d_rec_b = 5.0, 1.83, 100.0
    alphabets = [
        _sym("Z1", h1, m1),
        _sym("Za2", ha2, ha2),
        _sym("Zb2", ha2, hb2_max),
        _sym("Za3", hfeat),
        _sym("Zb3", hfeat),
        _sym("Z4", hdec),
    ]
    transforms = [
        _declared("plot_view", "Za2", d_plot, 1, "V"),
        _declared("binary_view", "Zb2", 0.0, 1, "V"),
        _declared("recognize_plot", "Za3", d_rec_a, 10, "H"),
        _declared("recognize_binary", "Zb3", d_rec_b, 100, "H"),
        _declared("decide_plot", "Z4", 0.0, 1, "H"),
        _declared("decide_binary", "Z4", 0.0, 1, "H"),
    ]
    edges = [
        _edge("Z1", "Za2", "plot_view"),
        _edge("Z1", "Zb2", "binary_view"),
        _edge("Za2", "Za3", "recognize_plot"),
        _edge("Zb2", "Zb3", "recognize_binary"),
        _edge("Za3", "Z4", "decide_plot"),
        _edge("Zb3", "Z4", "decide_binary"),
    ]
    data = {
        "schema_version": SCHEMA_VERSION,
        "entropy_mode": "actual",
        "cost_model": {"kind": "time", "unit": "min"},
        "fixture_tag": "plot_vs_binary",
        "alphabets": alphabets,
        "transforms": transforms,
        "graph": {"edges": edges, "decisional": "Z4"},
    }
    return parse_spec(json.dumps(data))


def _plot_vs_binary_expected() -> list:
    return [
        Expectation("edge:recognize_plot:benefit", "approx", 415.0, 1.0, "declared"),
        Expectation(
            "path:Z1,Za2,Za3,Z4:cbr", "gt", "path:Z1,Zb2,Zb3,Z4:cbr", 0.0, "declared"
        ),
        Expectation(
            "edge:recognize_binary:pdr", "gt", "edge:recognize_plot:pdr", 0.0, "declared"
        ),
        Expectation(
            "edge:recognize_binary:cost", "gt", "edge:recognize_plot:cost", 0.0, "declared"
        ),
    ]


def fixture_overview_interaction() -> WorkflowSpec:
    """Overview first, zoom and details on demand, over an enumerated source.

    The machine overview step compresses losslessly in distribution; the
    human zoom step injects soft information and raises entropy, breaking
    the data processing inequality.
    """
    region = {str(i): 1.0 / 16 for i in range(16)}
    detail = {f"d{i}": 1.0 / 8 for i in range(8)}
    decision = {"act": 0.5, "hold": 0.5}
    alphabets = [
        {"name": "Zs", "model": {"type": "enumerated", "probs": region}},
        {
            "name": "Zo",
            "model": {"type": "enumerated", "probs": {f"g{i}": 0.25 for i in range(4)}},
        },
        {"name": "Zd", "model": {"type": "enumerated", "probs": detail}},
        {"name": "Zf", "model": {"type": "enumerated", "probs": decision}},
    ]
    transforms = [
        {
            "name": "overview",
            "node_kind": "M",
            "cost": _cost(1),
            "kind": {
                "type": "grouping",
                "map": {str(i): f"g{i // 4}" for i in range(16)},
            },
        },
        _declared("zoom", "Zd", 0.5, 2, "H"),
        _declared("decide", "Zf", 0.0, 1, "H"),
    ]
    recons = [
        {"name": "guess_uniform", "kind": {"type": "uniform_preimage"}},
        {"name": "zoom_declared", "kind": {"type": "declared", "bits": 0.5}},
        {"name": "decide_declared", "kind": {"type": "declared", "bits": 0.0}},
    ]
    edges = [
        _edge("Zs", "Zo", "overview", "guess_uniform"),
        _edge("Zo", "Zd", "zoom", "zoom_declared"),
        _edge("Zd", "Zf", "decide", "decide_declared"),
    ]
    data = {
        "schema_version": SCHEMA_VERSION,
        "entropy_mode": "actual",
        "cost_model": {"kind": "time", "unit": "min"},
        "fixture_tag": "overview_interaction",
        "alphabets": alphabets,
        "transforms": transforms,
        "reconstructions": recons,
        "graph": {"edges": edges, "decisional": "Zf"},
    }
    return parse_spec(json.dumps(data))


def _overview_expected() -> list:
    return [
        Expectation("node:Zs:entropy", "approx", 4.0, 1e-9, "derived"),
        Expectation("edge:overview:benefit", "approx", 2.0, 1e-9, "derived"),
        Expectation("edge:zoom:benefit", "approx", -1.5, 1e-9, "declared"),
        # soft knowledge raises entropy downstream of a human step
        Expectation("node:Zd:entropy", "gt", "node:Zo:entropy", 0.0, "qualitative"),
        Expectation("graph:benefit_lo", "approx", 2.5, 1e-9, "derived"),
        Expectation("graph:benefit_hi", "approx", 2.5, 1e-9, "derived"),
        Expectation("graph:cbr_lo", "approx", 0.625, 1e-9, "derived"),
    ]


def fixture_sports_events() -> WorkflowSpec:
    """Match videos to event data to visualization, two competing pipelines.

    Machine event detection is cheap but wildly inaccurate; glyph depiction
    reconstructs episodic memory better than statistical graphics. All
    magnitudes are declared; only the orderings are asserted.
    """
    alphabets = [
        _sym("video", 10000.0, 20000.0),
        _sym("events_h", 200.0, 500.0),
        _sym("events_m", 200.0, 500.0),
        _sym("vis_glyph", 150.0),
        _sym("vis_stats", 150.0),
        _sym("decision", 5.0),
    ]
    transforms = [
        _declared("annotate_human", "events_h", 30.0, 100, "H"),
        _declared("detect_machine", "events_m", 9000.0, 10, "M"),
        _declared("glyphs", "vis_glyph", 10.0, 5, "V"),
        _declared("stats", "vis_stats", 80.0, 5, "V"),
        _declared("judge_glyph", "decision", 5.0, 20, "H"),
        _declared("judge_stats", "decision", 5.0, 20, "H"),
    ]
    edges = [
        _edge("video", "events_h", "annotate_human"),
        _edge("video", "events_m", "detect_machine"),
        _edge("events_h", "vis_glyph", "glyphs"),
        _edge("events_m", "vis_stats", "stats"),
        _edge("vis_glyph", "decision", "judge_glyph"),
        _edge("vis_stats", "decision", "judge_stats"),
    ]
    data = {
        "schema_version": SCHEMA_VERSION,
        "entropy_mode": "actual",
        "cost_model": {"kind": "time", "unit": "min"},
        "fixture_tag": "sports_events",
        "alphabets": alphabets,
        "transforms": transforms,
        "graph": {"edges": edges, "decisional": "decision"},
    }
    return parse_spec(json.dumps(data))


def _sports_expected() -> list:
    return [
        Expectation(
            "edge:detect_machine:pdr", "gt", "edge:annotate_human:pdr", 0.0, "qualitative"
        ),
        Expectation("edge:stats:pdr", "gt", "edge:glyphs:pdr", 0.0, "qualitative"),
        Expectation(
            "path:video,events_h,vis_glyph,decision:cbr",
            "gt",
            "path:video,events_m,vis_stats,decision:cbr",
            0.0,
            "qualitative",
        ),
    ]


def fixture_readability() -> WorkflowSpec:
    """Document readability: sentence-level views vs one score per document.

    Over-aggregation compresses harder but distorts far more; the tradeoff
    favors keeping sentence-level detail.
    """
    alphabets = [
        _sym("features", 1000.0, 2000.0),
        _sym("sent_view", 300.0),
        _sym("doc_score", 5.0),
        _sym("decision", 10.0),
    ]
    transforms = [
        _declared("sentence_view", "sent_view", 50.0, 10, "V"),
        _declared("doc_view", "doc_score", 700.0, 10, "V"),
        _declared("judge_sentence", "decision", 10.0, 20, "H"),
        _declared("judge_doc", "decision", 10.0, 5, "H"),
    ]
    edges = [
        _edge("features", "sent_view", "sentence_view"),
        _edge("features", "doc_score", "doc_view"),
        _edge("sent_view", "decision", "judge_sentence"),
        _edge("doc_score", "decision", "judge_doc"),
    ]
    data = {
        "schema_version": SCHEMA_VERSION,
        "entropy_mode": "actual",
        "cost_model": {"kind": "time", "unit": "min"},
        "fixture_tag": "readability",
        "alphabets": alphabets,
        "transforms": transforms,
        "graph": {"edges": edges, "decisional": "decision"},
    }
    return parse_spec(json.dumps(data))


def _readability_expected() -> list:
    return [
        Expectation("edge:doc_view:acr", "lt", "edge:sentence_view:acr", 0.0, "derived"),
        Expectation("edge:doc_view:pdr", "gt", "edge:sentence_view:pdr", 0.0, "qualitative"),
        Expectation(
            "path:features,sent_view,decision:cbr",
            "gt",
            "path:features,doc_score,decision:cbr",
            0.0,
            "qualitative",
        ),
    ]


def fixture_decision_tree() -> WorkflowSpec:
    """Decision-tree model development: parallel-coordinates plus human
    selection against automatic tree induction.

    The machine route is far cheaper in time; the human route keeps more
    information thanks to soft knowledge about the feature extraction.
    """
    alphabets = [
        _sym("tsvar", 200.0),
        _sym("param8", 8.0),
        _sym("videos", 4000.0, 8000.0),
        _prod("ts14", "tsvar", 14),
        _prod("vec322", "param8", 322),
        _sym("pcp", 2000.0, 2576.0),
        _sym("tree", 50.0),
    ]
    transforms = [
        _declared("extract_features", "ts14", 100.0, 10, "M"),
        _declared("characterize", "vec322", 50.0, 10, "M"),
        _declared("pcp_plot", "pcp", 20.0, 5, "V"),
        _declared("select_variables", "tree", 30.0, 200, "H"),
        _declared("c45", "tree", 600.0, 5, "M"),
    ]
    edges = [
        _edge("videos", "ts14", "extract_features"),
        _edge("ts14", "vec322", "characterize"),
        _edge("vec322", "pcp", "pcp_plot"),
        _edge("pcp", "tree", "select_variables"),
        _edge("vec322", "tree", "c45"),
    ]
    data = {
        "schema_version": SCHEMA_VERSION,
        "entropy_mode": "actual",
        "cost_model": {"kind": "time", "unit": "min"},
        "fixture_tag": "decision_tree",
        "alphabets": alphabets,
        "transforms": transforms,
        "graph": {"edges": edges, "decisional": "tree"},
    }
    return parse_spec(json.dumps(data))


def _decision_tree_expected() -> list:
    return [
        Expectation("node:vec322:max_entropy", "approx", 2576.0, 1e-6, "derived"),
        Expectation(
            "path:vec322,pcp,tree:benefit", "gt", "path:vec322,tree:benefit", 0.0, "qualitative"
        ),
        Expectation(
            "path:vec322,pcp,tree:cost", "gt", "path:vec322,tree:cost", 0.0, "qualitative"
        ),
        Expectation("edge:c45:pdr", "gt", "edge:select_variables:pdr", 0.0, "qualitative"),
    ]


FIXTURE_NAMES = (
    "share_price_chain",
    "plot_vs_binary",
    "overview_interaction",
    "sports_events",
    "readability",
    "decision_tree",
)


def load_fixture(name: str) -> Fixture:
    if name == "share_price_chain":
        return Fixture(name, fixture_share_price(1), share_price_expected(1))
    if name == "plot_vs_binary":
        return Fixture(name, fixture_plot_vs_binary(), _plot_vs_binary_expected())
    if name == "overview_interaction":
        return Fixture(name, fixture_overview_interaction(), _overview_expected())
    if name == "sports_events":
        return Fixture(name, fixture_sports_events(), _sports_expected())
    if name == "readability":
        return Fixture(name, fixture_readability(), _readability_expected())
    if name == "decision_tree":
        return Fixture(name, fixture_decision_tree(), _decision_tree_expected())
    raise KeyError(name)


def all_fixtures() -> list:
    return [load_fixture(n) for n in FIXTURE_NAMES]
