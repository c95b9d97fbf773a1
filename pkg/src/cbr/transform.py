"""Mappings between alphabets, with cost records.

A transform pushes an input alphabet forward to an output alphabet.
Deterministic kinds (grouping, quantizer) and stochastic channels operate
on enumerated alphabets; aggregators and declared steps do symbolic bit
bookkeeping only, because the alphabets they act on are far too large to
enumerate.
"""

import math
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Union

import numpy as np

from . import _kernels
from .alphabet import (
    PROB_TOL,
    Alphabet,
    Enumerated,
    Letter,
    Pmf,
    Product,
    Symbolic,
    entropy,
)

COST_KINDS = ("energy", "time", "monetary", "abstract")
NODE_KINDS = ("M", "H", "V", "I")


@dataclass(frozen=True)
class CostRecord:
    kind: str
    amount: float
    unit: str

    def __post_init__(self):
        if self.kind not in COST_KINDS:
            raise ValueError(f"unknown cost kind {self.kind!r}")
        if not self.amount > 0:
            raise ValueError("cost must be positive: an action always has a cost")

    def __add__(self, other: "CostRecord") -> "CostRecord":
        if self.kind != other.kind or self.unit != other.unit:
            raise ValueError("incommensurable costs")
        return CostRecord(self.kind, self.amount + other.amount, self.unit)


@dataclass(frozen=True)
class Grouping:
    """Total deterministic map from input letter ids to output letter ids."""

    mapping: Mapping[str, str]


@dataclass(frozen=True)
class Quantizer:
    """Bins an ordered numeric letter domain into ``levels`` bins.

    With explicit ``boundaries`` (levels+1 ascending edges) it quantizes an
    enumerated alphabet whose letter ids parse as floats; bins are
    closed-left/open-right, last bin closed. Without boundaries it performs
    symbolic bookkeeping: each factor of a product alphabet is clamped to
    log2(levels) bits.
    """

    levels: int
    boundaries: Optional[tuple] = None

    def __post_init__(self):
        if self.levels < 1:
            raise ValueError("quantizer needs at least one bin")
        if self.boundaries is not None:
            b = self.boundaries
            if len(b) != self.levels + 1:
                raise ValueError("boundaries must have levels+1 edges")
            if any(b[i] >= b[i + 1] for i in range(len(b) - 1)):
                raise ValueError("boundaries must be strictly increasing")


@dataclass(frozen=True)
class Aggregator:
    """Merges ``window`` consecutive factors of a product alphabet.

    Symbolic-mode bookkeeping only; the per-window statistic is recorded as
    a tag and the aggregate is assumed to keep the factor's bit width.
    """

    window: int
    statistic: str = "mean"

    def __post_init__(self):
        if self.window < 1:
            raise ValueError("window must be positive")


@dataclass(frozen=True)
class Channel:
    """Row-stochastic conditional pmf from input letters to output letters."""

    inputs: tuple
    outputs: tuple
    matrix: tuple  # rows of per-output probabilities, aligned with inputs/outputs

    def __post_init__(self):
        mat = self.as_array()
        if mat.shape != (len(self.inputs), len(self.outputs)):
            raise ValueError("channel matrix shape mismatch")
        if np.any(mat < 0) or np.any(mat > 1):
            raise ValueError("channel entries must be probabilities")
        sums = mat.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > PROB_TOL):
            raise ValueError("channel rows must each sum to 1")

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.float64)


@dataclass(frozen=True)
class DeclaredHuman:
    """A declared step: output alphabet and distortion are user estimates.

    Used for human processing and for machine/visual steps over symbolic
    alphabets, where distortion cannot be computed from an enumerated model.
    """

    output: Alphabet
    declared_distortion_bits: float = 0.0

    def __post_init__(self):
        if self.declared_distortion_bits < 0:
            raise ValueError("declared distortion must be non-negative")


Kind = Union[Grouping, Quantizer, Aggregator, Channel, DeclaredHuman]


@dataclass(frozen=True)
class Transform:
    name: str
    kind: Kind
    cost: CostRecord
    node_kind: str = "M"

    def __post_init__(self):
        if self.node_kind not in NODE_KINDS:
            raise ValueError(f"unknown node kind {self.node_kind!r}")


def identity_grouping(input: Alphabet, name: str, cost: CostRecord, node_kind: str = "M") -> Transform:
    ids = input.letter_ids()
    return Transform(name, Grouping({i: i for i in ids}), cost, node_kind)


def deterministic_map(t: Transform, input: Alphabet) -> dict:
    """Input-letter-id -> output-letter-id map for deterministic kinds."""
    k = t.kind
    if isinstance(k, Grouping):
        ids = input.letter_ids()
        missing = [i for i in ids if i not in k.mapping]
        if missing:
            raise ValueError(f"partial mapping: unmapped letters {missing[:3]}")
        return {i: k.mapping[i] for i in ids}
    if isinstance(k, Quantizer):
        if k.boundaries is None:
            raise ValueError("mode mismatch: symbolic quantizer has no letter map")
        b = k.boundaries
        out = {}
        for lid in input.letter_ids():
            try:
                v = float(lid)
            except ValueError:
                raise ValueError(f"partial mapping: letter {lid!r} is not numeric")
            if v < b[0] or v > b[-1]:
                raise ValueError(f"partial mapping: letter {lid!r} outside bin range")
            # closed-left/open-right; last bin closed on the right
            i = min(int(np.searchsorted(b, v, side="right")) - 1, k.levels - 1)
            out[lid] = f"bin{i}"
        return out
    raise ValueError("mode mismatch: transform is not deterministic")


def _grouped_pmf(det_map: dict, input: Alphabet) -> dict:
    pmf = input.model.pmf
    out: dict = {}
    for lid, target in det_map.items():
        out[target] = out.get(target, 0.0) + pmf[lid]
    return out


def pushforward(t: Transform, input: Alphabet, name: Optional[str] = None) -> Alphabet:
    """Image alphabet of ``input`` under ``t``."""
    k = t.kind
    name = name or f"{t.name}({input.name})"

    if isinstance(k, DeclaredHuman):
        return k.output

    if isinstance(k, Aggregator):
        m = input.model
        if not isinstance(m, Product):
            raise ValueError("mode mismatch: aggregator requires a product alphabet")
        if m.count % k.window != 0:
            raise ValueError("window does not divide the factor count")
        return Alphabet(name, Product(m.factor, m.count // k.window))

    if isinstance(k, Quantizer) and k.boundaries is None:
        m = input.model
        if not isinstance(m, Product) or not isinstance(m.factor.model, Symbolic):
            raise ValueError(
                "mode mismatch: symbolic quantizer requires a product of symbolic factors"
            )
        bits = math.log2(k.levels)
        f = m.factor.model
        clamped = Alphabet(
            f"{m.factor.name}@{k.levels}",
            Symbolic(min(f.entropy_bits, bits), min(f.max_entropy_bits, bits)),
        )
        return Alphabet(name, Product(clamped, m.count))

    if isinstance(k, Channel):
        if not input.is_enumerated:
            raise ValueError("mode mismatch: channel requires an enumerated alphabet")
        ids = input.letter_ids()
        if set(ids) != set(k.inputs):
            raise ValueError("partial mapping: channel inputs do not match alphabet")
        p = np.array([input.model.pmf[i] for i in k.inputs])
        q = p @ k.as_array()
        probs = {o: float(q[j]) for j, o in enumerate(k.outputs)}
        letters = tuple(Letter(o) for o in k.outputs)
        return Alphabet(name, Enumerated(letters, Pmf(probs)))

    # Grouping / enumerated quantizer
    if not input.is_enumerated:
        raise ValueError("mode mismatch: deterministic transform requires enumerated input")
    det = deterministic_map(t, input)
    probs = _grouped_pmf(det, input)
    seen = []
    for lid in input.letter_ids():
        if det[lid] not in seen:
            seen.append(det[lid])
    letters = tuple(Letter(o) for o in seen)
    return Alphabet(name, Enumerated(letters, Pmf(probs)))


def joint_distribution(t: Transform, input: Alphabet) -> tuple:
    """(joint matrix, input ids, output ids) of input and pushed-forward output."""
    if not input.is_enumerated:
        raise ValueError("requires enumerated model")
    k = t.kind
    if isinstance(k, Channel):
        ids = input.letter_ids()
        if set(ids) != set(k.inputs):
            raise ValueError("partial mapping: channel inputs do not match alphabet")
        p = np.array([input.model.pmf[i] for i in k.inputs])
        joint = p[:, None] * k.as_array()
        return joint, tuple(k.inputs), tuple(k.outputs)
    if isinstance(k, (Grouping, Quantizer)):
        det = deterministic_map(t, input)
        in_ids = input.letter_ids()
        out_ids = []
        for lid in in_ids:
            if det[lid] not in out_ids:
                out_ids.append(det[lid])
        joint = np.zeros((len(in_ids), len(out_ids)))
        col = {o: j for j, o in enumerate(out_ids)}
        for i, lid in enumerate(in_ids):
            joint[i, col[det[lid]]] = input.model.pmf[lid]
        return joint, tuple(in_ids), tuple(out_ids)
    raise ValueError("mode mismatch: no joint distribution for this transform kind")


def mutual_information(t: Transform, input: Alphabet) -> float:
    """I(input; output) in bits; equals output entropy for deterministic kinds."""
    joint, _, _ = joint_distribution(t, input)
    return _kernels.mi_bits(joint)


def _as_channel(t: Transform) -> Channel:
    k = t.kind
    if isinstance(k, Channel):
        return k
    if isinstance(k, Grouping):
        inputs = tuple(k.mapping)
        outputs = []
        for i in inputs:
            if k.mapping[i] not in outputs:
                outputs.append(k.mapping[i])
        col = {o: j for j, o in enumerate(outputs)}
        rows = []
        for i in inputs:
            row = [0.0] * len(outputs)
            row[col[k.mapping[i]]] = 1.0
            rows.append(tuple(row))
        return Channel(inputs, tuple(outputs), tuple(rows))
    raise ValueError("mode mismatch: cannot compose this transform kind")


def compose(t1: Transform, t2: Transform) -> Transform:
    """Transform equivalent to applying ``t1`` then ``t2``; costs add."""
    cost = t1.cost + t2.cost  # raises on kind/unit mismatch
    k1, k2 = t1.kind, t2.kind
    name = f"{t1.name}>{t2.name}"
    if isinstance(k1, Grouping) and isinstance(k2, Grouping):
        missing = [v for v in set(k1.mapping.values()) if v not in k2.mapping]
        if missing:
            raise ValueError(f"partial mapping: unmapped letters {missing[:3]}")
        mapping = {i: k2.mapping[k1.mapping[i]] for i in k1.mapping}
        return Transform(name, Grouping(mapping), cost, t2.node_kind)
    c1, c2 = _as_channel(t1), _as_channel(t2)
    if set(c1.outputs) - set(c2.inputs):
        raise ValueError("partial mapping: intermediate letters not covered")
    idx = {i: j for j, i in enumerate(c2.inputs)}
    m1 = c1.as_array()
    m2 = c2.as_array()[[idx[o] for o in c1.outputs], :]
    mat = m1 @ m2
    rows = tuple(tuple(float(v) for v in row) for row in mat)
    return Transform(name, Channel(c1.inputs, c2.outputs, rows), cost, t2.node_kind)


def with_cost(t: Transform, amount: float) -> Transform:
    return replace(t, cost=replace(t.cost, amount=amount))
