"""Reconstruction functions and the distortion they leave behind.

A reconstruction maps output letters back to a distribution over input
letters; the mixture of those per-letter distributions, weighted by the
output pmf, is the observer's impression of the input. Distortion is the
KL divergence (bits) between that impression and the true input pmf.
"""

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import _kernels
from .alphabet import Alphabet, Enumerated, Pmf, entropy
from .transform import (
    DeclaredHuman,
    Grouping,
    Quantizer,
    Transform,
    deterministic_map,
    mutual_information,
    pushforward,
)

SMOOTHING_FLOOR = 1e-12


@dataclass(frozen=True)
class ExactConditional:
    """Perfect Bayesian inversion: the true conditional of input given output."""


@dataclass(frozen=True)
class UniformPreimage:
    """Uniform guess over each output letter's preimage."""


@dataclass(frozen=True)
class PriorWeighted:
    """Prior pmf over input letters, conditioned on each preimage."""

    prior: Pmf


@dataclass(frozen=True)
class DeclaredDivergence:
    """User-declared distortion in bits, for symbolic and human steps."""

    bits: float

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("declared divergence must be non-negative")


RKind = Union[ExactConditional, UniformPreimage, PriorWeighted, DeclaredDivergence]


@dataclass(frozen=True)
class Reconstruction:
    name: str
    kind: RKind


@dataclass(frozen=True)
class Impression:
    """Observer's reconstructed distribution over the input letter set."""

    alphabet: Alphabet
    pmf: Pmf


def _preimages(det_map: dict) -> dict:
    pre: dict = {}
    for lid, target in det_map.items():
        pre.setdefault(target, []).append(lid)
    return pre


def impression(g: Reconstruction, t: Transform, input: Alphabet) -> Impression:
    """Mixture impression p(z') = sum_y q_out(y) g(z'|y)."""
    kind = g.kind
    if isinstance(kind, DeclaredDivergence):
        raise ValueError("no enumerated impression available")
    if not isinstance(t.kind, (Grouping, Quantizer)):
        raise ValueError("mode mismatch: impression requires a deterministic transform")

    det = deterministic_map(t, input)
    pre = _preimages(det)
    in_pmf = input.model.pmf
    q_out = {y: math.fsum(in_pmf[x] for x in xs) for y, xs in pre.items()}

    probs = {lid: 0.0 for lid in input.letter_ids()}
    for y, xs in pre.items():
        qy = q_out[y]
        if qy <= 0.0:
            continue
        if isinstance(kind, ExactConditional):
            for x in xs:
                probs[x] += qy * (in_pmf[x] / qy)
        elif isinstance(kind, UniformPreimage):
            w = qy / len(xs)
            for x in xs:
                probs[x] += w
        else:  # PriorWeighted
            mass = math.fsum(kind.prior.get(x) for x in xs)
            if mass <= 0.0:
                raise ValueError(
                    f"prior has zero mass on the preimage of {y!r}"
                )
            for x in xs:
                probs[x] += qy * (kind.prior.get(x) / mass)
    return Impression(input, Pmf(probs))


def kl_divergence(p: Pmf, q: Pmf, smooth: bool = False) -> float:
    """D_KL(p || q) in bits.

    Requires support(p) within support(q) unless ``smooth`` is set, in which
    case q is floored at ``SMOOTHING_FLOOR`` over the union support and
    renormalized.
    """
    keys = list(q)
    qset = set(keys)
    keys += [k for k in p if k not in qset]
    pv = np.array([p.get(k) for k in keys], dtype=np.float64)
    qv = np.array([q.get(k) for k in keys], dtype=np.float64)
    if np.any((pv > 0.0) & (qv <= 0.0)):
        if not smooth:
            raise ValueError("divergence undefined: p > 0 where q = 0")
        qv = np.maximum(qv, SMOOTHING_FLOOR)
        qv = qv / qv.sum()
    return _kernels.kl_bits(pv, qv)


def distortion_bits(
    g: Optional[Reconstruction],
    t: Transform,
    input: Alphabet,
    machine_centric: bool = False,
    smooth: bool = False,
) -> float:
    """Distortion D_KL(impression || input) for one step.

    ``machine_centric`` substitutes H(input) - I(input; output), the
    perfect-inverse bound available for machine steps on enumerated
    alphabets.
    """
    if machine_centric:
        return entropy(input) - mutual_information(t, input)
    if g is None:
        if isinstance(t.kind, DeclaredHuman):
            return t.kind.declared_distortion_bits
        raise ValueError("unscored edge: no reconstruction given")
    if isinstance(g.kind, DeclaredDivergence):
        return g.kind.bits
    imp = impression(g, t, input)
    return kl_divergence(imp.pmf, input.model.pmf, smooth=smooth)
