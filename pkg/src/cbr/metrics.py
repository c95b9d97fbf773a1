"""Per-step cost-benefit measures.

ACR, PDR and ECR are unitless ratios against the input entropy; benefit is
in bits and may be negative; incremental CBR divides benefit by the step's
cost. The machine-centric CBR variant uses mutual information in place of
an explicit reconstruction.
"""

import math
from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .alphabet import Alphabet, entropy, max_entropy
from .transform import CostRecord, Grouping, Transform, deterministic_map
from .reconstruction import Reconstruction, distortion_bits

ENTROPY_MODES = ("actual", "maximal")


@dataclass(frozen=True)
class StepMetrics:
    acr: float
    pdr: float
    ecr: float
    benefit_bits: float
    cost: CostRecord
    incremental_cbr: float
    entropy_mode: str

    def __post_init__(self):
        if self.entropy_mode not in ENTROPY_MODES:
            raise ValueError(f"unknown entropy mode {self.entropy_mode!r}")


def alphabet_compression_ratio(h_in: float, h_out: float) -> float:
    """H(out)/H(in); not clamped, since human steps can raise entropy."""
    if h_in <= 0.0:
        raise ValueError("transformation unnecessary: input entropy is zero")
    return h_out / h_in


def potential_distortion_ratio(d_kl: float, h_in: float) -> float:
    if h_in <= 0.0:
        raise ValueError("transformation unnecessary: input entropy is zero")
    if d_kl < 0.0:
        raise ValueError("distortion must be non-negative")
    return d_kl / h_in


def effectual_compression_ratio(h_in: float, h_out: float, d_kl: float) -> float:
    return alphabet_compression_ratio(h_in, h_out) + potential_distortion_ratio(d_kl, h_in)


def benefit(h_in: float, h_out: float, d_kl: float) -> float:
    """H(in) - H(out) - D_KL, in bits; negative means added uncertainty."""
    if d_kl < 0.0:
        raise ValueError("distortion must be non-negative")
    return h_in - h_out - d_kl


def incremental_cbr(benefit_bits: float, cost: CostRecord) -> float:
    return benefit_bits / cost.amount


def machine_cbr(i_bits: float, h_out: float, cost: CostRecord) -> float:
    """(I(in;out) - H(out)) / cost: the perfect-inverse benefit per cost."""
    return (i_bits - h_out) / cost.amount


def step_metrics(
    t: Transform,
    g: Optional[Reconstruction],
    input: Alphabet,
    output: Alphabet,
    entropy_mode: str = "actual",
    machine_centric: bool = False,
) -> StepMetrics:
    """Assemble all per-step measures for one edge of a workflow."""
    if entropy_mode not in ENTROPY_MODES:
        raise ValueError(f"unknown entropy mode {entropy_mode!r}")
    h = entropy if entropy_mode == "actual" else max_entropy
    h_in = h(input)
    h_out = h(output)
    d = distortion_bits(g, t, input, machine_centric=machine_centric)
    b = benefit(h_in, h_out, d)
    return StepMetrics(
        acr=alphabet_compression_ratio(h_in, h_out),
        pdr=potential_distortion_ratio(d, h_in),
        ecr=effectual_compression_ratio(h_in, h_out, d),
        benefit_bits=b,
        cost=t.cost,
        incremental_cbr=incremental_cbr(b, t.cost),
        entropy_mode=entropy_mode,
    )


def grouping_check(input: Alphabet, grouping: Transform) -> float:
    """Residual of the grouping identity H(X) = H(Y) + sum_k q(y_k) H_k."""
    if not isinstance(grouping.kind, Grouping):
        raise ValueError("mode mismatch: grouping_check requires a grouping")
    det = deterministic_map(grouping, input)
    pmf = input.model.pmf
    groups: dict = {}
    for x, y in det.items():
        groups.setdefault(y, []).append(x)

    h_x = entropy(input)
    q = {y: math.fsum(pmf[x] for x in xs) for y, xs in groups.items()}
    h_y = _kernels.entropy_bits([q[y] for y in groups])
    residual_term = 0.0
    for y, xs in groups.items():
        if q[y] <= 0.0:
            continue
        local = [pmf[x] / q[y] for x in xs]
        residual_term += q[y] * _kernels.entropy_bits(local)
    return abs(h_x - h_y - residual_term)
