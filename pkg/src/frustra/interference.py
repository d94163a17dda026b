"""Constructive and destructive interference of entanglement.

Compares the block entropy of a superposition against the average block
entropy of its labeled components.  Ratios above 1 mean the superposition
carries more entanglement than its parts on average (constructive); below
1, less (destructive).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spin_core import (
    Bipartition,
    StateVector,
    ValidationError,
    block_entropy,
)
from .closed_forms import (
    BoundaryPath,
    rvb_boundary_entropy,
    rvb_plaquette_entropy,
)

VERDICT_TOL = 1e-6


class IncomparableError(ValidationError):
    """Raised when a ratio is requested against a zero denominator."""


@dataclass(frozen=True)
class InterferenceReport:
    e_super: float
    e_avg: float
    ratio: float
    verdict: str


def make_report(e_super: float, e_avg: float) -> InterferenceReport:
    if e_avg <= 0.0:
        raise IncomparableError("average entropy is zero; ratio undefined")
    ratio = e_super / e_avg
    if ratio > 1.0 + VERDICT_TOL:
        verdict = "constructive"
    elif ratio < 1.0 - VERDICT_TOL:
        verdict = "destructive"
    else:
        verdict = "marginal"
    return InterferenceReport(e_super, e_avg, ratio, verdict)


def rvb_average_entropy(d: float, path: BoundaryPath) -> float:
    """Average entropy over HH/VV configurations: Ebar = 2hd + 2v(1-d).

    A horizontally-intersected plaquette contains vertical singlets with
    probability d and then contributes two cut singlets, and mirrored for
    vertical intersections.
    """
    if not (0.0 <= d <= 1.0):
        raise ValidationError("d must lie in [0, 1]")
    return 2.0 * path.h * d + 2.0 * path.v * (1.0 - d)


_PATH_SHAPES = {
    "square": BoundaryPath(1, 1),
    "horizontal": BoundaryPath(1, 0),
    "vertical": BoundaryPath(0, 1),
}


def rvb_interference_curve(shape: str, d_grid):
    """Ratio E/Ebar along a density grid for a boundary shape.

    Returns a list of (d, ratio, skipped) triples; points where the average
    entropy vanishes are flagged as skipped with ratio NaN.
    """
    if shape not in _PATH_SHAPES:
        raise ValidationError(f"unknown path shape {shape!r}")
    path = _PATH_SHAPES[shape]
    out = []
    for d in d_grid:
        if not (0.0 < d < 1.0):
            raise ValidationError("grid densities must lie strictly in (0, 1)")
        e_avg = rvb_average_entropy(d, path)
        if e_avg <= 0.0:
            out.append((float(d), math.nan, True))
            continue
        e = rvb_boundary_entropy(d, path)
        out.append((float(d), e / e_avg, False))
    return out


def curve_to_tsv(curve) -> str:
    lines = ["d\tratio"]
    for d, ratio, skipped in curve:
        if skipped:
            continue
        lines.append(f"{d:.12g}\t{ratio:.12g}")
    return "\n".join(lines) + "\n"


def component_average_entropy(components, cut: Bipartition, weights=None) -> float:
    """Weighted average block entropy of the listed component states.

    Weights default to uniform, matching the equal-weight superpositions in
    scope here.
    """
    comps = list(components)
    if not comps:
        raise ValidationError("need at least one component")
    if weights is None:
        weights = [1.0 / len(comps)] * len(comps)
    weights = np.asarray(weights, dtype=float)
    if abs(weights.sum() - 1.0) > 1e-9:
        raise ValidationError("weights must sum to 1")
    return float(
        sum(w * block_entropy(c.normalized(), cut) for w, c in zip(weights, comps))
    )


def superposition_vs_average(components, cut: Bipartition) -> InterferenceReport:
    """Compare the equal superposition of the components with their average."""
    comps = [c.normalized() for c in components]
    total = np.sum([c.amplitudes for c in comps], axis=0)
    sup = StateVector(comps[0].num_sites, total).normalized()
    e_super = block_entropy(sup, cut)
    e_avg = component_average_entropy(comps, cut)
    return make_report(e_super, e_avg)


def covering_interference(m: int, k: int) -> InterferenceReport:
    """Heisenberg-gas singlet coverings: superposition vs component average.

    Components are the m! black-to-white singlet coverings; the cut takes
    the first k (black) sites.
    """
    from .models import heisenberg_covering_states

    if not (1 <= k < 2 * m):
        raise ValidationError("k out of range")
    comps = heisenberg_covering_states(m)
    return superposition_vs_average(comps, Bipartition.contiguous(k))


def frustrated_vs_unfrustrated_ratio(spec_frustrated, spec_control, cut: Bipartition):
    """Ratio of cooled-state entropies between a frustrated model and its
    sign-flipped control."""
    from .cooling import cool
    from .models import build_model, default_initial_state

    if spec_frustrated == spec_control:
        return 1.0
    e = []
    for spec in (spec_frustrated, spec_control):
        h = build_model(spec)
        cooled = cool(h, default_initial_state(spec))
        e.append(block_entropy(cooled.state, cut))
    if e[1] <= 0.0:
        raise IncomparableError("control entropy is zero; ratio undefined")
    return e[0] / e[1]
