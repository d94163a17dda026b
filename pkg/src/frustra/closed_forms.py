"""Combinatorial closed forms for the entanglement of the prototype models.

These serve as oracles against exact diagonalization at small sizes and
extend the same quantities far beyond dense-diagonalization reach.  Exact
big-integer arithmetic is used where feasible, switching to log-space
(lgamma) evaluation for very large systems.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .spin_core import (
    StateVector,
    ValidationError,
    shannon_entropy,
)

# Exact rational weights up to this m; larger systems go through lgamma.
_EXACT_M_LIMIT = 1000


def _lbinom(a: int, b: int) -> float:
    if b < 0 or a < 0 or b > a:
        return -math.inf
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


# ---------------------------------------------------------------------------
# Case 1: long-range Ising gas


@dataclass(frozen=True)
class DickeSpectrum:
    """Reduced-density-matrix spectrum of a k-site block of a Dicke state.

    The weights are hypergeometric: drawing k sites out of 2m of which
    ``num_zeros`` are in |0>, weight i is the probability of finding i
    zeros inside the block.
    """

    k: int
    m: int
    lam: float
    weights: tuple

    @property
    def eigenvalues(self):
        return [(w, i) for i, w in enumerate(self.weights)]

    def entropy(self) -> float:
        return shannon_entropy(self.weights)


def ising_gas_rho_k(m: int, lam: float, k: int) -> DickeSpectrum:
    """Exact block spectrum of the cooled Ising-gas (Dicke) state.

    Requires m*(1+lam) to be an integer so the zero count of the Dicke
    state is well defined.  Weights are computed with exact big-integer
    binomials for m <= 1000 and in log-space above that.
    """
    if not (0 <= k <= 2 * m):
        raise ValidationError("k out of range")
    n0f = m * (1.0 + lam)
    n0 = round(n0f)
    if abs(n0f - n0) > 1e-9:
        raise ValidationError(
            "lambda must be on the j/m grid so that m(1+lambda) is an integer"
        )
    n = 2 * m
    if m <= _EXACT_M_LIMIT:
        denom = math.comb(n, n0)
        weights = [
            Fraction(math.comb(k, i) * math.comb(n - k, n0 - i), denom)
            if 0 <= n0 - i <= n - k
            else Fraction(0)
            for i in range(k + 1)
        ]
        assert sum(weights) == 1
        weights = tuple(float(w) for w in weights)
    else:
        lw = np.array(
            [
                _lbinom(k, i) + _lbinom(n - k, n0 - i) - _lbinom(n, n0)
                for i in range(k + 1)
            ]
        )
        weights = np.where(np.isfinite(lw), np.exp(lw), 0.0)
        weights = tuple(weights / weights.sum())
    return DickeSpectrum(k=k, m=m, lam=lam, weights=weights)


def ising_gas_asymptote(k: int, lam: float) -> float:
    """Leading-order block entropy (1/2) log2((1 - lam^2) k)."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    if not (0.0 <= lam < 1.0):
        raise ValidationError("lambda must lie in [0, 1)")
    return 0.5 * math.log2((1.0 - lam * lam) * k)


def ising_gas_stirling_weights(k: int, lam: float):
    """Binomial weights e_i = C(k,i) (1+lam)^i (1-lam)^{k-i} / 2^k."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    if not (0.0 <= lam < 1.0):
        raise ValidationError("lambda must lie in [0, 1)")
    p = (1.0 + lam) / 2.0
    lw = np.array(
        [_lbinom(k, i) + i * math.log(p) + (k - i) * math.log1p(-p) for i in range(k + 1)]
    )
    w = np.exp(lw)
    return w / w.sum()


# ---------------------------------------------------------------------------
# Case 2: long-range Heisenberg gas


def heisenberg_gas_bound(b: int, w: int) -> float:
    """Schmidt-rank bound log2((b+1)(w+1)) for a cut with b black and w
    white sites on the system side."""
    if b < 0 or w < 0:
        raise ValidationError("b and w must be nonnegative")
    return math.log2((b + 1) * (w + 1))


def heisenberg_gas_schmidt_state(m: int, k: int):
    """Angular-momentum coupling coefficients of the single-color cut.

    For a block of k same-color sites out of 2m, the cooled state couples
    the block's symmetric spin-k/2 with the rest.  Using integer labels
    a = M + k/2 (block) and b = p + m/2 (total black magnetization), the
    squared coefficient is C(k,a) C(m-k, b-a) / C(m, b) / (m+1).

    Returns (coefficients dict {(a, b): value}, reduced spectrum list over a).
    """
    if not (0 <= k <= m):
        raise ValidationError("k out of range")
    coeffs = {}
    spectrum = []
    for a in range(k + 1):
        lam_a = Fraction(0)
        for b in range(m + 1):
            if not (0 <= b - a <= m - k):
                continue
            c2 = Fraction(
                math.comb(k, a) * math.comb(m - k, b - a), math.comb(m, b)
            ) / (m + 1)
            sign = -1.0 if b % 2 else 1.0
            coeffs[(a, b)] = sign * math.sqrt(float(c2))
            lam_a += c2
        spectrum.append(float(lam_a))
    return coeffs, spectrum


# ---------------------------------------------------------------------------
# Case 3: RVB plaquette states


def rvb_q(d: float) -> float:
    """Mean-field vertical-pair amplitude q(d)."""
    if not (0.0 <= d < 1.0):
        raise ValidationError("d must lie in [0, 1)")
    return (-1.0 + math.sqrt(1.0 + 12.0 * d * (1.0 - d))) / (6.0 * (1.0 - d))


def rvb_plaquette_entropy(d: float) -> float:
    """Per-plaquette cut entropy E_pl(d) of the mean-field plaquette state.

    E_pl(d) = log2(1 + 3q^2) - (3q^2 / (1 + 3q^2)) log2(q^2).
    """
    q = rvb_q(d)
    if q == 0.0:
        return 0.0
    t = 3.0 * q * q
    return math.log2(1.0 + t) - (t / (1.0 + t)) * math.log2(q * q)


@dataclass(frozen=True)
class RVBState:
    """Plaquette-label Schmidt data of the fixed-density RVB superposition.

    ``c`` is the coefficient matrix over the orthonormalized system label l
    (vertical plaquettes among the k system plaquettes) and environment
    label r.  Its squared singular values give the block entropy in the
    plaquette-label space.
    """

    m2: int
    s: int
    k: int
    c: np.ndarray

    def entropy(self) -> float:
        p = np.linalg.svd(self.c, compute_uv=False) ** 2
        p = p / p.sum()
        return shannon_entropy(p)


def rvb_state(m2: int, d: float, k: int) -> RVBState:
    """Exact coefficient matrix of the density-d RVB state for a block of
    k whole plaquettes.

    c_{l,r} is proportional to sqrt(3^l C(k,l)) sqrt(3^r C(m2-k,r))
    C(m2-l-r, s-l-r), evaluated in log-space and normalized.
    """
    sf = d * m2
    s = round(sf)
    if abs(sf - s) > 1e-9 or not (0 <= s <= m2):
        raise ValidationError("d*m2 must be an integer vertical count in range")
    if not (0 < k < m2):
        raise ValidationError("k must satisfy 0 < k < m2")
    lmax = min(s, k)
    rmax = min(s, m2 - k)
    logs = np.full((lmax + 1, rmax + 1), -math.inf)
    for l in range(lmax + 1):
        for r in range(min(s - l, m2 - k) + 1):
            logs[l, r] = (
                0.5 * (l * math.log(3.0) + _lbinom(k, l))
                + 0.5 * (r * math.log(3.0) + _lbinom(m2 - k, r))
                + _lbinom(m2 - l - r, s - l - r)
            )
    finite = np.isfinite(logs)
    if not finite.any():
        raise ValidationError("empty coefficient matrix")
    c = np.where(finite, np.exp(logs - logs[finite].max()), 0.0)
    c = c / np.linalg.norm(c)
    return RVBState(m2=m2, s=s, k=k, c=c)


def _plaquette_pair_states():
    """The two orthonormal 4-spin plaquette states in the physical basis.

    Plaquette sites are ordered TL, TR, BL, BR as bits 0..3.  e0 is the
    horizontal singlet pair |HH>; e1 completes |VV> to an orthonormal pair
    via e1 = (2|VV> - |HH>)/sqrt(3), using <HH|VV> = 1/2.
    """

    def dimer4(pairs):
        v = np.zeros(16, dtype=complex)
        for choice in itertools.product((0, 1), repeat=2):
            idx = 0
            amp = 1.0
            for (i, j), c in zip(pairs, choice):
                if c == 0:
                    idx |= 1 << j
                    amp *= 1.0 / math.sqrt(2.0)
                else:
                    idx |= 1 << i
                    amp *= -1.0 / math.sqrt(2.0)
            v[idx] += amp
        return v

    hh = dimer4([(0, 1), (2, 3)])
    vv = dimer4([(0, 2), (1, 3)])
    e0 = hh
    e1 = (2.0 * vv - hh) / math.sqrt(3.0)
    return e0, e1


def rvb_cut_plaquette_entropy(m2: int, d: float) -> float:
    """Exact entropy of a cut slicing horizontally through one plaquette.

    The system side holds the top half (2 spins) of a single boundary
    plaquette; everything else, including the plaquette's bottom half, is
    environment.  As m2 grows this converges to the per-plaquette value
    E_pl(d) of the mean-field product state.

    When d*m2 is not an integer (odd lattices at d = 1/2) the vertical
    count is rounded to the nearest admissible sector.
    """
    s = min(max(round(d * m2), 0), m2)
    state = rvb_state(m2, s / m2, 1)
    e0, e1 = _plaquette_pair_states()
    # index basis 4-spin vector as [top, bottom] with top = bits 0,1
    el = np.stack([e0.reshape(4, 4, order="F"), e1.reshape(4, 4, order="F")])
    a = np.einsum("lr,ltb->tbr", state.c, el).reshape(4, -1)
    p = np.linalg.svd(a, compute_uv=False) ** 2
    p = p / p.sum()
    return shannon_entropy(p)


@dataclass(frozen=True)
class BoundaryPath:
    """Rectilinear boundary summary: h plaquettes intersected horizontally,
    v intersected vertically."""

    h: int
    v: int

    def __post_init__(self):
        if self.h < 0 or self.v < 0 or self.h + self.v < 1:
            raise ValidationError("need h, v >= 0 with h + v >= 1")


def rvb_boundary_entropy(d: float, path: BoundaryPath) -> float:
    """Boundary-law entropy h E_pl(d) + v E_pl(1-d) of an RVB block."""
    out = 0.0
    if path.h:
        out += path.h * rvb_plaquette_entropy(d)
    if path.v:
        out += path.v * rvb_plaquette_entropy(1.0 - d)
    return out


# ---------------------------------------------------------------------------
# Case 4: Shastry-Sutherland


def shastry_cut_dimer_count(L: int, system_sites) -> int:
    """Number of diagonal dimers crossing the boundary of the given block."""
    from .models import shastry_sutherland_diagonals

    sys_set = set(system_sites)
    count = 0
    for a, b in shastry_sutherland_diagonals(L):
        if (a in sys_set) != (b in sys_set):
            count += 1
    return count


def shastry_block_entropy(L: int, system_sites) -> float:
    """Dimer-product block entropy: one bit per cut diagonal singlet."""
    return float(shastry_cut_dimer_count(L, system_sites))


# ---------------------------------------------------------------------------
# Case 5: Majumdar-Ghosh


def mg_bounds(k: int, num_sites: int | None = None):
    """Entropy bounds for a contiguous k-site cut of the dimer manifold.

    Even k: (2, log2 5); odd k: (1, log2 3).
    """
    if k <= 0 or (num_sites is not None and k >= num_sites):
        raise ValidationError("k must satisfy 0 < k < 2m")
    if k % 2 == 0:
        return 2.0, math.log2(5.0)
    return 1.0, math.log2(3.0)


# ---------------------------------------------------------------------------
# Case 6: single flipped bond


def single_bond_cooled_state(m: int) -> StateVector:
    """Cooled state of the single-flipped-bond ring, built combinatorially.

    With the positive bond at (2m-1, 0), the classical ground manifold
    holds the two aligned configurations plus every two-domain
    configuration whose second wall sits at the flipped bond: 4m
    bitstrings in total, superposed with equal weight 1/(2 sqrt(m)).
    """
    n = 2 * m
    if n < 4:
        raise ValidationError("need at least 4 sites")
    configs = {0, (1 << n) - 1}
    for b in range(n - 1):
        # sites 0..b flipped relative to the rest; walls at bonds b and 2m-1
        pattern = (1 << (b + 1)) - 1
        configs.add(pattern)
        configs.add(pattern ^ ((1 << n) - 1))
    amps = np.zeros(1 << n, dtype=complex)
    weight = 1.0 / (2.0 * math.sqrt(m))
    for c in configs:
        amps[c] = weight
    return StateVector(n, amps)
