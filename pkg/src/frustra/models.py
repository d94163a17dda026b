"""Hamiltonian builders for the six prototype spin models and their
default initial product states.

All builders return :class:`~frustra.spin_core.PauliOperator` instances on
``2m`` (chains/gases) or ``L*L`` (lattices) sites.  Constant shifts are
dropped everywhere, so energy thresholds are always meant relative to the
ground energy of the built operator.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, asdict

import numpy as np

from .spin_core import (
    PauliOperator,
    StateVector,
    ValidationError,
    product_state,
)

KINDS = (
    "IsingGasLR",
    "HeisenbergGasLR",
    "RVBPlaquette",
    "ShastrySutherland",
    "MajumdarGhosh",
    "SingleBondIsing",
)


@dataclass(frozen=True)
class ModelSpec:
    """Flat description of a model instance, serializable as JSON."""

    kind: str
    m: int = 0
    lam: float = 0.0
    j1: float = 1.0
    j2: float = 0.0
    j3: float = 0.0
    flipped_bond: int = -1
    sign: str = "frustrated"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValidationError(f"unknown model kind {self.kind!r}")
        if self.kind == "IsingGasLR":
            if not (0.0 <= self.lam <= 1.0):
                raise ValidationError("lambda must lie in [0, 1]")
        if self.kind == "MajumdarGhosh" and self.j1 <= 0:
            raise ValidationError("MajumdarGhosh requires J1 > 0")
        if self.kind == "ShastrySutherland" and (self.j1 <= 0 or self.j2 <= 0):
            raise ValidationError("ShastrySutherland requires J1, J2 > 0")

    def lambda_on_grid(self) -> bool:
        """True when 2*m*lambda is an integer (cooled-state requirement)."""
        return abs(2 * self.m * self.lam - round(2 * self.m * self.lam)) < 1e-9

    def to_json(self) -> str:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return json.dumps(d, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "ModelSpec":
        d = json.loads(text)
        if "lambda" in d:
            d["lam"] = d.pop("lambda")
        return ModelSpec(**d)


def _two_site_term(n: int, i: int, j: int, letter: str) -> str:
    s = ["I"] * n
    s[i] = letter
    s[j] = letter
    return "".join(s)


def _one_site_term(n: int, i: int, letter: str) -> str:
    s = ["I"] * n
    s[i] = letter
    return "".join(s)


def build_ising_gas(m: int, lam: float, j: float = 1.0) -> PauliOperator:
    """Long-range Ising gas on 2m sites: (J/2m)(S - 2m*lambda)^2, constant dropped.

    S = sum_i sigma^z_i, so the expansion keeps pair terms (J/m) Z_i Z_j and
    field terms -2*J*lambda Z_i.
    """
    if m < 1:
        raise ValidationError("m must be >= 1")
    n = 2 * m
    terms = []
    for i in range(n):
        for k in range(i + 1, n):
            terms.append((j / m, _two_site_term(n, i, k, "Z")))
    if lam != 0.0:
        for i in range(n):
            terms.append((-2.0 * j * lam, _one_site_term(n, i, "Z")))
    return PauliOperator(n, tuple(terms))


def build_heisenberg_gas(m: int, j: float = 1.0) -> PauliOperator:
    """Long-range Heisenberg gas: (J/2m) sum over all pairs of sigma.sigma."""
    if m < 1:
        raise ValidationError("m must be >= 1")
    if j <= 0:
        raise ValidationError("J must be positive")
    n = 2 * m
    terms = []
    for i in range(n):
        for k in range(i + 1, n):
            for p in "XYZ":
                terms.append((j / n, _two_site_term(n, i, k, p)))
    return PauliOperator(n, tuple(terms))


def build_mg_chain(m: int, j1: float = 1.0) -> PauliOperator:
    """Majumdar-Ghosh ring: NN Heisenberg at J1 plus NNN at J1/2, PBC.

    On 4 sites the two NNN bonds are each visited twice going around the
    ring; canonicalization merges them, which keeps the dimer pair in the
    ground space as expected.
    """
    n = 2 * m
    if n < 4:
        raise ValidationError("need at least 4 sites")
    terms = []
    for i in range(n):
        for d, c in ((1, j1), (2, j1 / 2.0)):
            k = (i + d) % n
            a, b = min(i, k), max(i, k)
            for p in "XYZ":
                terms.append((c, _two_site_term(n, a, b, p)))
    return PauliOperator(n, tuple(terms))


def build_single_bond_ising(m: int, j: float = 1.0, flipped: int | None = None) -> PauliOperator:
    """NN Ising ring with a single positive (antiferromagnetic) bond.

    Bond ``b`` couples sites ``b`` and ``b+1 mod 2m``; all bonds carry
    coefficient -J except the flipped one at +J.  Default flipped bond is
    the wrap-around bond (2m-1, 0).
    """
    n = 2 * m
    if n < 4:
        raise ValidationError("need at least 4 sites")
    if flipped is None:
        flipped = n - 1
    if not (0 <= flipped < n):
        raise ValidationError("flipped bond index out of range")
    terms = []
    for b in range(n):
        i, k = b, (b + 1) % n
        a, c = min(i, k), max(i, k)
        coeff = j if b == flipped else -j
        terms.append((coeff, _two_site_term(n, a, c, "Z")))
    return PauliOperator(n, tuple(terms))


def build_ferromagnetic_ring(m: int, j: float = 1.0) -> PauliOperator:
    """All-negative-bond control variant of the NN Ising ring."""
    n = 2 * m
    terms = []
    for b in range(n):
        i, k = b, (b + 1) % n
        terms.append((-j, _two_site_term(n, min(i, k), max(i, k), "Z")))
    return PauliOperator(n, tuple(terms))


def shastry_sutherland_diagonals(L: int):
    """The two families of dimer diagonals on an L x L lattice with PBC.

    Family A joins (2i, 2j) with (2i+1, 2j+1); family B joins (2i, 2j+1)
    with (2i-1, 2j+2).  Site index is x + L*y.
    """
    if L % 2 != 0 or L < 4:
        raise ValidationError("L must be even and at least 4")

    def site(x, y):
        return (x % L) + L * (y % L)

    pairs = []
    for i in range(L // 2):
        for jj in range(L // 2):
            pairs.append((site(2 * i, 2 * jj), site(2 * i + 1, 2 * jj + 1)))
            pairs.append((site(2 * i, 2 * jj + 1), site(2 * i - 1, 2 * jj + 2)))
    return pairs


def build_shastry_sutherland(L: int, j1: float, j2: float) -> PauliOperator:
    """Shastry-Sutherland lattice: NN Heisenberg J1 plus dimer diagonals J2."""
    pairs = shastry_sutherland_diagonals(L)
    n = L * L

    def site(x, y):
        return (x % L) + L * (y % L)

    terms = []
    seen = set()
    for x in range(L):
        for y in range(L):
            for dx, dy in ((1, 0), (0, 1)):
                a, b = site(x, y), site(x + dx, y + dy)
                key = (min(a, b), max(a, b))
                if key in seen:
                    continue
                seen.add(key)
                for p in "XYZ":
                    terms.append((j1, _two_site_term(n, key[0], key[1], p)))
    for a, b in pairs:
        key = (min(a, b), max(a, b))
        for p in "XYZ":
            terms.append((j2, _two_site_term(n, key[0], key[1], p)))
    return PauliOperator(n, tuple(terms))


def build_j1j2j3(L: int, j1: float, j2: float, j3: float) -> PauliOperator:
    """Microscopic J1-J2-J3 square-lattice Heisenberg model (PBC).

    J1 couples nearest neighbours, J2 the diagonals, J3 sites two lattice
    spacings apart along a row or column.  This builder documents one
    reading of the coupling geometry; quantitative plaquette work happens
    in the effective plaquette basis instead (see closed_forms).
    """
    if L < 4:
        raise ValidationError("L must be at least 4")
    n = L * L

    def site(x, y):
        return (x % L) + L * (y % L)

    couplings = []
    for x in range(L):
        for y in range(L):
            couplings.append((j1, site(x, y), site(x + 1, y)))
            couplings.append((j1, site(x, y), site(x, y + 1)))
            couplings.append((j2, site(x, y), site(x + 1, y + 1)))
            couplings.append((j2, site(x, y), site(x + 1, y - 1)))
            couplings.append((j3, site(x, y), site(x + 2, y)))
            couplings.append((j3, site(x, y), site(x, y + 2)))
    terms = []
    seen = set()
    for c, a, b in couplings:
        key = (min(a, b), max(a, b))
        if key in seen or c == 0.0:
            continue
        seen.add(key)
        for p in "XYZ":
            terms.append((c, _two_site_term(n, key[0], key[1], p)))
    return PauliOperator(n, tuple(terms))


def rvb_sector_hamiltonian(n_plaquettes: int, s: int) -> PauliOperator:
    """Effective plaquette-label Hamiltonian (W - s)^2, constants dropped.

    Each plaquette is a two-level label with |0> = horizontal pair and
    |1> = vertical pair; W counts vertical plaquettes.  The expansion gives
    pair terms (1/2) Z_p Z_q and field terms -(n - 2s)/2 Z_p, whose ground
    manifold is exactly the W = s sector.
    """
    if not (0 <= s <= n_plaquettes):
        raise ValidationError("s out of range")
    terms = []
    for p in range(n_plaquettes):
        for q in range(p + 1, n_plaquettes):
            terms.append((0.5, _two_site_term(n_plaquettes, p, q, "Z")))
    field = -(n_plaquettes - 2 * s) / 2.0
    if field != 0.0:
        for p in range(n_plaquettes):
            terms.append((field, _one_site_term(n_plaquettes, p, "Z")))
    return PauliOperator(n_plaquettes, tuple(terms))


def dimer_product_state(num_sites: int, pairs) -> StateVector:
    """Product of singlets (|0_i 1_j> - |1_i 0_j>)/sqrt(2) over the pairs.

    Sites not covered by any pair are left in |0>.
    """
    covered = [s for p in pairs for s in p]
    if len(set(covered)) != len(covered):
        raise ValidationError("dimer pairs overlap")
    amps = np.zeros(1 << num_sites, dtype=complex)
    pairs = list(pairs)
    w = (1.0 / math.sqrt(2.0)) ** len(pairs)
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        idx = 0
        sign = 1.0
        for (i, j), c in zip(pairs, choice):
            if c == 0:
                idx |= 1 << j
            else:
                idx |= 1 << i
                sign = -sign
        amps[idx] += sign * w
    return StateVector(num_sites, amps)


def mg_dimer_states(m: int):
    """The two Majumdar-Ghosh dimer coverings G+ and G- of the 2m-ring."""
    n = 2 * m
    gp = dimer_product_state(n, [(2 * i, 2 * i + 1) for i in range(m)])
    gm = dimer_product_state(n, [((2 * i + 1) % n, (2 * i + 2) % n) for i in range(m)])
    return gp, gm


def heisenberg_covering_states(m: int):
    """All m! singlet coverings pairing black sites 0..m-1 to white sites m..2m-1."""
    n = 2 * m
    out = []
    for perm in itertools.permutations(range(m)):
        pairs = [(i, m + perm[i]) for i in range(m)]
        out.append(dimer_product_state(n, pairs))
    return out


def shastry_dimer_state(L: int) -> StateVector:
    """Product of singlets on the Shastry-Sutherland diagonal dimers."""
    return dimer_product_state(L * L, shastry_sutherland_diagonals(L))


def build_model(spec: ModelSpec) -> PauliOperator:
    """Dispatch a ModelSpec to the matching Hamiltonian builder."""
    if spec.kind == "IsingGasLR":
        j = spec.j1 if spec.sign == "frustrated" else -abs(spec.j1)
        return build_ising_gas(spec.m, spec.lam, j)
    if spec.kind == "HeisenbergGasLR":
        return build_heisenberg_gas(spec.m, spec.j1)
    if spec.kind == "MajumdarGhosh":
        return build_mg_chain(spec.m, spec.j1)
    if spec.kind == "SingleBondIsing":
        if spec.sign == "unfrustrated":
            return build_ferromagnetic_ring(spec.m, spec.j1)
        flipped = spec.flipped_bond if spec.flipped_bond >= 0 else None
        return build_single_bond_ising(spec.m, spec.j1, flipped)
    if spec.kind == "ShastrySutherland":
        # spec.m is the linear lattice size L here
        return build_shastry_sutherland(spec.m, spec.j1, spec.j2)
    if spec.kind == "RVBPlaquette":
        # spec.m is the plaquette count, flipped_bond reused as the
        # vertical-plaquette count s of the target sector
        return rvb_sector_hamiltonian(spec.m, spec.flipped_bond)
    raise ValidationError(f"no builder for {spec.kind}")


def default_initial_state(spec: ModelSpec, alpha: complex = None, beta: complex = None) -> StateVector:
    """The per-model initial product state used for cooling.

    IsingGasLR and SingleBondIsing use the uniform product (alpha|0>+beta|1>)
    per site with default alpha = beta = 1/sqrt(2) and alpha*beta != 0
    enforced.  MajumdarGhosh uses the alternating |0>|1> pattern with two
    free sites in |+> at the end.  HeisenbergGasLR puts black sites in |0>
    and white sites in |+>.  RVBPlaquette (plaquette-label basis) uses the
    uniform label product.
    """
    if alpha is None and beta is None:
        alpha = beta = 1.0 / math.sqrt(2.0)
    if alpha is None or beta is None or abs(alpha * beta) < 1e-14:
        raise ValidationError("alpha*beta must be nonzero")
    n = 2 * spec.m
    if spec.kind in ("IsingGasLR", "SingleBondIsing"):
        return product_state([(alpha, beta)] * n)
    if spec.kind == "RVBPlaquette":
        return product_state([(alpha, beta)] * spec.m)
    if spec.kind == "MajumdarGhosh":
        phi = (alpha, beta)
        per_site = []
        for i in range(n - 2):
            per_site.append((1.0, 0.0) if i % 2 == 0 else (0.0, 1.0))
        per_site += [phi, phi]
        return product_state(per_site)
    if spec.kind == "HeisenbergGasLR":
        per_site = [(1.0, 0.0)] * spec.m + [(alpha, beta)] * spec.m
        return product_state(per_site)
    raise ValidationError(f"no default initial state for {spec.kind}")
