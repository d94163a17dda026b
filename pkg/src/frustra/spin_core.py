"""Bit-encoded spin-1/2 states, Pauli-string operators, and entanglement entropy.

Conventions used throughout the package:

* Site ``i`` is bit ``i`` of the basis index, with site 0 the least
  significant bit.
* Bit value 0 encodes the local state ``|0>`` with sigma^z eigenvalue +1;
  bit value 1 encodes ``|1>`` with eigenvalue -1.
* Entropies are reported in bits (logarithms base 2).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

DEFAULT_DENSE_CAP = 14
ENV_DENSE_CAP = "FRUSTRA_DENSE_CAP"

_PAULI_LETTERS = frozenset("IXYZ")


class ValidationError(ValueError):
    """Raised when inputs violate a documented precondition."""


class SizeLimitError(ValidationError):
    """Raised when a dense operation would exceed the configured site cap."""


class DegenerateCutError(ValidationError):
    """Raised when a bipartition has an empty system or environment side."""


class OrthogonalInitialStateError(ValidationError):
    """Raised when an initial state has no support below the cooling threshold."""


def dense_cap(override: int | None = None) -> int:
    """Return the maximum number of sites allowed for dense matrix work.

    Priority: explicit ``override``, then the FRUSTRA_DENSE_CAP environment
    variable, then the built-in default of 14 sites.
    """
    if override is not None:
        return int(override)
    env = os.environ.get(ENV_DENSE_CAP)
    if env is not None:
        return int(env)
    return DEFAULT_DENSE_CAP


# 16-bit lookup table for vectorized popcount on basis-index arrays.
_POPCOUNT16 = np.array([bin(x).count("1") for x in range(1 << 16)], dtype=np.int64)


def popcount(idx: np.ndarray) -> np.ndarray:
    """Population count of each entry of an integer array (up to 32 bits)."""
    idx = np.asarray(idx, dtype=np.int64)
    return _POPCOUNT16[idx & 0xFFFF] + _POPCOUNT16[(idx >> 16) & 0xFFFF]


@dataclass(frozen=True)
class StateVector:
    """A pure state of ``num_sites`` spin-1/2 sites as a dense amplitude array."""

    num_sites: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (1 << self.num_sites,):
            raise ValidationError(
                f"amplitude array must have length 2^{self.num_sites}, "
                f"got {amps.shape}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm
        if n < 1e-14:
            raise ValidationError("cannot normalize a zero state")
        return StateVector(self.num_sites, self.amplitudes / n)

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self.norm**2 - 1.0) <= tol

    def fidelity(self, other: "StateVector") -> float:
        """Squared overlap |<self|other>|^2."""
        if other.num_sites != self.num_sites:
            raise ValidationError("site counts differ")
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


@dataclass(frozen=True)
class Bipartition:
    """The ordered set of site indices forming the 'system' side of a cut."""

    system_sites: tuple

    def __post_init__(self):
        sites = tuple(int(s) for s in self.system_sites)
        if len(set(sites)) != len(sites):
            raise ValidationError("system sites must be distinct")
        object.__setattr__(self, "system_sites", sites)

    def validate(self, num_sites: int) -> None:
        if not self.system_sites or len(self.system_sites) >= num_sites:
            raise DegenerateCutError(
                "system side must be a proper nonempty subset of the sites"
            )
        for s in self.system_sites:
            if s < 0 or s >= num_sites:
                raise ValidationError(f"site index {s} out of range")

    @staticmethod
    def contiguous(k: int, offset: int = 0, num_sites: int | None = None) -> "Bipartition":
        """First ``k`` sites starting at ``offset`` (wrapping if num_sites given)."""
        if num_sites is None:
            return Bipartition(tuple(range(offset, offset + k)))
        return Bipartition(tuple((offset + i) % num_sites for i in range(k)))


def _term_masks(string: str):
    mx = my = mz = 0
    for i, ch in enumerate(string):
        if ch == "X":
            mx |= 1 << i
        elif ch == "Y":
            my |= 1 << i
        elif ch == "Z":
            mz |= 1 << i
        elif ch != "I":
            raise ValidationError(f"invalid Pauli letter {ch!r}")
    return mx, my, mz


@dataclass(frozen=True)
class PauliOperator:
    """A Hermitian operator given as a real-weighted sum of Pauli strings.

    The per-site letter string reads left to right as site 0, 1, ...; for
    example ``"ZIZ"`` couples sites 0 and 2 of a 3-site system.  Terms are
    canonicalized on construction: duplicate strings merge by coefficient
    addition and exact zeros are dropped.
    """

    num_sites: int
    terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        merged: dict[str, float] = {}
        for coeff, string in self.terms:
            coeff = float(coeff)
            if len(string) != self.num_sites:
                raise ValidationError(
                    f"term string {string!r} does not match {self.num_sites} sites"
                )
            if not set(string) <= _PAULI_LETTERS:
                raise ValidationError(f"invalid Pauli string {string!r}")
            merged[string] = merged.get(string, 0.0) + coeff
        canon = tuple(
            (c, s) for s, c in sorted(merged.items()) if c != 0.0
        )
        object.__setattr__(self, "terms", canon)

    def is_diagonal(self) -> bool:
        """True when every term contains only I and Z letters."""
        return all(set(s) <= {"I", "Z"} for _, s in self.terms)

    def identity_coefficient(self) -> float:
        ident = "I" * self.num_sites
        for c, s in self.terms:
            if s == ident:
                return c
        return 0.0

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """Matrix-free action H @ psi on a dense amplitude array."""
        psi = np.asarray(psi, dtype=complex)
        dim = 1 << self.num_sites
        if psi.shape != (dim,):
            raise ValidationError("state dimension mismatch")
        idx = np.arange(dim)
        out = np.zeros(dim, dtype=complex)
        for coeff, string in self.terms:
            mx, my, mz = _term_masks(string)
            flip = mx | my
            sign = 1.0 - 2.0 * (popcount(idx & (my | mz)) & 1)
            phase = (1j) ** bin(my).count("1")
            out[idx ^ flip] += coeff * phase * sign * psi
        return out

    def diagonal(self) -> np.ndarray:
        """Diagonal energies E(b) for an I/Z-only operator."""
        if not self.is_diagonal():
            raise ValidationError("operator has off-diagonal terms")
        dim = 1 << self.num_sites
        idx = np.arange(dim)
        diag = np.zeros(dim)
        for coeff, string in self.terms:
            _, _, mz = _term_masks(string)
            diag += coeff * (1.0 - 2.0 * (popcount(idx & mz) & 1))
        return diag

    def expectation(self, state: StateVector) -> float:
        return float(np.real(np.vdot(state.amplitudes, self.apply(state.amplitudes))))

    def __add__(self, other: "PauliOperator") -> "PauliOperator":
        if other.num_sites != self.num_sites:
            raise ValidationError("site counts differ")
        return PauliOperator(self.num_sites, self.terms + other.terms)

    def scaled(self, factor: float) -> "PauliOperator":
        return PauliOperator(
            self.num_sites, tuple((factor * c, s) for c, s in self.terms)
        )

    def to_text(self) -> str:
        lines = [f"{c:.17g} {s}" for c, s in self.terms]
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str, num_sites: int | None = None) -> "PauliOperator":
        """Parse the one-term-per-line ``<coeff> <string>`` format.

        ``#`` starts a comment; blank lines are skipped.  A unicode minus sign
        in the coefficient is accepted.
        """
        terms = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValidationError(f"malformed term line {raw!r}")
            coeff_s, string = parts
            coeff_s = coeff_s.replace("−", "-")
            try:
                coeff = float(coeff_s)
            except ValueError as exc:
                raise ValidationError(f"bad coefficient in {raw!r}") from exc
            terms.append((coeff, string))
        if not terms and num_sites is None:
            raise ValidationError("cannot infer site count from empty input")
        n = num_sites if num_sites is not None else len(terms[0][1])
        return PauliOperator(n, tuple(terms))


@dataclass
class SpectralDecomposition:
    """Full spectrum of a Hamiltonian: ascending eigenvalues and eigenvectors.

    ``eigenvectors`` holds one eigenvector per column.  Eigenvalues closer
    than ``degeneracy_tol`` belong to the same manifold.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degeneracy_tol: float
    num_sites: int

    def manifolds(self):
        """Yield (energy, start, stop) slices of degenerate manifolds."""
        vals = self.eigenvalues
        out = []
        start = 0
        for i in range(1, len(vals) + 1):
            if i == len(vals) or vals[i] - vals[start] > self.degeneracy_tol:
                out.append((float(vals[start]), start, i))
                start = i
        return out

    def ground_manifold(self) -> np.ndarray:
        """Columns spanning the ground manifold."""
        _, start, stop = self.manifolds()[0]
        return self.eigenvectors[:, start:stop]

    def eigenstate(self, i: int) -> StateVector:
        return StateVector(self.num_sites, self.eigenvectors[:, i])


def build_dense(op: PauliOperator, cap: int | None = None) -> np.ndarray:
    """Dense Hermitian matrix of a PauliOperator.

    Refuses to build matrices beyond the dense site cap; see ``dense_cap``.
    """
    limit = dense_cap(cap)
    if op.num_sites > limit:
        raise SizeLimitError(
            f"{op.num_sites} sites exceeds the dense limit of {limit}"
        )
    dim = 1 << op.num_sites
    idx = np.arange(dim)
    h = np.zeros((dim, dim), dtype=complex)
    for coeff, string in op.terms:
        mx, my, mz = _term_masks(string)
        flip = mx | my
        sign = 1.0 - 2.0 * (popcount(idx & (my | mz)) & 1)
        phase = (1j) ** bin(my).count("1")
        h[idx ^ flip, idx] += coeff * phase * sign
    return h


def diagonalize(
    op: PauliOperator,
    degeneracy_tol: float | None = None,
    cap: int | None = None,
) -> SpectralDecomposition:
    """Full dense diagonalization with degenerate-manifold bookkeeping.

    The default degeneracy tolerance is 1e-9 times the spectral range,
    which absorbs floating-point noise without merging distinct manifolds
    of the exactly degenerate models treated here.
    """
    h = build_dense(op, cap=cap)
    vals, vecs = np.linalg.eigh(h)
    if degeneracy_tol is None:
        spread = float(vals[-1] - vals[0]) if len(vals) > 1 else 1.0
        degeneracy_tol = 1e-9 * max(spread, 1.0)
    return SpectralDecomposition(vals, vecs, degeneracy_tol, op.num_sites)


def _split_indices(num_sites: int, cut: Bipartition):
    """Vectorized basis-index split into (system, environment) sub-indices."""
    cut.validate(num_sites)
    sys_sites = cut.system_sites
    env_sites = [s for s in range(num_sites) if s not in set(sys_sites)]
    idx = np.arange(1 << num_sites)
    sys_idx = np.zeros_like(idx)
    for j, s in enumerate(sys_sites):
        sys_idx |= ((idx >> s) & 1) << j
    env_idx = np.zeros_like(idx)
    for j, s in enumerate(env_sites):
        env_idx |= ((idx >> s) & 1) << j
    return sys_idx, env_idx, len(sys_sites), len(env_sites)


def schmidt_matrix(state: StateVector, cut: Bipartition) -> np.ndarray:
    """Amplitudes rearranged into a (system x environment) matrix."""
    sys_idx, env_idx, ns, ne = _split_indices(state.num_sites, cut)
    a = np.zeros((1 << ns, 1 << ne), dtype=complex)
    a[sys_idx, env_idx] = state.amplitudes
    return a


def partial_trace(state: StateVector, cut: Bipartition) -> np.ndarray:
    """Reduced density matrix on the system sites of the cut."""
    if not state.is_normalized(tol=1e-10):
        raise ValidationError("state must be normalized for partial trace")
    a = schmidt_matrix(state, cut)
    return a @ a.conj().T


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy of a density matrix, in bits."""
    rho = np.asarray(rho)
    tr = float(np.real(np.trace(rho)))
    if abs(tr - 1.0) > 1e-8:
        raise ValidationError(f"density matrix trace {tr} deviates from 1")
    p = np.linalg.eigvalsh(rho)
    if p.min() < -1e-12:
        raise ValidationError("density matrix is not positive semidefinite")
    p = np.clip(p, 0.0, 1.0)
    nz = p[p > 0]
    s = float(-np.sum(nz * np.log2(nz)))
    return max(s, 0.0)


def block_entropy(state: StateVector, cut: Bipartition) -> float:
    """Entanglement entropy across a bipartition, in bits.

    Computed from the singular values of the Schmidt matrix, which avoids
    forming the reduced density matrix when the environment is large.
    """
    a = schmidt_matrix(state, cut)
    n = np.linalg.norm(a)
    if abs(n - 1.0) > 1e-8:
        raise ValidationError("state must be normalized")
    p = np.linalg.svd(a, compute_uv=False) ** 2
    p = np.clip(p, 0.0, 1.0)
    nz = p[p > 0]
    s = float(-np.sum(nz * np.log2(nz)))
    return max(s, 0.0)


def shannon_entropy(weights) -> float:
    """Shannon entropy in bits of a probability vector, with 0 log 0 := 0."""
    p = np.asarray(weights, dtype=float)
    if abs(p.sum() - 1.0) > 1e-8:
        raise ValidationError("weights must sum to 1")
    nz = p[p > 0]
    return max(float(-np.sum(nz * np.log2(nz))), 0.0)


def product_state(per_site) -> StateVector:
    """Normalized tensor product of single-site amplitude pairs.

    ``per_site[i]`` gives (amplitude of |0>, amplitude of |1>) for site i.
    """
    psi = np.array([1.0 + 0j])
    for i, pair in enumerate(per_site):
        v = np.asarray(pair, dtype=complex)
        if v.shape != (2,) or np.linalg.norm(v) < 1e-14:
            raise ValidationError(f"site {i} local state is zero or malformed")
        v = v / np.linalg.norm(v)
        # site i becomes bit i: the new factor is the more significant bit
        psi = np.kron(v, psi)
    return StateVector(len(per_site), psi)


def basis_state(num_sites: int, index: int) -> StateVector:
    amps = np.zeros(1 << num_sites, dtype=complex)
    amps[index] = 1.0
    return StateVector(num_sites, amps)
