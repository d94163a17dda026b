import numpy as np
import pytest

from frustra.spin_core import ValidationError, build_dense, diagonalize
from frustra.models import (
    ModelSpec,
    build_heisenberg_gas,
    build_ising_gas,
    build_mg_chain,
    build_model,
    build_shastry_sutherland,
    build_single_bond_ising,
    build_ferromagnetic_ring,
    default_initial_state,
    dimer_product_state,
    heisenberg_covering_states,
    mg_dimer_states,
    shastry_dimer_state,
    shastry_sutherland_diagonals,
)


def ground_columns(op):
    dec = diagonalize(op)
    return dec.ground_manifold()


def test_ising_gas_minimal():
    op = build_ising_gas(1, 0.0, 1.0)
    assert op.terms == ((1.0, "ZZ"),)


def test_ising_gas_ground_sector_lambda0():
    g = ground_columns(build_ising_gas(2, 0.0))
    assert g.shape[1] == 6
    for col in range(6):
        support = np.flatnonzero(np.abs(g[:, col]) > 1e-10)
        assert all(bin(b).count("1") == 2 for b in support)


def test_ising_gas_ground_sector_lambda_half():
    # 2m*lambda = 2: ground sector has m(1+lambda) = 3 zeros, so one 1-bit
    g = ground_columns(build_ising_gas(2, 0.5))
    assert g.shape[1] == 4
    for col in range(4):
        support = np.flatnonzero(np.abs(g[:, col]) > 1e-10)
        assert all(bin(b).count("1") == 1 for b in support)


@pytest.mark.parametrize("m,dim", [(1, 1), (2, 2), (3, 5)])
def test_heisenberg_gas_ground_dimension(m, dim):
    assert ground_columns(build_heisenberg_gas(m)).shape[1] == dim


def test_heisenberg_gas_term_count():
    op = build_heisenberg_gas(2)
    assert len(op.terms) == 3 * 6  # all pairs of 4 sites, three letters each
    assert all(c == pytest.approx(1.0 / 4.0) for c, _ in op.terms)


def test_mg_ground_space_contains_dimers():
    for m in (2, 3):
        h = build_mg_chain(m)
        dec = diagonalize(h)
        e0 = dec.eigenvalues[0]
        gp, gm = mg_dimer_states(m)
        for g in (gp, gm):
            assert h.expectation(g) == pytest.approx(e0, abs=1e-9)
            # eigenstate residual
            res = h.apply(g.amplitudes) - e0 * g.amplitudes
            assert np.linalg.norm(res) < 1e-9


def test_mg_ground_degeneracy_2m6():
    assert ground_columns(build_mg_chain(3)).shape[1] == 2


def test_mg_dimer_energy_2m8():
    # exact ground energy -(3/2) J1 m for the dimer construction
    h = build_mg_chain(4, j1=1.0)
    gp, _ = mg_dimer_states(4)
    assert h.expectation(gp) == pytest.approx(-12.0, abs=1e-9)
    assert diagonalize(h).eigenvalues[0] == pytest.approx(-12.0, abs=1e-8)


def test_single_bond_ground_manifold_size():
    for m in (2, 3):
        g = ground_columns(build_single_bond_ising(m))
        assert g.shape[1] == 4 * m


def test_single_bond_ground_energy():
    # one unsatisfied bond: energy -J(2m - 2) relative to all bonds satisfied
    h = build_single_bond_ising(2, j=1.0)
    assert diagonalize(h).eigenvalues[0] == pytest.approx(-2.0)


def test_ferromagnetic_ring_control():
    g = ground_columns(build_ferromagnetic_ring(3))
    assert g.shape[1] == 2


def test_shastry_dimer_is_exact_eigenstate():
    h = build_shastry_sutherland(4, 0.3, 1.0)
    st = shastry_dimer_state(4)
    e = h.expectation(st)
    # each diagonal singlet scores -3 J2; NN terms average to zero
    assert e == pytest.approx(-3.0 * 1.0 * 8, abs=1e-9)
    res = h.apply(st.amplitudes) - e * st.amplitudes
    assert np.linalg.norm(res) < 1e-9


def test_shastry_rejects_bad_lattice():
    with pytest.raises(ValidationError):
        build_shastry_sutherland(2, 1.0, 1.0)
    with pytest.raises(ValidationError):
        build_shastry_sutherland(5, 1.0, 1.0)


def test_shastry_diagonal_count():
    pairs = shastry_sutherland_diagonals(4)
    assert len(pairs) == 8
    flat = [s for p in pairs for s in p]
    assert len(set(flat)) == 16  # perfect dimer cover


def test_dimer_product_rejects_overlap():
    with pytest.raises(ValidationError):
        dimer_product_state(4, [(0, 1), (1, 2)])


def test_covering_states_count_and_norm():
    states = heisenberg_covering_states(3)
    assert len(states) == 6
    for st in states:
        assert st.norm == pytest.approx(1.0)


def test_default_initial_state_single_bond():
    spec = ModelSpec(kind="SingleBondIsing", m=2)
    st = default_initial_state(spec)
    np.testing.assert_allclose(np.abs(st.amplitudes), 0.25, atol=1e-12)


def test_default_initial_state_mg_pattern():
    spec = ModelSpec(kind="MajumdarGhosh", m=3)
    st = default_initial_state(spec)
    # sites 0..3 pinned to |0101>, last two sites free in |+>
    support = np.flatnonzero(np.abs(st.amplitudes) > 1e-12)
    assert all((b & 0b1111) == 0b1010 for b in support)
    assert len(support) == 4


def test_default_initial_state_rejects_zero_product():
    spec = ModelSpec(kind="IsingGasLR", m=2)
    with pytest.raises(ValidationError):
        default_initial_state(spec, alpha=1.0, beta=0.0)


def test_model_spec_json_roundtrip():
    spec = ModelSpec(kind="IsingGasLR", m=3, lam=1.0 / 3.0)
    again = ModelSpec.from_json(spec.to_json())
    assert again == spec


def test_model_spec_validation():
    with pytest.raises(ValidationError):
        ModelSpec(kind="nope", m=2)
    with pytest.raises(ValidationError):
        ModelSpec(kind="IsingGasLR", m=2, lam=1.5)
    with pytest.raises(ValidationError):
        ModelSpec(kind="MajumdarGhosh", m=2, j1=-1.0)


def test_build_model_dispatch():
    spec = ModelSpec(kind="SingleBondIsing", m=3)
    h = build_model(spec)
    assert h.num_sites == 6 and h.is_diagonal()
    spec = ModelSpec(kind="HeisenbergGasLR", m=2)
    assert build_model(spec).num_sites == 4


def test_builders_emit_hermitian_operators():
    rng = np.random.default_rng(0)
    for op in (build_ising_gas(2, 0.5), build_heisenberg_gas(2), build_mg_chain(2)):
        h = build_dense(op)
        np.testing.assert_allclose(h, h.conj().T, atol=1e-12)
        psi = rng.normal(size=h.shape[0]) + 1j * rng.normal(size=h.shape[0])
        psi /= np.linalg.norm(psi)
        assert abs(np.vdot(psi, h @ psi).imag) < 1e-10


def test_ising_builders_are_diagonal():
    assert build_ising_gas(3, 0.5).is_diagonal()
    assert build_single_bond_ising(3).is_diagonal()
