import numpy as np
import pytest

from frustra.spin_core import (
    Bipartition,
    OrthogonalInitialStateError,
    StateVector,
    basis_state,
    block_entropy,
    product_state,
)
from frustra.models import (
    ModelSpec,
    build_ising_gas,
    build_mg_chain,
    default_initial_state,
)
from frustra.cooling import (
    EntropyReport,
    cool,
    cool_excited,
    cooled_entropy_scan,
    maximize_cooled_entropy,
    reports_to_csv,
)


def uniform_state(n):
    return product_state([(1, 1)] * n)


def test_cool_ferromagnet_gives_ghz():
    h = build_ising_gas(2, 0.0, j=-1.0)
    cooled = cool(h, uniform_state(4))
    expected = np.zeros(16)
    expected[0] = expected[15] = 1 / np.sqrt(2)
    np.testing.assert_allclose(np.abs(cooled.state.amplitudes), expected, atol=1e-12)
    assert cooled.z == pytest.approx(2 / 16)


def test_cool_af_gives_dicke_independent_of_alpha_beta():
    h = build_ising_gas(2, 0.0)
    ref = None
    for alpha, beta in [(1, 1), (0.6, 0.8), (0.3, 0.95)]:
        init = product_state([(alpha, beta)] * 4)
        cooled = cool(h, init)
        support = np.flatnonzero(np.abs(cooled.state.amplitudes) > 1e-12)
        assert all(bin(b).count("1") == 2 for b in support)
        assert len(support) == 6
        if ref is None:
            ref = cooled.state
        assert cooled.state.fidelity(ref) == pytest.approx(1.0, abs=1e-10)


def test_cool_orthogonal_initial_state():
    h = build_ising_gas(2, 0.0)
    with pytest.raises(OrthogonalInitialStateError):
        cool(h, basis_state(4, 0))


def test_cool_idempotent():
    h = build_ising_gas(3, 0.0)
    cooled = cool(h, uniform_state(6))
    again = cool(h, cooled.state)
    assert again.state.fidelity(cooled.state) >= 1 - 1e-12


def test_cool_z_monotone_in_threshold():
    h = build_ising_gas(2, 0.0)
    init = uniform_state(4)
    zs = [cool(h, init, threshold=t).z for t in (-0.9, 0.1, 3.1)]
    assert zs == sorted(zs)


def test_cool_z_decomposes_over_retained_manifolds():
    h = build_ising_gas(2, 0.5)
    init = product_state([(0.6, 0.8)] * 4)
    cooled = cool(h, init, threshold=10.0)
    diag = h.diagonal()
    z_direct = sum(
        abs(a) ** 2 for a, e in zip(init.amplitudes, diag) if e <= cooled.threshold
    )
    assert cooled.z == pytest.approx(z_direct, abs=1e-10)
    assert cooled.num_retained == int(np.sum(diag <= cooled.threshold))


def test_cool_diagonal_fast_path_is_a_projection():
    # the fast path must keep ground-sector amplitudes proportional to the
    # initial ones and zero out everything else
    h = build_ising_gas(2, 0.0)
    init = product_state([(0.7, 0.5)] * 4)
    fast = cool(h, init)
    diag = h.diagonal()
    support = np.flatnonzero(np.abs(fast.state.amplitudes) > 1e-12)
    assert np.all(diag[support] <= fast.threshold)
    ratios = fast.state.amplitudes[support] / init.amplitudes[support]
    assert np.allclose(ratios, ratios[0])


def test_cool_excited_one_manifold_is_ground_cool():
    h = build_ising_gas(2, 0.0)
    init = uniform_state(4)
    a = cool(h, init)
    b = cool_excited(h, init, 1)
    assert a.state.fidelity(b.state) >= 1 - 1e-12


def test_cool_excited_two_manifolds_sectors():
    h = build_ising_gas(2, 0.0)
    cooled = cool_excited(h, uniform_state(4), 2)
    support = np.flatnonzero(np.abs(cooled.state.amplitudes) > 1e-12)
    sectors = {sum(1 - 2 * ((b >> i) & 1) for i in range(4)) for b in support}
    assert sectors == {0, 2, -2}


def test_cool_excited_all_manifolds_returns_initial():
    h = build_ising_gas(2, 0.0)
    init = product_state([(0.6, 0.8)] * 4)
    cooled = cool_excited(h, init, 99)
    assert cooled.state.fidelity(init) >= 1 - 1e-12
    assert cooled.z == pytest.approx(1.0)


def test_case1_cooled_matches_dicke_construction():
    # ground sector of the lambda = 1/2, m = 2 gas has 3 zeros per bitstring
    h = build_ising_gas(2, 0.5)
    for alpha, beta in [(1, 1), (0.6, 0.8)]:
        cooled = cool(h, product_state([(alpha, beta)] * 4))
        amps = np.zeros(16)
        for b in range(16):
            if bin(b).count("1") == 1:
                amps[b] = 1.0
        dicke = StateVector(4, amps / 2.0)
        assert cooled.state.fidelity(dicke) >= 1 - 1e-10


def test_entropy_scan_rows_and_csv():
    spec = ModelSpec(kind="SingleBondIsing", m=3)
    init = default_initial_state(spec)
    cuts = [Bipartition.contiguous(k) for k in (1, 2, 3)]
    reports = cooled_entropy_scan(spec, init, ["ground"], cuts)
    assert [r.k for r in reports] == [1, 2, 3]
    csv = reports_to_csv(reports)
    assert csv.splitlines()[0] == EntropyReport.CSV_HEADER
    assert len(csv.splitlines()) == 4


def test_entropy_scan_case6_constant_in_k():
    # stated invariance of the cut size for the single-flipped-bond ring
    spec = ModelSpec(kind="SingleBondIsing", m=4)
    init = default_initial_state(spec)
    cuts = [Bipartition.contiguous(k) for k in (1, 2, 3, 4)]
    reports = cooled_entropy_scan(spec, init, ["ground"], cuts)
    es = [r.entropy for r in reports]
    assert max(es) - min(es) < 1e-6, f"entropies vary with k: {es}"


def test_entropy_scan_case6_decreasing_in_size():
    es = []
    for m in (3, 4, 5, 6):
        spec = ModelSpec(kind="SingleBondIsing", m=m)
        reports = cooled_entropy_scan(
            spec,
            default_initial_state(spec),
            ["ground"],
            [Bipartition.contiguous(2)],
        )
        es.append(reports[0].entropy)
    assert all(a > b for a, b in zip(es, es[1:])), f"not decreasing: {es}"


def test_mg_scan_golden_value():
    # E_{4:rest} of the 2m=8 Majumdar-Ghosh chain, with the initial product
    # state chosen to maximize the cooled entropy
    h = build_mg_chain(4)
    e, cooled, initial = maximize_cooled_entropy(
        h, Bipartition.contiguous(4), seed=11, restarts=4
    )
    assert e == pytest.approx(2.314, abs=0.01)
    spec = ModelSpec(kind="MajumdarGhosh", m=4)
    reports = cooled_entropy_scan(
        spec, initial, ["ground"], [Bipartition.contiguous(4)]
    )
    assert reports[0].entropy == pytest.approx(e, abs=1e-9)
