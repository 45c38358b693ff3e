import cmath
import math

import numpy as np
import pytest
from scipy.linalg import expm

from mesoweyl import fockbench
from mesoweyl.exceptions import TruncationError
from mesoweyl.states import (
    CoherentState,
    ModeParams,
    NumberState,
    SqueezedState,
    ThermalState,
    TwoModeFactorizable,
    TwoModeProductSuperposition,
    TwoModeSeparableMixture,
    number_displacement_element,
)


def test_density_number_state():
    rho = fockbench.density_matrix(NumberState(2), 8)
    expect = np.zeros((8, 8), dtype=complex)
    expect[2, 2] = 1.0
    assert np.allclose(rho, expect, atol=0.0)


def test_density_coherent_diagonal_is_poisson():
    rho = fockbench.density_matrix(CoherentState(1.0 + 0j), 64)
    for n in range(12):
        assert rho[n, n].real == pytest.approx(math.exp(-1.0) / math.factorial(n), rel=1e-12)


def test_density_thermal_geometric():
    rho = fockbench.density_matrix(ThermalState(1.0), 64)
    ratio = rho[5, 5].real / rho[4, 4].real
    assert ratio == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize(
    "state",
    [
        NumberState(3),
        CoherentState(1.2 - 0.4j),
        SqueezedState(0.6 + 0.2j, 1.4, 0.9),
        ThermalState(0.8),
    ],
)
def test_density_matrices_hermitian_normalized_positive(state):
    dim = 160
    rho = fockbench.density_matrix(state, dim)
    assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
    assert fockbench.trace_deficit(rho) <= 1e-10
    eigs = np.linalg.eigvalsh(rho)
    assert eigs.min() >= -1e-10


def test_displacement_zero_is_identity():
    assert np.array_equal(fockbench.displacement_matrix(0j, 6), np.eye(6))


def test_displacement_vacuum_element():
    for z in (0.4 + 0.2j, -1.1j, 2.0):
        d = fockbench.displacement_matrix(z, 32)
        assert d[0, 0] == pytest.approx(math.exp(-abs(z) ** 2 / 2.0), rel=1e-13)


@pytest.mark.parametrize("z", [0.5, 0.8 + 0.6j, -1.5j, 2.0 * cmath.exp(0.3j)])
def test_displacement_inverse_and_unitarity(z):
    dim = 256
    d = fockbench.displacement_matrix(z, dim)
    dm = fockbench.displacement_matrix(-z, dim)
    inner = slice(0, 128)  # top rows/columns feel the truncation edge
    prod = (d @ dm)[inner, inner]
    assert np.max(np.abs(prod - np.eye(128))) <= 1e-8
    col_norms = np.linalg.norm(d[:, inner], axis=0)
    assert np.max(np.abs(col_norms - 1.0)) <= 1e-8


def test_displacement_matches_expm_and_closed_form():
    dim = 48
    z = 0.7 - 0.3j
    a = fockbench.ladder(dim)
    ref = expm(z * a.conj().T - z.conjugate() * a)
    d = fockbench.displacement_matrix(z, dim)
    inner = slice(0, 24)
    assert np.max(np.abs((d - ref)[inner, inner])) <= 1e-10
    for m, n in ((0, 0), (3, 1), (1, 4), (7, 7)):
        assert d[m, n] == pytest.approx(number_displacement_element(m, z, n), abs=1e-13)


def test_weyl_numeric_basics():
    assert fockbench.weyl_numeric(NumberState(1), 0j) == pytest.approx(1.0)
    val = fockbench.weyl_numeric(NumberState(1), cmath.exp(0.7j))
    assert abs(val) <= 1e-10
    for z in (0.5, 1.5j, 2.5 * cmath.exp(1.1j)):
        assert abs(fockbench.weyl_numeric(CoherentState(0.9j), z)) <= 1.0 + 1e-12


def test_weyl_numeric_pure_path_equals_dense_trace():
    state = SqueezedState(0.5, 1.0, 0.3)
    z = 0.8 * cmath.exp(0.5j)
    dim = 96
    vec = fockbench.state_vector(state, dim)
    rho = np.outer(vec, vec.conj())
    dense = fockbench.expectation(rho, fockbench.displacement_matrix(z, dim))
    fast, _ = fockbench._weyl_value(state, z, dim)
    assert abs(dense - fast) <= 1e-10


def test_weyl_numeric_raises_when_capped():
    policy = fockbench.TruncationPolicy(initial_dim=8, dim_cap=16, tol=1e-30)
    with pytest.raises(TruncationError):
        fockbench.weyl_numeric(SqueezedState(0j, 4.2), 0.5, policy)


def test_flux_matrix_elements_and_vacuum_variance():
    mode = ModeParams(1.0, xi=1.0)
    m = fockbench.flux_matrix(mode, 0.0, 16)
    for n in range(15):
        assert m[n, n + 1] == pytest.approx(math.sqrt(n + 1) / math.sqrt(2.0))
    assert np.max(np.abs(m - m.conj().T)) <= 1e-14
    rho = fockbench.density_matrix(NumberState(0), 16)
    assert fockbench.expectation(rho, m @ m).real == pytest.approx(0.5, rel=1e-14)


def test_expectation_examples():
    dim = 96
    rho = fockbench.density_matrix(ThermalState(1.0), dim)
    assert fockbench.expectation(rho, np.eye(dim)).real == pytest.approx(1.0, abs=1e-10)
    a = fockbench.ladder(dim)
    nbar = fockbench.expectation(rho, a.conj().T @ a).real
    assert nbar == pytest.approx(1.0 / (math.e - 1.0), abs=1e-10)
    rho5 = fockbench.density_matrix(NumberState(5), dim)
    assert fockbench.expectation(rho5, a.conj().T @ a).real == pytest.approx(5.0)
    with pytest.raises(ValueError):
        fockbench.expectation(rho, np.eye(dim + 1))


# ---------------------------------------------------------------------------
# two-mode

def test_two_mode_separable_number_pair_layout():
    state = TwoModeSeparableMixture(
        ((0.5, NumberState(0), NumberState(0)), (0.5, NumberState(1), NumberState(1)))
    )
    rho = fockbench.two_mode_density(state, 4, 4)
    # mode-A-major: |00> -> 0, |11> -> 1*4 + 1 = 5
    assert rho[0, 0] == pytest.approx(0.5)
    assert rho[5, 5] == pytest.approx(0.5)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
    assert np.count_nonzero(np.abs(rho) > 1e-15) == 2


def test_entangled_coherent_pair_degenerates_at_equal_amplitudes():
    a = 0.9 + 0.1j
    norm = (2.0 + 2.0) ** -0.5
    assert norm == pytest.approx(0.5)
    state = TwoModeProductSuperposition(
        ((norm, CoherentState(a), CoherentState(a)), (norm, CoherentState(a), CoherentState(a)))
    )
    rho = fockbench.two_mode_density(state, 24, 24)
    prod = fockbench.two_mode_density(TwoModeFactorizable(CoherentState(a), CoherentState(a)), 24, 24)
    assert np.max(np.abs(rho - prod)) <= 1e-12


def test_partial_trace_factorizable_and_number_pairs():
    sa, sb = CoherentState(0.7), ThermalState(1.3)
    rho = fockbench.two_mode_density(TwoModeFactorizable(sa, sb), 24, 24)
    assert np.max(np.abs(fockbench.partial_trace(rho, (24, 24), "A") - fockbench.density_matrix(sa, 24))) <= 1e-12
    assert np.max(np.abs(fockbench.partial_trace(rho, (24, 24), "B") - fockbench.density_matrix(sb, 24))) <= 1e-12

    half = 1.0 / math.sqrt(2.0)
    sep = TwoModeSeparableMixture(
        ((0.5, NumberState(1), NumberState(3)), (0.5, NumberState(3), NumberState(1)))
    )
    ent = TwoModeProductSuperposition(
        ((half, NumberState(1), NumberState(3)), (half, NumberState(3), NumberState(1)))
    )
    expect = np.zeros((8, 8), dtype=complex)
    expect[1, 1] = expect[3, 3] = 0.5
    for state in (sep, ent):
        rho = fockbench.two_mode_density(state, 8, 8)
        for keep in ("A", "B"):
            red = fockbench.partial_trace(rho, (8, 8), keep)
            assert np.max(np.abs(red - expect)) <= 1e-12


def test_partial_trace_entangled_coherent_reduction():
    a1, a2 = 0.8, 1.1j
    norm = (2.0 + 2.0 * math.exp(-abs(a1 - a2) ** 2)) ** -0.5
    state = TwoModeProductSuperposition(
        ((norm, CoherentState(a1), CoherentState(a2)), (norm, CoherentState(a2), CoherentState(a1)))
    )
    dim = 32
    red = fockbench.partial_trace(fockbench.two_mode_density(state, dim, dim), (dim, dim), "A")
    v1 = fockbench.state_vector(CoherentState(a1), dim)
    v2 = fockbench.state_vector(CoherentState(a2), dim)
    chi = complex(np.vdot(v1, v2))
    ref = norm ** 2 * (
        np.outer(v1, v1.conj()) + np.outer(v2, v2.conj())
        + chi * np.outer(v1, v2.conj()) + chi.conjugate() * np.outer(v2, v1.conj())
    )
    assert np.max(np.abs(red - ref)) <= 1e-8


def test_partial_trace_shape_validation():
    with pytest.raises(ValueError):
        fockbench.partial_trace(np.eye(12, dtype=complex), (3, 5), "A")


def test_two_mode_expectation_matches_kron_trace():
    rng = np.random.default_rng(3)
    dim = 12
    op_a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    op_b = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    states = [
        TwoModeFactorizable(ThermalState(0.9), CoherentState(0.5)),
        TwoModeSeparableMixture(
            ((0.3, NumberState(0), NumberState(2)), (0.7, NumberState(2), NumberState(0)))
        ),
        TwoModeProductSuperposition(
            ((1 / math.sqrt(2), NumberState(0), NumberState(1)),
             (1 / math.sqrt(2), NumberState(1), NumberState(0)))
        ),
    ]
    for state in states:
        rho = fockbench.two_mode_density(state, dim, dim)
        ref = complex(np.trace(rho @ np.kron(op_a, op_b)))
        val = fockbench.two_mode_expectation(state, op_a, op_b)
        assert abs(val - ref) <= 1e-10 * max(1.0, abs(ref))


def test_matrix_dump_round_trip(tmp_path):
    mat = fockbench.displacement_matrix(0.4 + 0.2j, 12)
    path = tmp_path / "d.csv"
    fockbench.dump_matrix(mat, str(path))
    back = fockbench.load_matrix(str(path))
    assert np.array_equal(back, mat)


def test_converged_two_mode_expectation_reports_dim():
    state = TwoModeFactorizable(CoherentState(1.0), CoherentState(0.5))
    val, info = fockbench.converged_two_mode_expectation(
        state, lambda d: np.eye(d, dtype=complex), lambda d: np.eye(d, dtype=complex)
    )
    assert val.real == pytest.approx(1.0, abs=1e-10)
    assert info.dim >= 64
    assert info.trace_deficit <= 1e-10
