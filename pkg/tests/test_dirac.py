import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relspin import dirac
from relspin.dirac import PAULI, PhysicalConstants
from relspin.verify import check_dirac_algebra

I4 = np.eye(4)


def test_beta_is_diag_upper_plus_lower_minus():
    assert np.array_equal(dirac.beta_matrix(), np.diag([1, 1, -1, -1]).astype(complex))


@pytest.mark.parametrize("i", [1, 2, 3])
def test_alpha_off_diagonal_pauli_blocks(i):
    # independent construction: sigma_x (x) sigma_i
    expected = np.kron(np.array([[0, 1], [1, 0]]), PAULI[i - 1])
    assert np.array_equal(dirac.alpha_matrix(i), expected)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_sigma_is_block_diagonal_pauli(i):
    assert np.allclose(dirac.sigma_matrix(i), np.kron(np.eye(2), PAULI[i - 1]), atol=0)


def test_clifford_relations_exact():
    a = dirac.alpha_vector()
    b = dirac.beta_matrix()
    for i, j in itertools.product(range(3), repeat=2):
        assert np.array_equal(dirac.anticommutator(a[i], a[j]), 2 * (i == j) * I4)
    for i in range(3):
        assert np.array_equal(dirac.anticommutator(a[i], b), np.zeros((4, 4)))
    assert np.array_equal(b @ b, I4)


def test_sigma_su2_algebra():
    s = dirac.sigma_vector()
    eps = dirac.levi_civita()
    for i, j in itertools.product(range(3), repeat=2):
        rhs = 2j * np.einsum("k,kab->ab", eps[i, j], s)
        assert np.allclose(dirac.commutator(s[i], s[j]), rhs, atol=1e-15)


def test_sigma_commutes_with_beta_and_is_hermitian_traceless():
    for s in dirac.sigma_vector():
        assert dirac.hermitian_defect(s) == 0
        assert abs(np.trace(s)) == 0
        assert np.array_equal(dirac.commutator(dirac.beta_matrix(), s), np.zeros((4, 4)))


@pytest.mark.parametrize("bad", [0, 4, -1, 1.5, "x"])
def test_axis_validation(bad):
    with pytest.raises((ValueError, TypeError)):
        dirac.alpha_matrix(bad)


def test_levi_civita_values():
    eps = dirac.levi_civita()
    assert eps[0, 1, 2] == 1 and eps[1, 0, 2] == -1 and eps[0, 0, 1] == 0
    assert np.abs(eps).sum() == 6


def test_constants():
    c = PhysicalConstants()
    assert c.c == pytest.approx(137.035999084, rel=1e-15)
    assert c.m0c == pytest.approx(c.c)
    assert PhysicalConstants(alpha_el=0.01).c == pytest.approx(100.0)
    for bad in (0.0, -0.1, 1.0, float("nan")):
        with pytest.raises(ValueError):
            PhysicalConstants(alpha_el=bad)
    with pytest.raises(ValueError):
        PhysicalConstants(m0=0.0)


def test_eigenvalues_hermitian_rejects_non_hermitian():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 1.0
    with pytest.raises(ValueError):
        dirac.eigenvalues_hermitian(m)
    assert np.allclose(dirac.eigenvalues_hermitian(dirac.beta_matrix()), [-1, -1, 1, 1])


_complex = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@given(st.lists(_complex, min_size=48, max_size=48))
def test_commutator_identities(vals):
    a, b, c = np.array(vals).reshape(3, 4, 4)
    assert np.allclose(dirac.commutator(a, b), -dirac.commutator(b, a))
    jacobi = (
        dirac.commutator(a, dirac.commutator(b, c))
        + dirac.commutator(b, dirac.commutator(c, a))
        + dirac.commutator(c, dirac.commutator(a, b))
    )
    assert np.max(np.abs(jacobi)) <= 1e-9 * max(1.0, np.max(np.abs(a)) * np.max(np.abs(b)) * np.max(np.abs(c)))
    assert np.allclose(dirac.anticommutator(a, b) + dirac.commutator(a, b), 2 * a @ b)


def test_algebra_group_passes():
    assert check_dirac_algebra().passed


def test_algebra_group_catches_corrupted_beta(monkeypatch):
    monkeypatch.setattr(dirac, "beta_matrix", lambda: np.diag([1, 1, -1, 1]).astype(complex))
    result = check_dirac_algebra()
    assert not result.passed
