import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from relspin import dirac
from relspin.dirac import PhysicalConstants
from relspin.operators import (
    SingularMomentumError,
    SpinKind,
    h0_matrix,
    p0_scalar,
    spin_matrix,
    spin_squared_matrix,
    spin_vector,
)

CONSTS = PhysicalConstants()
MC = CONSTS.m0c
SIGMA = dirac.sigma_vector()
BETA = dirac.beta_matrix()
I4 = np.eye(4)

# momentum components up to ~ 10^3 m0 c
_comp = st.floats(min_value=-1e5, max_value=1e5, allow_nan=False)
momenta = st.tuples(_comp, _comp, _comp).map(np.array).filter(lambda p: np.linalg.norm(p) > 1e-3)


def fw_unitary(p):
    p0 = p0_scalar(p)
    ap = np.einsum("i,iab->ab", p, dirac.alpha_vector())
    return ((p0 + MC) * I4 + BETA @ ap) / np.sqrt(2 * p0 * (p0 + MC))


def test_shapes():
    p = np.ones((5, 2, 3))
    assert spin_vector(SpinKind.FRENKEL, p).shape == (5, 2, 3, 4, 4)
    assert spin_matrix(SpinKind.PRYCE, 2, p).shape == (5, 2, 4, 4)
    assert spin_vector("Pauli", [0.1, 0.2, 0.3]).shape == (3, 4, 4)


def test_bad_momentum():
    with pytest.raises(ValueError):
        spin_vector(SpinKind.PAULI, [1.0, 2.0])
    with pytest.raises(ValueError):
        spin_vector(SpinKind.PAULI, [1.0, np.nan, 0.0])


def test_parse_names():
    assert SpinKind.parse("fw") is SpinKind.FOLDY_WOUTHUYSEN
    assert SpinKind.parse("foldy_wouthuysen") is SpinKind.FOLDY_WOUTHUYSEN
    assert SpinKind.parse(" PRYCE ") is SpinKind.PRYCE
    with pytest.raises(ValueError):
        SpinKind.parse("Dirac")


@given(momenta)
def test_pauli_is_half_sigma(p):
    assert np.array_equal(spin_vector(SpinKind.PAULI, p), 0.5 * SIGMA)


@given(momenta)
def test_fw_is_unitarily_rotated_pauli(p):
    # oracle: the Foldy-Wouthuysen unitary maps H0 to beta c p0 and Sigma/2 to the FW spin
    u = fw_unitary(p)
    h = h0_matrix(p)
    assert np.abs(u @ h @ u.conj().T - BETA * CONSTS.c * p0_scalar(p)).max() <= 1e-12 * CONSTS.c * p0_scalar(p)
    expected = np.stack([u.conj().T @ (0.5 * s) @ u for s in SIGMA])
    assert np.allclose(spin_vector(SpinKind.FOLDY_WOUTHUYSEN, p), expected, atol=1e-12)


@given(momenta)
def test_pryce_reduced_form(p):
    # i a3 a2 a1 = gamma_5, which collapses the defining form to
    # beta Sigma / 2 + (1 - beta) (Sigma . p_hat) p_hat / 2
    ph = p / np.linalg.norm(p)
    sp = np.einsum("i,iab->ab", ph, SIGMA)
    expected = np.stack([0.5 * BETA @ s + 0.5 * (I4 - BETA) @ sp * ph[i] for i, s in enumerate(SIGMA)])
    assert np.allclose(spin_vector(SpinKind.PRYCE, p), expected, atol=1e-13)


def test_pryce_singular_at_origin():
    with pytest.raises(SingularMomentumError):
        spin_vector(SpinKind.PRYCE, [0.0, 0.0, 0.0])


@pytest.mark.parametrize("kind", [k for k in SpinKind if k is not SpinKind.PRYCE])
def test_rest_frame_limit_is_half_sigma(kind):
    assert np.allclose(spin_vector(kind, np.zeros(3)), 0.5 * SIGMA, atol=0)


@pytest.mark.parametrize("kind", [k for k in SpinKind if k is not SpinKind.CHAKRABARTI])
@given(p=momenta)
def test_hermitian(kind, p):
    s = spin_vector(kind, p)
    assert np.max(dirac.hermitian_defect(s)) <= 1e-10 * max(1.0, np.abs(s).max())


def test_chakrabarti_not_hermitian():
    # the i (alpha x p) / (2 m0 c) term is anti-Hermitian
    s = spin_vector(SpinKind.CHAKRABARTI, [0.0, MC, 0.0])
    assert np.max(dirac.hermitian_defect(s)) > 0.1


@pytest.mark.parametrize("kind", list(SpinKind))
@given(p=momenta, lam=st.floats(min_value=0.1, max_value=10.0))
def test_depends_only_on_p_over_m0c(kind, p, lam):
    # rescaling c together with p leaves every operator unchanged
    other = PhysicalConstants(alpha_el=CONSTS.alpha_el / lam)
    a = spin_vector(kind, p, CONSTS)
    b = spin_vector(kind, p * lam, other)
    assert np.allclose(a, b, atol=1e-12 * max(1.0, np.abs(a).max()))


@pytest.mark.parametrize("kind", list(SpinKind))
def test_component_matches_vector(kind, rng):
    p = rng.normal(size=(7, 3)) * MC
    v = spin_vector(kind, p)
    for i in (1, 2, 3):
        assert np.array_equal(spin_matrix(kind, i, p), v[:, i - 1])
    assert np.allclose(spin_squared_matrix(kind, 2, p), v[:, 1] @ v[:, 1])


def test_frenkel_along_momentum_is_half_sigma():
    # p x alpha has no component along p
    p = np.array([0.0, 0.0, 3.0 * MC])
    assert np.allclose(spin_matrix(SpinKind.FRENKEL, 3, p), 0.5 * SIGMA[2])


def test_h0_squares_to_energy():
    p = np.array([1.0, -2.0, 0.5]) * MC
    h = h0_matrix(p)
    e2 = CONSTS.c**2 * p0_scalar(p) ** 2
    assert np.abs(h @ h - e2 * I4).max() <= 1e-14 * e2


@pytest.mark.parametrize(
    "kind", [SpinKind.FOLDY_WOUTHUYSEN, SpinKind.CZACHOR, SpinKind.FRENKEL, SpinKind.CHAKRABARTI]
)
def test_nonrelativistic_reduction(kind):
    direction = np.array([0.48, -0.6, 0.64])
    devs = []
    for x in (1e-2, 1e-3, 1e-4):
        s = spin_vector(kind, x * MC * direction)
        devs.append(np.abs(s - 0.5 * SIGMA).max())
    # at least linear in |p| / m0 c
    assert devs[0] < 1e-2
    assert devs[1] <= 1.01e-1 * devs[0] and devs[2] <= 1.01e-1 * devs[1]
