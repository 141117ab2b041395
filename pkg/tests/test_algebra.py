import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tclgate.algebra import (
    MULTIPLET_BASIS,
    EnergySpectrum,
    build_m_tensor,
    build_spin_operator,
    energies,
    heisenberg_hamiltonian,
    initial_state,
    mixed_up_state,
    multiplet_to_product,
    product_to_multiplet,
    singlet_state,
    spin_operators,
    validate_density_matrix,
)
from tclgate.errors import ConfigError


def comm(a, b):
    return a @ b - b @ a


def test_basis_orthonormal():
    assert np.allclose(MULTIPLET_BASIS @ MULTIPLET_BASIS.conj().T, np.eye(4), atol=1e-14)


def test_s1z_elements():
    s = build_spin_operator(1, "z")
    assert s[0, 0] == pytest.approx(0.5)
    assert s[2, 2] == pytest.approx(-0.5)
    assert abs(s[1, 1]) < 1e-15
    assert s[1, 3] == pytest.approx(0.5)


def test_total_sz_diagonal():
    total = build_spin_operator(1, "z") + build_spin_operator(2, "z")
    assert np.allclose(total, np.diag([1, 0, -1, 0]), atol=1e-15)


def test_operator_spectrum_and_hermiticity():
    for op in spin_operators().reshape(-1, 4, 4):
        assert np.max(np.abs(op - op.conj().T)) < 1e-14
        assert np.allclose(np.linalg.eigvalsh(op), [-0.5, -0.5, 0.5, 0.5], atol=1e-14)


def test_commutation_relations():
    ops = spin_operators()
    for i in range(2):
        x, y, z = ops[i]
        assert np.allclose(comm(x, y), 1j * z, atol=1e-14)
        assert np.allclose(comm(y, z), 1j * x, atol=1e-14)
        assert np.allclose(comm(z, x), 1j * y, atol=1e-14)
    for a in ops[0]:
        for b in ops[1]:
            assert np.allclose(comm(a, b), 0, atol=1e-14)


def test_total_spin_casimir():
    ops = spin_operators()
    s2 = sum((ops[0, j] + ops[1, j]) @ (ops[0, j] + ops[1, j]) for j in range(3))
    assert np.allclose(s2, np.diag([2, 2, 2, 0]), atol=1e-14)


def test_operators_read_only():
    with pytest.raises(ValueError):
        spin_operators()[0, 0, 0, 0] = 1


def test_m_tensor_examples_and_symmetries():
    m = build_m_tensor()
    assert m[0, 0, 0, 0] == pytest.approx(0.5)
    assert np.allclose(np.einsum("akkc->ac", m), 1.5 * np.eye(4), atol=1e-14)
    assert np.allclose(m, np.conj(m.transpose(1, 0, 3, 2)), atol=1e-15)
    assert np.allclose(m, m.transpose(2, 3, 0, 1), atol=1e-15)


def test_energies():
    sp = energies(1)
    assert np.allclose(sp.energies, [0.25, 0.25, 0.25, -0.75])
    assert sp.omega[0, 3] == pytest.approx(1.0)
    assert np.all(np.diag(sp.omega) == 0)
    assert energies(2).omega[3, 0] == pytest.approx(-2.0)
    assert set(np.unique(np.rint(sp.omega))) <= {-1.0, 0.0, 1.0}


@pytest.mark.parametrize("j0", [0.0, -1.0, np.nan])
def test_energies_reject_bad_j0(j0):
    with pytest.raises(ConfigError):
        EnergySpectrum(j0)


@given(st.floats(0.1, 10.0))
def test_hamiltonian_diagonal(j0):
    h = heisenberg_hamiltonian(j0)
    assert np.allclose(h, np.diag(EnergySpectrum(j0).energies), atol=1e-13 * j0)


def test_mixed_up_state():
    rho = mixed_up_state()
    assert rho[0, 0] == 0.5 and rho[1, 1] == 0.25 and rho[3, 3] == 0.25
    assert rho[1, 3] == -0.25 and rho[3, 1] == -0.25
    assert np.allclose(np.linalg.eigvalsh(rho), [0, 0, 0.5, 0.5], atol=1e-15)


def test_singlet_state():
    assert np.array_equal(singlet_state(), np.diag([0, 0, 0, 1]).astype(complex))
    assert np.array_equal(initial_state("singlet"), singlet_state())


def test_product_to_multiplet_examples():
    assert np.allclose(product_to_multiplet(np.diag([0.5, 0, 0.5, 0])), mixed_up_state())
    assert np.allclose(product_to_multiplet(np.eye(4)), np.eye(4))
    ud = np.zeros((4, 4))
    ud[1, 1] = 1
    v = np.array([0, 1, 0, 1]) / np.sqrt(2)
    assert np.allclose(product_to_multiplet(ud), np.outer(v, v))


@settings(max_examples=30)
@given(st.lists(st.floats(-1, 1), min_size=32, max_size=32))
def test_basis_change_round_trip(vals):
    m = np.array(vals[:16]).reshape(4, 4) + 1j * np.array(vals[16:]).reshape(4, 4)
    assert np.allclose(multiplet_to_product(product_to_multiplet(m)), m, atol=1e-14)
    h = m + m.conj().T
    hm = product_to_multiplet(h)
    assert np.allclose(hm, hm.conj().T, atol=1e-14)
    assert np.trace(hm) == pytest.approx(np.trace(h), abs=1e-13)


@pytest.mark.parametrize(
    "matrix, word",
    [
        (np.diag([1.0, 0, 0, 0]) + 0.1 * np.eye(4, k=1), "Hermitian"),
        (np.diag([0.5, 0.5, 0.5, 0.0]), "trace"),
        (np.diag([1.2, -0.2, 0, 0]), "eigenvalue"),
        (np.eye(3) / 3, "4x4"),
    ],
)
def test_custom_state_rejections(matrix, word):
    with pytest.raises(ConfigError, match=word):
        initial_state("custom", matrix)


def test_custom_state_accepts_valid():
    assert np.allclose(validate_density_matrix(np.eye(4) / 4), np.eye(4) / 4)
    with pytest.raises(ConfigError):
        initial_state("custom")
    with pytest.raises(ConfigError):
        initial_state("bogus")
