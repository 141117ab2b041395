"""Two-spin algebra in the triplet/singlet (multiplet) basis.

Basis ordering is fixed throughout the package::

    |1> = |up,up>
    |2> = (|up,down> + |down,up>) / sqrt(2)
    |3> = |down,down>
    |4> = (|up,down> - |down,up>) / sqrt(2)

Product states are ordered (up-up, up-down, down-up, down-down) with the
first arrow belonging to dot 1.  Units: hbar = k_B = 1, energies in Kelvin.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigError

_R = 1.0 / np.sqrt(2.0)

#: Row ``a`` holds the product-basis amplitudes of multiplet state ``|a+1>``.
MULTIPLET_BASIS = np.array(
    [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, _R, _R, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, _R, -_R, 0.0],
    ],
    dtype=complex,
)

AXES = ("x", "y", "z")

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def product_to_multiplet(matrix):
    """Re-express a 4x4 operator given over the product basis in the multiplet basis."""
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (4, 4):
        raise ConfigError(f"expected a 4x4 matrix, got shape {m.shape}")
    return MULTIPLET_BASIS.conj() @ m @ MULTIPLET_BASIS.T


def multiplet_to_product(matrix):
    """Inverse of :func:`product_to_multiplet`."""
    m = np.asarray(matrix, dtype=complex)
    return MULTIPLET_BASIS.T @ m @ MULTIPLET_BASIS.conj()


def build_spin_operator(dot, axis):
    """Matrix of the spin-1/2 operator S^axis of ``dot`` (1 or 2), multiplet basis."""
    if dot not in (1, 2) or axis not in _PAULI:
        raise ValueError(f"no spin operator for dot={dot!r}, axis={axis!r}")
    half = 0.5 * _PAULI[axis]
    eye = np.eye(2, dtype=complex)
    prod = np.kron(half, eye) if dot == 1 else np.kron(eye, half)
    return product_to_multiplet(prod)


@lru_cache(maxsize=None)
def _spin_operators():
    ops = np.array([[build_spin_operator(d, a) for a in AXES] for d in (1, 2)])
    ops.setflags(write=False)
    return ops


def spin_operators():
    """All six operators as a read-only array indexed ``[dot - 1, axis, :, :]``."""
    return _spin_operators()


def build_m_tensor(ops=None):
    """Coupling tensor M[a, b, c, d] = sum_{dot, axis} <a|S|b><c|S|d>."""
    if ops is None:
        ops = spin_operators()
    flat = np.asarray(ops).reshape(-1, 4, 4)
    return np.einsum("kab,kcd->abcd", flat, flat)


@dataclass(frozen=True)
class EnergySpectrum:
    """Eigenenergies of J0 S1.S2 and the transition frequencies between them."""

    j0: float

    def __post_init__(self):
        if not np.isfinite(self.j0) or self.j0 <= 0:
            raise ConfigError(f"j0 must be positive, got {self.j0!r}", key="j0")

    @property
    def energies(self):
        return np.array([0.25, 0.25, 0.25, -0.75]) * self.j0

    @property
    def omega(self):
        """omega[a, b] = E_a - E_b."""
        e = self.energies
        return e[:, None] - e[None, :]

    @property
    def tau_s(self):
        """Pulse length that makes the exchange pulse a swap (J0 * tau_s = pi)."""
        return np.pi / self.j0

    def unitary(self, tbar):
        """Diagonal of the ideal gate propagator after clamped time ``tbar``."""
        return np.exp(-1j * tbar * self.energies)


def energies(j0):
    return EnergySpectrum(float(j0))


def heisenberg_hamiltonian(j0, ops=None):
    """J0 * S1.S2 assembled from the spin operators (diagonal in this basis)."""
    if ops is None:
        ops = spin_operators()
    return j0 * sum(ops[0, k] @ ops[1, k] for k in range(3))


def mixed_up_state():
    """Dot 1 unpolarised, dot 2 spin up: (|uu><uu| + |du><du|) / 2."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 0.5
    rho[1, 1] = rho[3, 3] = 0.25
    rho[1, 3] = rho[3, 1] = -0.25
    return rho


def singlet_state():
    rho = np.zeros((4, 4), dtype=complex)
    rho[3, 3] = 1.0
    return rho


def validate_density_matrix(rho, herm_tol=1e-10, trace_tol=1e-10, eig_tol=1e-9):
    """Return ``rho`` as a complex array or raise ConfigError naming the failed check."""
    m = np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise ConfigError(f"density matrix must be 4x4, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ConfigError("density matrix has non-finite entries")
    herm = np.max(np.abs(m - m.conj().T))
    if herm > herm_tol:
        raise ConfigError(f"density matrix is not Hermitian (max |rho - rho^H| = {herm:.3g})")
    tr = np.trace(m)
    if abs(tr - 1.0) > trace_tol:
        raise ConfigError(f"density matrix trace is {tr.real:.12g}, expected 1")
    lo = np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min()
    if lo < -eig_tol:
        raise ConfigError(f"density matrix has negative eigenvalue {lo:.3g}")
    return m


def initial_state(kind, matrix=None):
    """Canonical initial states: ``"mixed_up"``, ``"singlet"`` or ``"custom"``."""
    if kind == "mixed_up":
        return mixed_up_state()
    if kind == "singlet":
        return singlet_state()
    if kind == "custom":
        if matrix is None:
            raise ConfigError("custom initial state requires a matrix", key="custom_state")
        return validate_density_matrix(matrix)
    raise ConfigError(f"unknown initial state {kind!r}", key="initial_state")
