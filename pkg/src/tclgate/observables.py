"""Spin polarisation, gate/state fidelity and purity, and entropy."""

from dataclasses import dataclass, fields

import numpy as np

from .algebra import spin_operators
from .errors import ConfigError, NumericalIntegrityError

IMAG_TOL = 1e-10

# eigenvalues below this count as zero inside the log
ENTROPY_CLAMP = 1e-12
POSITIVITY_TOL = 1e-6


@dataclass(frozen=True)
class ObservableRecord:
    """One output row; ``state_fidelity`` is None for mixed inputs."""

    t: float
    tbar: float
    s1: float
    s2: float
    gate_fidelity: float
    gate_purity: float
    state_fidelity: float | None
    state_purity: float
    entropy_bits: float
    trace_error: float
    herm_error: float

    @classmethod
    def columns(cls):
        return tuple(f.name for f in fields(cls))

    def values(self):
        return tuple(getattr(self, name) for name in self.columns())


def _real(z, what):
    if abs(z.imag) > IMAG_TOL:
        raise NumericalIntegrityError(f"{what} has imaginary part {z.imag:.3g}")
    return float(z.real)


def polarization(rho, dot):
    """s = 2 tr[rho S^z_dot]."""
    if dot not in (1, 2):
        raise ConfigError(f"dot must be 1 or 2, got {dot!r}")
    sz = spin_operators()[dot - 1, 2]
    return 2.0 * _real(np.trace(np.asarray(rho) @ sz), "polarization")


def gate_fidelity(e, spectrum):
    """Input-averaged gate fidelity from the superoperator tensor."""
    t = e.tensor
    diag = np.einsum("aaaa->", t)
    coh = np.einsum("abab->ab", t)
    phase = np.exp(1j * e.tbar * spectrum.omega)
    return _real(1 / 6 + (diag + np.sum(coh * phase)) / 24, "gate fidelity")


def gate_purity(e):
    """Input-averaged output purity from the superoperator tensor."""
    t = e.tensor
    pop = np.einsum("abcc->abc", t)     # E[a, b, g, g]
    s_pop = np.sum(np.abs(pop) ** 2)
    col = pop.sum(axis=2)               # sum_d E[a, b, d, d]
    s_cross = np.sum(pop * np.conj(col)[:, :, None])
    s_all = np.sum(np.abs(t) ** 2)
    return _real((s_pop + s_cross + s_all) / 24, "gate purity")


def state_fidelity(rho_t, psi0, spectrum, tbar):
    """Re <psi0| U^H rho(t) U |psi0> with U the ideal gate after ``tbar``."""
    psi = np.asarray(psi0, dtype=complex).ravel()
    if psi.shape != (4,):
        raise ConfigError("psi0 must have 4 components")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > 1e-10:
        raise ConfigError(f"psi0 is not normalised (norm^2 = {norm:.12g})")
    phi = spectrum.unitary(tbar) * psi
    return float(np.vdot(phi, np.asarray(rho_t) @ phi).real)


def state_purity(rho):
    rho = np.asarray(rho)
    return float(np.einsum("ab,ba->", rho, rho).real)


def von_neumann_entropy(rho):
    """-tr[rho log2 rho] in bits from the eigenvalues of the Hermitian part."""
    rho = np.asarray(rho, dtype=complex)
    w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if w.min() < -POSITIVITY_TOL:
        raise NumericalIntegrityError(
            f"density matrix has eigenvalue {w.min():.3g} below -{POSITIVITY_TOL:g}"
        )
    w = np.clip(w, 0.0, 1.0)
    w = w[w > ENTROPY_CLAMP]
    return float(max(0.0, -np.sum(w * np.log2(w))))


def pure_state_vector(rho, tol=1e-10):
    """Unit vector psi with rho = |psi><psi|, or None if rho is mixed."""
    rho = np.asarray(rho, dtype=complex)
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    if abs(w[-1] - 1.0) > tol:
        return None
    return v[:, -1]
