"""Second-order evolution superoperator of the decohering swap gate.

The bath enters only through the double time integrals

    p(w_a, w_b; t) = int_0^t ds e^{i sbar w_b} int_0^s dtau e^{i taubar w_a} K(s - tau)

with w_a, w_b in {-J0, 0, J0} and sbar = min(s, tau_s).  Splitting at
tau_s turns each into single integrals over the running kernel integrals
held by :class:`~tclgate.bath.BathKernelTable`.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import EnergySpectrum, build_m_tensor
from .bath import GHOST, cumulative6, interp6, markov_constants, tabulate_kernel
from .errors import ConfigError, NumericalIntegrityError

SIGNS = (-1, 0, 1)

HERM_TOL = 1e-10
TRACE_TOL = 1e-8


@dataclass(frozen=True)
class GateSchedule:
    """Rectangular exchange pulse: J0 on [0, tau_s], zero afterwards."""

    j0: float

    def __post_init__(self):
        if not (np.isfinite(self.j0) and self.j0 > 0):
            raise ConfigError(f"j0 must be positive, got {self.j0!r}", key="j0")

    @property
    def tau_s(self):
        return np.pi / self.j0

    def clamp(self, t):
        if t < 0:
            raise ConfigError(f"time must be >= 0, got {t!r}")
        return min(t, self.tau_s)


def clamp(t, schedule):
    return schedule.clamp(t)


def frequency_slots(spectrum):
    """slot[a, b] in {0, 1, 2} for w_ab = -J0, 0, +J0."""
    return np.rint(spectrum.omega / spectrum.j0).astype(int) + 1


@dataclass(frozen=True)
class PTensor:
    """The nine canonical integrals ``canonical[slot(w_a), slot(w_b)]``."""

    canonical: np.ndarray
    slots: np.ndarray

    @cached_property
    def full(self):
        """p[a, b, c, d] = P(w_ac, w_db)."""
        s = self.slots
        ia = s[:, None, :, None]        # w_ac -> [a, ., c, .]
        ib = s.T[None, :, None, :]      # w_db -> [., b, ., d]
        return self.canonical[ia, ib]


class PIntegrator:
    """Evaluates the canonical p integrals at arbitrary times from one table."""

    def __init__(self, table, schedule):
        if abs(table.j0 - schedule.j0) > 1e-12 * schedule.j0:
            raise ConfigError("kernel table and schedule use different j0")
        self.table = table
        self.schedule = schedule
        du = table.du
        n_tau = schedule.tau_s / du
        self.n_tau = int(round(n_tau))
        if abs(n_tau - self.n_tau) > 1e-9 * max(1.0, n_tau):
            raise ConfigError("tau_s must be an integer multiple of the kernel grid step")
        if table.n_valid - 1 < self.n_tau:
            raise ConfigError("kernel table must extend at least to tau_s")
        j0 = schedule.j0
        u = table.u
        # running integrals keep GHOST - 2 entries before their zero node
        self._origin = GHOST - 2

        self._r1 = {}
        self._r2 = {}
        for sa in SIGNS:
            c = table.cumulative[-sa]
            for sb in SIGNS:
                f = np.exp(1j * (sa + sb) * j0 * u) * c
                self._r1[sa, sb] = cumulative6(f, du, zero_at=self._origin)
            # region-2 integrand on nodes k >= n_tau - GHOST; C(s - tau_s) from ghosts
            lo = self.n_tau
            g = np.exp(1j * sa * j0 * u[lo:]) * (c[lo:] - c[: c.size - lo])
            self._r2[sa] = cumulative6(g, du, zero_at=self._origin)

    def canonical(self, t):
        """3x3 array of P(w_a, w_b; t) indexed by frequency slot."""
        if t < 0:
            raise ConfigError(f"time must be >= 0, got {t!r}")
        table = self.table
        if t > table.u_max * (1 + 1e-12):
            raise ConfigError(f"t = {t:g} is beyond the kernel table horizon {table.u_max:g}")
        du = table.du
        j0 = self.schedule.j0
        tau_s = self.schedule.tau_s
        o = self._origin
        out = np.empty((3, 3), dtype=complex)
        if t <= tau_s:
            pos = o + t / du
            for sa in SIGNS:
                for sb in SIGNS:
                    out[sa + 1, sb + 1] = interp6(self._r1[sa, sb], pos)
            return out
        pos2 = (t - tau_s) / du
        d = interp6(table.double, GHOST + pos2)
        for sa in SIGNS:
            r2 = interp6(self._r2[sa], o + pos2)
            for sb in SIGNS:
                out[sa + 1, sb + 1] = (
                    self._r1[sa, sb][o + self.n_tau]
                    + np.exp(1j * tau_s * sb * j0) * r2
                    + np.exp(1j * tau_s * (sa + sb) * j0) * d
                )
        return out


def _phase_integral(w, a, b):
    """int_a^b exp(i w s) ds."""
    if w == 0:
        return b - a
    return (np.exp(1j * w * b) - np.exp(1j * w * a)) / (1j * w)


class MarkovIntegrator:
    """p integrals for the kernel 2 Gamma0 delta(u) / tau_s (Delta dropped)."""

    def __init__(self, params, schedule):
        self.schedule = schedule
        self.rate = markov_constants(params, schedule.tau_s).gamma0 / schedule.tau_s

    def canonical(self, t):
        if t < 0:
            raise ConfigError(f"time must be >= 0, got {t!r}")
        j0 = self.schedule.j0
        tau_s = self.schedule.tau_s
        tbar = min(t, tau_s)
        out = np.empty((3, 3), dtype=complex)
        for sa in SIGNS:
            for sb in SIGNS:
                w = (sa + sb) * j0
                val = _phase_integral(w, 0.0, tbar)
                if t > tau_s:
                    val = val + np.exp(1j * tau_s * w) * (t - tau_s)
                out[sa + 1, sb + 1] = self.rate * val
        return out


def make_integrator(params, spectrum, t_max, schedule=None, divisor=40, du=None):
    """Integrator for ``params.mode``; exact/high_t build a kernel table to t_max."""
    if schedule is None:
        schedule = GateSchedule(spectrum.j0)
    if params.mode == "markov":
        return MarkovIntegrator(params, schedule)
    table = tabulate_kernel(params, spectrum, max(t_max, schedule.tau_s), du=du, divisor=divisor)
    return PIntegrator(table, schedule)


def p_tensor(t, source, schedule=None):
    """PTensor at time ``t`` from a kernel table or a ready integrator."""
    if hasattr(source, "canonical"):
        integ = source
    else:
        integ = PIntegrator(source, schedule)
    slots = frequency_slots(EnergySpectrum(integ.schedule.j0))
    return PTensor(integ.canonical(t), slots)


@dataclass(frozen=True)
class EvolutionSuperOp:
    """E[a, b, c, d]: rho(t)_ab = sum_cd E[a, b, c, d] rho(0)_cd."""

    tensor: np.ndarray
    t: float
    tbar: float

    def matrix(self):
        """The 16x16 matrix acting on row-major flattened density matrices."""
        return self.tensor.reshape(16, 16)


def identity_superop():
    eye = np.eye(4)
    return np.einsum("ac,bd->abcd", eye, eye).astype(complex)


def evolution_superop(t, p, m, spectrum, schedule, convention="corrected"):
    """Assemble the second-order superoperator from the p tensor.

    ``convention="corrected"`` applies the free-evolution phase
    exp(-i tbar w_ab) and pairs the third term with conj(p[k, k, d, b]),
    which preserves trace and Hermiticity.  ``"variant"`` uses the
    other index pattern (phase exp(-i tbar w_ac), third term
    conj(p[d, k, c, b])); it breaks trace preservation and is kept for
    comparison only.
    """
    tbar = schedule.clamp(t)
    pf = p.full if isinstance(p, PTensor) else np.asarray(p)
    m = np.asarray(m)
    eye = np.eye(4)
    a_term = np.einsum("akkc,kkca->ac", m, pf)
    m_swap = np.einsum("agdb->abgd", m)
    coh = pf + np.conj(pf.transpose(1, 0, 3, 2))
    if convention == "corrected":
        b_term = np.einsum("dkkb,kkdb->db", m, np.conj(pf))
        phase = np.exp(-1j * tbar * spectrum.omega)[:, :, None, None]
    elif convention == "variant":
        # conj(p[d, k, c, b]) with the delta_ac factor setting c = a
        b_full = np.einsum("dkkb,dkab->adb", m, np.conj(pf))
        phase = np.exp(-1j * tbar * spectrum.omega)[:, None, :, None]
    else:
        raise ValueError(f"unknown convention {convention!r}")

    e = np.einsum("ac,bd->abcd", eye, eye).astype(complex)
    e -= np.einsum("bd,ac->abcd", eye, a_term)
    if convention == "corrected":
        e -= np.einsum("ac,db->abcd", eye, b_term)
    else:
        e -= np.einsum("ac,adb->abcd", eye, b_full)
    e += m_swap * coh
    return EvolutionSuperOp(phase * e, float(t), float(tbar))


def trace_error(rho):
    return float(abs(np.trace(rho) - 1.0))


def herm_error(rho):
    return float(np.max(np.abs(rho - rho.conj().T)))


def apply(e, rho0, check=True):
    """rho(t) = E rho(0); integrity violations beyond 10x tolerance raise."""
    rho = np.einsum("abcd,cd->ab", e.tensor, np.asarray(rho0, dtype=complex))
    if check:
        te, he = trace_error(rho), herm_error(rho)
        if te > 10 * TRACE_TOL or he > 10 * HERM_TOL:
            raise NumericalIntegrityError(
                f"state at t = {e.t:.12g} violates integrity "
                f"(trace error {te:.3g}, Hermiticity error {he:.3g})",
                t=e.t,
            )
    return rho


def evolve_series(times, rho0, params, schedule, divisor=40, du=None, integrator=None):
    """(t, superoperator, state) for every time, each computed from t = 0."""
    times = [float(t) for t in times]
    if any(b < a for a, b in zip(times, times[1:])):
        raise ConfigError("times must be sorted ascending")
    if times and times[0] < 0:
        raise ConfigError("times must be >= 0")
    spectrum = EnergySpectrum(schedule.j0)
    if integrator is None:
        t_max = times[-1] if times else 0.0
        integrator = make_integrator(params, spectrum, t_max, schedule, divisor, du)
    m = build_m_tensor()
    slots = frequency_slots(spectrum)
    out = []
    for t in times:
        p = PTensor(integrator.canonical(t), slots)
        e = evolution_superop(t, p, m, spectrum, schedule)
        out.append((t, e, apply(e, rho0)))
    return out
