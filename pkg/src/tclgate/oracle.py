"""Brute-force references for the propagator: direct double quadrature of p,
RK4 integration of the TCL2 equation, and Haar-averaged state fidelity.

These are slow by design and meant for tests and diagnostics.
"""

from dataclasses import dataclass

import numpy as np

from . import _backend
from .algebra import EnergySpectrum, spin_operators
from .bath import GHOST, kernel, markov_constants, tabulate_kernel
from .errors import ConfigError
from .propagator import SIGNS, PTensor, frequency_slots

MAX_STEP_FRACTION = 0.05


@dataclass(frozen=True)
class OracleConfig:
    """Resolutions for the references.

    ``panels_per_tau`` is the coarsest 2-D grid; ``richardson_levels`` grids
    with doubled panel counts are combined.  ``step_fraction`` is the RK4
    step in units of 1/omega_c.
    """

    panels_per_tau: int = 4000
    richardson_levels: int = 3
    step_fraction: float = 0.05
    seed: int = 20240101

    def __post_init__(self):
        if self.panels_per_tau < 2:
            raise ConfigError("panels_per_tau must be >= 2", key="panels_per_tau")
        if self.richardson_levels < 1:
            raise ConfigError("richardson_levels must be >= 1", key="richardson_levels")
        if not 0 < self.step_fraction <= MAX_STEP_FRACTION:
            raise ConfigError(
                f"RK4 step must be in (0, {MAX_STEP_FRACTION}]/omega_c, "
                f"got {self.step_fraction!r}", key="step_fraction")


def _p_trapezoid(t, params, schedule, n_panels, kern):
    """Trapezoid double integral on a grid of ``n_panels`` over [0, t]."""
    j0 = schedule.j0
    tau_s = schedule.tau_s
    h = t / n_panels
    s = h * np.arange(n_panels + 1)
    sbar = np.minimum(s, tau_s)
    w = np.full(n_panels + 1, h)
    w[0] = w[-1] = 0.5 * h
    out = np.empty((3, 3), dtype=complex)
    for sa in SIGNS:
        inner = h * _backend.triangle_sums(np.exp(1j * sbar * sa * j0), kern)
        for sb in SIGNS:
            out[sa + 1, sb + 1] = np.sum(w * np.exp(1j * sbar * sb * j0) * inner)
    return out


def p_bruteforce(t, params, schedule, cfg=None):
    """p(w_a, w_b; t) by direct 2-D trapezoid quadrature with Richardson steps.

    The inner kernel argument tau - s is negative; its value follows from
    Gamma even and Delta odd.  When tau_s falls on every grid the error
    expands in even powers of the step and each level removes one power.
    """
    cfg = cfg or OracleConfig()
    spectrum = EnergySpectrum(schedule.j0)
    slots = frequency_slots(spectrum)
    if t <= 0 or params.lambda2_eta == 0:
        return PTensor(np.zeros((3, 3), dtype=complex), slots)
    if params.mode == "markov":
        raise ConfigError("p_bruteforce needs a pointwise kernel", key="bath_mode")
    tau_s = schedule.tau_s
    base = max(1, int(np.ceil(cfg.panels_per_tau * t / tau_s)))
    if t > tau_s:
        ratio = t / tau_s * cfg.panels_per_tau
        if abs(ratio - round(ratio)) < 1e-9 * ratio:
            base = int(round(ratio))
    finest = base << (cfg.richardson_levels - 1)
    u = (t / finest) * np.arange(finest + 1)
    # K(s - tau) = Gamma(tau - s) - i Delta(tau - s) with Gamma even, Delta odd
    neg = kernel(-u, params)
    kern_fine = neg.gamma - 1j * neg.delta

    est = []
    for level in range(cfg.richardson_levels):
        stride = 1 << (cfg.richardson_levels - 1 - level)
        est.append(_p_trapezoid(t, params, schedule, base << level, kern_fine[::stride]))
    # Richardson table in h^2, h^4, ...
    for order in range(1, len(est)):
        f = 4.0 ** order
        est = [(f * est[i + 1] - est[i]) / (f - 1) for i in range(len(est) - 1)]
    return PTensor(est[-1], slots)


def _rk4_grid(times, schedule, params, cfg):
    tau_s = schedule.tau_s
    per_tau = int(np.ceil(tau_s * params.omega_c / cfg.step_fraction))
    per_tau = -(-per_tau // 8) * 8
    dt = tau_s / per_tau
    steps = []
    for t in times:
        k = round(t / dt)
        if t < 0 or abs(k * dt - t) > 1e-9 * max(1.0, k) * dt:
            raise ConfigError(
                f"time {t!r} is not a multiple of the RK4 step tau_s/{per_tau}")
        steps.append(int(k))
    return dt, steps


def rk4_tcl2(rho0, times, params, schedule, cfg=None):
    """Schroedinger-picture states from RK4 on the TCL2 differential equation.

    In the interaction picture d rho/dt = -(sum_k [S_k(t), L_k(t) rho] + h.c.)
    where S_k(t) carries the phases exp(i tbar w_ab) and
    L_k(t) = int_0^t S_k(tau) K(t - tau) dtau is read from a kernel table
    sampled at half steps.  ``times`` must be multiples of the step.
    """
    cfg = cfg or OracleConfig()
    spectrum = EnergySpectrum(schedule.j0)
    j0 = schedule.j0
    tau_s = schedule.tau_s
    times = [float(t) for t in times]
    dt, steps = _rk4_grid(times, schedule, params, cfg)
    n_steps = max(steps) if steps else 0
    q = np.arange(2 * n_steps + 1)
    tq = 0.5 * dt * q
    tbar = np.minimum(tq, tau_s)
    omegas = np.array(SIGNS) * j0
    mod = np.exp(1j * tbar[:, None] * omegas[None, :])

    if params.mode == "markov":
        # delta kernel 2 Gamma0 delta(u) / tau_s: half weight at the endpoint
        rate = markov_constants(params, tau_s).gamma0 / tau_s
        lam = rate * mod
    else:
        table = tabulate_kernel(params, spectrum, max(tq[-1], tau_s), du=0.5 * dt)
        n_tau = int(round(tau_s / table.du))
        c0 = table.cumulative[0]
        lam = np.empty_like(mod)
        for slot, sign in enumerate(SIGNS):
            c = table.cumulative[-sign][GHOST:GHOST + q.size]
            w = sign * j0
            early = q <= n_tau
            lam[early, slot] = np.exp(1j * w * tq[early]) * c[early]
            late = ~early
            ql = q[late]
            lam[late, slot] = (
                np.exp(1j * w * tq[late]) * (c[late] - table.cumulative[-sign][GHOST + ql - n_tau])
                + np.exp(1j * w * tau_s) * c0[GHOST + ql - n_tau]
            )

    ops = np.asarray(spin_operators()).reshape(-1, 4, 4)
    widx = frequency_slots(spectrum)
    rho_i = np.asarray(rho0, dtype=complex)
    rec = _backend.rk4_tcl2(rho_i, ops, widx, np.ascontiguousarray(mod),
                            np.ascontiguousarray(lam), dt, n_steps, 1)
    out = []
    for t, k in zip(times, steps):
        phase = np.exp(-1j * min(t, tau_s) * spectrum.omega)
        out.append(phase * rec[k])
    return out


def haar_states(n, seed):
    """``n`` Haar-random unit 4-vectors from normalised complex Gaussians."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, 4)) + 1j * rng.standard_normal((n, 4))
    return z / np.linalg.norm(z, axis=1)[:, None]


def haar_average_fidelity(e, schedule, n=1000, seed=0):
    """(mean, standard error) of <psi| U^H E[|psi><psi|] U |psi> over Haar psi."""
    if n < 100:
        raise ConfigError("haar_average_fidelity needs n >= 100")
    spectrum = EnergySpectrum(schedule.j0)
    psi = haar_states(n, seed)
    rho = psi[:, :, None] * psi.conj()[:, None, :]
    out = np.einsum("abcd,ncd->nab", e.tensor, rho)
    phi = spectrum.unitary(e.tbar)[None, :] * psi
    vals = np.einsum("na,nab,nb->n", phi.conj(), out, phi).real
    return float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(n))
