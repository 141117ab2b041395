"""Ohmic bath autocorrelation kernel and its tabulated cumulative integrals.

The kernel is K(u) = Gamma(u) + i Delta(u) with

    Gamma(u) = (l2e / pi) int_0^wc  w coth(w / 2T) cos(w u) dw
    Delta(u) = -(l2e / pi) int_0^wc  w sin(w u) dw

where ``l2e`` is the combined coupling lambda^2 eta.  Gamma is even and
Delta is odd in u, so K(-u) = conj(K(u)).
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _backend
from .errors import ConfigError, QuadratureError

MODES = ("exact", "high_t", "markov")

# |w_c u| below which Delta is evaluated from its Taylor series
DELTA_SERIES_X = 0.05

# ghost nodes kept on each side of a tabulated range
GHOST = 8

# six-point interval rule on [x_i, x_i+1] using x_i-2 .. x_i+3
_W6 = np.array([11.0, -93.0, 802.0, 802.0, -93.0, 11.0]) / 1440.0


@dataclass(frozen=True)
class BathParams:
    lambda2_eta: float
    temperature: float
    omega_c: float
    mode: str = "exact"

    def __post_init__(self):
        if not (np.isfinite(self.lambda2_eta) and self.lambda2_eta >= 0):
            raise ConfigError("lambda2_eta must be >= 0", key="lambda2_eta")
        if not (np.isfinite(self.temperature) and self.temperature > 0):
            raise ConfigError("temperature must be > 0", key="temperature")
        if not (np.isfinite(self.omega_c) and self.omega_c > 0):
            raise ConfigError("omega_c must be > 0", key="omega_c")
        if self.mode not in MODES:
            raise ConfigError(f"bath mode must be one of {MODES}, got {self.mode!r}",
                              key="bath_mode")


@dataclass(frozen=True)
class KernelSample:
    gamma: np.ndarray
    delta: np.ndarray

    @property
    def complex(self):
        return self.gamma + 1j * self.delta


@dataclass(frozen=True)
class MarkovConstants:
    gamma0: float
    delta0: float


def markov_constants(params, tau_s):
    """Gamma0 = l2e T tau_s and Delta0 = l2e w_c tau_s / pi."""
    if not tau_s > 0:
        raise ConfigError("tau_s must be > 0", key="tau_s")
    l2e = params.lambda2_eta
    return MarkovConstants(l2e * params.temperature * tau_s,
                           l2e * params.omega_c * tau_s / np.pi)


def ohmic_amplitude(w, temperature):
    """w coth(w / 2T), with its limit 2T at w = 0."""
    w = np.asarray(w, dtype=float)
    out = np.full(w.shape, 2.0 * temperature)
    nz = w != 0
    out[nz] = w[nz] / np.tanh(w[nz] / (2.0 * temperature))
    return out


def delta_closed(t, params):
    """Delta(t) from its antiderivative, with a series near t = 0."""
    t = np.asarray(t, dtype=float)
    wc = params.omega_c
    x = wc * t
    out = np.empty(t.shape)
    small = np.abs(x) < DELTA_SERIES_X
    xs = x[small]
    x2 = xs * xs
    # (sin x - x cos x) / x^2 = x/3 - x^3/30 + x^5/840 - x^7/45360 + ...
    out[small] = xs * (1 / 3 + x2 * (-1 / 30 + x2 * (1 / 840 - x2 / 45360)))
    xl = x[~small]
    out[~small] = (np.sin(xl) - xl * np.cos(xl)) / (xl * xl)
    return -(params.lambda2_eta / np.pi) * wc * wc * out


def gamma_exact(t, params, rtol=1e-12, panels=256, max_panels=1 << 20):
    """Gamma(t) by Filon quadrature over frequency, refined until converged.

    The panel count doubles until successive estimates agree to ``rtol``
    relative to Gamma(0); failure to converge raises QuadratureError.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    wc, temp = params.omega_c, params.temperature
    pref = params.lambda2_eta / np.pi
    if pref == 0.0:
        return np.zeros(t.shape)
    t_abs = np.abs(t)

    def estimate(n):
        h = wc / n
        amp = ohmic_amplitude(h * np.arange(n + 1), temp)
        return _backend.filon_cos(amp, h, t_abs.ravel()).reshape(t.shape)

    scale = estimate_scale(wc, temp)
    n = panels
    prev = estimate(n)
    while True:
        n *= 2
        if n > max_panels:
            raise QuadratureError(
                f"Gamma quadrature did not reach rtol={rtol:g} with {max_panels} panels"
            )
        cur = estimate(n)
        if np.max(np.abs(cur - prev)) <= rtol * scale:
            return pref * cur
        prev = cur


def estimate_scale(wc, temperature, n=4096):
    """int_0^wc w coth(w/2T) dw, the magnitude of Gamma(0) / (l2e / pi)."""
    w = np.linspace(0.0, wc, n + 1)
    a = ohmic_amplitude(w, temperature)
    return (wc / n) / 3.0 * (a[0] + a[-1] + 4 * a[1:-1:2].sum() + 2 * a[2:-1:2].sum())


def kernel_exact(t, params, rtol=1e-12):
    t = np.asarray(t, dtype=float)
    gamma = gamma_exact(t, params, rtol=rtol).reshape(t.shape)
    return KernelSample(gamma, delta_closed(t, params))


def gamma_high_t(t, params):
    """High-temperature Gamma: (2 l2e T / pi) sin(w_c t) / t."""
    t = np.asarray(t, dtype=float)
    wc = params.omega_c
    return (2.0 * params.lambda2_eta * params.temperature / np.pi) * wc * np.sinc(wc * t / np.pi)


def kernel_high_t(t, params):
    t = np.asarray(t, dtype=float)
    return KernelSample(gamma_high_t(t, params), delta_closed(t, params))


def kernel(t, params, rtol=1e-12):
    """Kernel samples for the configured mode (markov has no pointwise kernel)."""
    if params.mode == "exact":
        return kernel_exact(t, params, rtol=rtol)
    if params.mode == "high_t":
        return kernel_high_t(t, params)
    raise ConfigError("the markov kernel is a delta function and has no samples",
                      key="bath_mode")


def cumulative6(f, h, zero_at=0):
    """Running integral of samples ``f`` by the six-point interval rule.

    Entry j of the result is the integral from node ``zero_at + 2`` to node
    ``j + 2`` of ``f``; the first two and last three samples only feed the
    stencils.  Sixth order for smooth integrands.
    """
    f = np.asarray(f)
    n = f.size - 5
    if n < 1:
        raise ValueError("cumulative6 needs at least six samples")
    inc = sum(w * f[k:k + n - 1] for k, w in enumerate(_W6))
    out = np.zeros(n, dtype=np.result_type(f, float))
    np.cumsum(inc * h, out=out[1:])
    if zero_at:
        out -= out[zero_at]
    return out


def interp6(arr, pos):
    """Six-point Lagrange interpolation of ``arr`` at fractional index ``pos``."""
    k = int(np.floor(pos))
    x = pos - k
    if x == 0.0:
        return arr[k]
    if k - 2 < 0 or k + 3 >= len(arr):
        raise IndexError("interpolation stencil outside the table")
    nodes = np.arange(-2, 4)
    total = 0.0
    for j in nodes:
        others = nodes[nodes != j]
        total = total + arr[k + j] * np.prod((x - others) / (j - others))
    return total


@dataclass
class BathKernelTable:
    """Kernel samples on u_k = k du and running integrals C_w(u), D(u).

    Arrays are indexed ``[k + GHOST]`` for k = -GHOST .. n_nodes - 1; the
    ghost entries on the left follow from K(-u) = conj(K(u)) and
    C_w(-u) = -conj(C_w(u)).  ``cumulative[w]`` is
    C_w(u) = int_0^u exp(i w s) K(s) ds for w in (-j0, 0, +j0) and
    ``double`` is D(u) = int_0^u C_0(v) dv.
    """

    params: BathParams
    j0: float
    du: float
    n_valid: int
    kernel: np.ndarray
    cumulative: dict = field(repr=False)
    double: np.ndarray = field(repr=False)

    @property
    def u_max(self):
        return (self.n_valid - 1) * self.du

    @property
    def u(self):
        return self.du * (np.arange(self.kernel.size) - GHOST)

    @cached_property
    def gamma(self):
        return self.kernel.real[GHOST:GHOST + self.n_valid].copy()

    @cached_property
    def delta(self):
        return self.kernel.imag[GHOST:GHOST + self.n_valid].copy()

    def index(self, u):
        return GHOST + u / self.du


def grid_step(omega_c, tau_s, divisor=40):
    """Largest du <= pi / (divisor w_c) that divides tau_s exactly."""
    target = np.pi / (divisor * omega_c)
    per_tau = int(np.ceil(tau_s / target - 1e-9))
    return tau_s / per_tau


def _with_left_ghosts(values, kind):
    """Prepend GHOST mirrored samples: ``conj`` for K, ``-conj`` for C."""
    mirror = np.conj(values[GHOST:0:-1])
    if kind == "odd":
        mirror = -mirror
    return np.concatenate([mirror, values])


def tabulate_kernel(params, spectrum, u_max, du=None, divisor=40, rtol=1e-12):
    """Tabulate K, C_w for w in (-j0, 0, j0), and D up to ``u_max``.

    Markov mode has no table; use the analytic propagator path instead.
    """
    if params.mode == "markov":
        raise ConfigError("markov mode uses the analytic delta kernel, not a table",
                          key="bath_mode")
    if not u_max >= 0:
        raise ConfigError("u_max must be >= 0")
    j0 = spectrum.j0
    if du is None:
        du = grid_step(params.omega_c, spectrum.tau_s, divisor)
    n_valid = int(np.ceil(u_max / du - 1e-9)) + 1
    # C needs 3 samples past a node, D another 3, plus GHOST on the right
    n_samples = n_valid + 6 + GHOST + 1
    u = du * np.arange(n_samples)
    k_pos = kernel(u, params, rtol=rtol).complex
    k_all = np.concatenate([np.conj(k_pos[GHOST:0:-1]), k_pos])
    u_all = du * (np.arange(k_all.size) - GHOST)

    cumulative = {}
    for sign in (-1, 0, 1):
        w = sign * j0
        f = np.exp(1j * w * u_all) * k_all
        c_pos = cumulative6(f[GHOST - 2:], du)
        cumulative[sign] = _with_left_ghosts(c_pos, "odd")
    c0 = cumulative[0]
    d_pos = cumulative6(c0[GHOST - 2:], du)
    double = _with_left_ghosts(d_pos, "even")

    size = n_valid + GHOST + GHOST
    return BathKernelTable(
        params=params,
        j0=j0,
        du=du,
        n_valid=n_valid,
        kernel=k_all[:size],
        cumulative={s: c[:size] for s, c in cumulative.items()},
        double=double[:size],
    )
