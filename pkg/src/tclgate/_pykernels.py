"""Pure numpy implementations of the hot loops.

Each function has a compiled twin in ``_ckernels.pyx`` with the same
signature; ``_backend`` picks one at import time.
"""

import numpy as np

# below this |h*u| the closed-form Filon weights lose digits to cancellation
FILON_SERIES_THETA = 0.25

_CHUNK = 1 << 21  # matrix elements per block in filon_cos


def filon_weights(theta):
    """Filon-Simpson weights (alpha, beta, gamma) for an array of h*u."""
    theta = np.asarray(theta, dtype=float)
    alpha = np.empty_like(theta)
    beta = np.empty_like(theta)
    gamma = np.empty_like(theta)
    small = np.abs(theta) < FILON_SERIES_THETA
    t = theta[small]
    t2 = t * t
    alpha[small] = t * t2 * (
        2 / 45 + t2 * (-2 / 315 + t2 * (2 / 4725 + t2 * (-8 / 467775 + t2 * (4 / 8513505))))
    )
    beta[small] = 2 / 3 + t2 * (
        2 / 15 + t2 * (-4 / 105 + t2 * (2 / 567 + t2 * (-4 / 22275 + t2 * (4 / 675675))))
    )
    gamma[small] = 4 / 3 + t2 * (
        -2 / 15 + t2 * (1 / 210 + t2 * (-1 / 11340 + t2 * (1 / 997920 - t2 / 129729600)))
    )
    t = theta[~small]
    s, c = np.sin(t), np.cos(t)
    it3 = 1.0 / t**3
    alpha[~small] = it3 * (t * t + t * s * c - 2 * s * s)
    beta[~small] = 2 * it3 * (t * (1 + c * c) - 2 * s * c)
    gamma[~small] = 4 * it3 * (s - t * c)
    return alpha, beta, gamma


def filon_cos(f, h, u):
    """Integral of f(x) cos(u x) over [0, 2n h] for every u.

    ``f`` holds samples at x = 0, h, ..., 2n h (odd length >= 3).
    """
    f = np.ascontiguousarray(f, dtype=float)
    u = np.ascontiguousarray(u, dtype=float)
    n_nodes = f.size
    if n_nodes < 3 or n_nodes % 2 == 0:
        raise ValueError("filon_cos needs an odd number (>= 3) of samples")
    x = h * np.arange(n_nodes)
    x_end = x[-1]
    w_even = np.zeros(n_nodes)
    w_even[0::2] = f[0::2]
    w_even[0] *= 0.5
    w_even[-1] *= 0.5
    w_odd = np.zeros(n_nodes)
    w_odd[1::2] = f[1::2]
    weights = np.stack([w_even, w_odd], axis=1)

    alpha, beta, gamma = filon_weights(h * u)
    out = np.empty(u.size)
    rows = max(1, _CHUNK // n_nodes)
    for lo in range(0, u.size, rows):
        uu = u[lo:lo + rows]
        sums = np.cos(np.outer(uu, x)) @ weights
        out[lo:lo + rows] = h * (
            alpha[lo:lo + rows] * f[-1] * np.sin(x_end * uu)
            + beta[lo:lo + rows] * sums[:, 0]
            + gamma[lo:lo + rows] * sums[:, 1]
        )
    return out


def triangle_sums(phase, kern):
    """Trapezoid sums over the triangle 0 <= j <= m.

    Returns ``out[m] = sum_j w_j phase[j] kern[m - j]`` with trapezoid
    weights (1/2 at j = 0 and j = m); ``out[0] = 0``.
    """
    phase = np.ascontiguousarray(phase, dtype=complex)
    kern = np.ascontiguousarray(kern, dtype=complex)
    n = phase.size
    if kern.size < n:
        raise ValueError("kern must be at least as long as phase")
    out = np.zeros(n, dtype=complex)
    rk = kern[:n][::-1].copy()  # rk[n-1-i] = kern[i]
    for m in range(1, n):
        full = np.dot(phase[: m + 1], rk[n - 1 - m:])
        out[m] = full - 0.5 * (phase[0] * kern[m] + phase[m] * kern[0])
    return out


def _tcl2_rhs(rho, ops, widx, mod, lam):
    st = ops * mod[widx]
    lm = ops * lam[widx]
    lr = lm @ rho
    y = np.einsum("kab,kbc->ac", st, lr) - np.einsum("kab,kbc->ac", lr, st)
    return -(y + y.conj().T)


def rk4_tcl2(rho0, ops, widx, mod, lam, dt, n_steps, record_every):
    """Classical RK4 for the interaction-picture TCL2 equation.

    ``mod[q]`` and ``lam[q]`` give, at half-step q (time q*dt/2), the
    interaction-picture phases exp(i tbar w) and the memory integrals for
    the three transition frequencies w; ``widx[a, b]`` maps a matrix
    element to its frequency slot.  Returns the states at steps
    0, record_every, 2*record_every, ... <= n_steps.
    """
    rho = np.array(rho0, dtype=complex)
    ops = np.asarray(ops, dtype=complex)
    widx = np.asarray(widx, dtype=np.intp)
    out = [rho.copy()]
    for step in range(n_steps):
        q = 2 * step
        k1 = _tcl2_rhs(rho, ops, widx, mod[q], lam[q])
        k2 = _tcl2_rhs(rho + 0.5 * dt * k1, ops, widx, mod[q + 1], lam[q + 1])
        k3 = _tcl2_rhs(rho + 0.5 * dt * k2, ops, widx, mod[q + 1], lam[q + 1])
        k4 = _tcl2_rhs(rho + dt * k3, ops, widx, mod[q + 2], lam[q + 2])
        rho = rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if (step + 1) % record_every == 0:
            out.append(rho.copy())
    return np.array(out)
