import numpy as np
import pytest

from tclgate.algebra import EnergySpectrum
from tclgate.bath import (
    BathParams,
    cumulative6,
    delta_closed,
    gamma_exact,
    grid_step,
    interp6,
    kernel,
    kernel_exact,
    kernel_high_t,
    markov_constants,
    tabulate_kernel,
)
from tclgate.errors import ConfigError, QuadratureError

TAU = np.pi


def gamma_trapezoid(t, params, panels):
    """Plain trapezoid over the frequency integral, kept separate from the package."""
    w = np.linspace(0.0, params.omega_c, panels + 1)
    amp = np.empty_like(w)
    amp[0] = 2 * params.temperature
    amp[1:] = w[1:] / np.tanh(w[1:] / (2 * params.temperature))
    f = amp * np.cos(w * t)
    h = params.omega_c / panels
    return params.lambda2_eta / np.pi * h * (f.sum() - 0.5 * (f[0] + f[-1]))


@pytest.mark.parametrize(
    "kwargs, key",
    [
        (dict(lambda2_eta=-1.0), "lambda2_eta"),
        (dict(temperature=0.0), "temperature"),
        (dict(omega_c=-5.0), "omega_c"),
        (dict(mode="lorentz"), "bath_mode"),
    ],
)
def test_params_validation(kwargs, key):
    base = dict(lambda2_eta=1e-5, temperature=300.0, omega_c=400.0)
    base.update(kwargs)
    with pytest.raises(ConfigError) as info:
        BathParams(**base)
    assert info.value.key == key


def test_delta_zero_at_origin(ref_params):
    assert kernel_exact(0.0, ref_params).delta == 0.0
    assert kernel_high_t(0.0, ref_params).delta == 0.0


def test_parity(ref_params):
    t = np.array([0.37 * TAU, -0.37 * TAU])
    k = kernel_exact(t, ref_params)
    assert k.gamma[0] == pytest.approx(k.gamma[1], rel=1e-14)
    assert k.delta[0] == pytest.approx(-k.delta[1], rel=1e-14)


def test_gamma_against_trapezoid(ref_params, backend):
    # trapezoid at 5e5 and 1e6 panels, one Richardson step (the plain rule at
    # 1e6 panels is itself only good to about 1e-8 here)
    g1 = gamma_trapezoid(1.0, ref_params, 500_000)
    g2 = gamma_trapezoid(1.0, ref_params, 1_000_000)
    ref = (4 * g2 - g1) / 3
    got = gamma_exact(1.0, ref_params)[0]
    assert abs(got - ref) / abs(ref) < 1e-8


def test_gamma_quadrature_failure_reported(ref_params):
    with pytest.raises(QuadratureError):
        gamma_exact(np.array([1.0, 3.0]), ref_params, rtol=1e-16, max_panels=1024)


def test_delta_series_continuity(ref_params):
    x0 = 0.05 / ref_params.omega_c
    lo, hi = delta_closed(np.array([x0 * (1 - 1e-9), x0 * (1 + 1e-9)]), ref_params)
    assert lo == pytest.approx(hi, rel=1e-8)
    # small-u slope: -(l2e / pi) wc^3 u / 3
    u = 1e-9
    slope = -(ref_params.lambda2_eta / np.pi) * ref_params.omega_c**3 / 3
    assert delta_closed(np.array([u]), ref_params)[0] == pytest.approx(slope * u, rel=1e-9)


def test_high_t_origin_limit(ref_params):
    g0 = kernel_high_t(np.array([0.0]), ref_params).gamma[0]
    p = ref_params
    assert g0 == pytest.approx(2 * p.lambda2_eta * p.temperature * p.omega_c / np.pi, rel=1e-14)


def test_high_t_gamma0_normalized_error():
    # pointwise relative error blows up near the zeros of Gamma; errors
    # normalised by Gamma(0) are the meaningful measure (see the acceptance
    # suite for the literal pointwise check)
    for temp, tol in ((4000.0, 2e-3), (300.0, 6e-2)):
        p = BathParams(1.8e-5, temp, 400.0)
        t = np.linspace(0, 0.1, 401)
        ge = kernel_exact(t, p).gamma
        gh = kernel_high_t(t, p).gamma
        assert np.max(np.abs(ge - gh)) / ge[0] < tol


def test_markov_constants(ref_params):
    mc = markov_constants(ref_params, TAU)
    assert mc.gamma0 == pytest.approx(1.8e-5 * 300 * np.pi)
    assert mc.gamma0 == pytest.approx(1.696e-2, rel=1e-3)
    assert mc.delta0 == pytest.approx(7.2e-3, rel=1e-12)
    zero = markov_constants(BathParams(0.0, 300.0, 400.0), TAU)
    assert zero.gamma0 == zero.delta0 == 0.0
    with pytest.raises(ConfigError):
        markov_constants(ref_params, 0.0)


def test_markov_has_no_samples():
    with pytest.raises(ConfigError):
        kernel(0.1, BathParams(1e-5, 300.0, 400.0, "markov"))
    with pytest.raises(ConfigError):
        tabulate_kernel(BathParams(1e-5, 300.0, 400.0, "markov"), EnergySpectrum(1.0), 1.0)


def test_grid_step_divides_tau():
    du = grid_step(400.0, TAU)
    assert du <= np.pi / (40 * 400.0)
    n = TAU / du
    assert abs(n - round(n)) < 1e-9


def test_cumulative6_exact_on_polynomials():
    h = 0.1
    x = h * (np.arange(40) - 2)
    f = x**5 - 3 * x**2 + 1
    got = cumulative6(f, h)
    xs = x[2:-3]
    exact = xs**6 / 6 - xs**3 + xs
    assert np.allclose(got, exact, atol=1e-12)
    shifted = cumulative6(f, h, zero_at=5)
    assert np.allclose(shifted, exact - exact[5], atol=1e-12)


def test_interp6_polynomial():
    x = np.arange(20.0)
    arr = x**5 - x
    assert interp6(arr, 7.3) == pytest.approx(7.3**5 - 7.3, rel=1e-13)
    assert interp6(arr, 4.0) == arr[4]
    with pytest.raises(IndexError):
        interp6(arr, 0.5)


def test_table_zero_coupling(spectrum):
    t = tabulate_kernel(BathParams(0.0, 300.0, 400.0), spectrum, TAU)
    assert not np.any(t.kernel)
    assert all(not np.any(c) for c in t.cumulative.values())
    assert not np.any(t.double)


def test_table_invariants(ref_params, spectrum):
    t = tabulate_kernel(ref_params, spectrum, TAU)
    assert t.du <= np.pi / (20 * ref_params.omega_c)
    assert t.u_max >= TAU
    for c in t.cumulative.values():
        assert c[t.index(0.0).__int__()] == 0
    k = t.kernel
    g = 8
    # ghost symmetry
    assert np.allclose(k[g - 3], np.conj(k[g + 3]))
    assert np.allclose(t.cumulative[1][g - 3], -np.conj(t.cumulative[1][g + 3]))
    # samples agree with pointwise kernel
    u = t.u[g:g + 50]
    assert np.allclose(k[g:g + 50], kernel(u, ref_params).complex, rtol=1e-12, atol=0)


def test_table_vs_trapezoid_of_samples(ref_params, spectrum):
    # cumulatives agree with a trapezoid of the same samples to the trapezoid's
    # own O(du^2) error; the six-point rule is the more accurate of the two
    t = tabulate_kernel(ref_params, spectrum, TAU)
    g = 8
    k = t.kernel[g:g + t.n_valid]
    trap = np.concatenate([[0], np.cumsum(0.5 * t.du * (k[1:] + k[:-1]))])
    c0 = t.cumulative[0][g:g + t.n_valid]
    assert np.max(np.abs(c0 - trap)) < 1e-3 * np.max(np.abs(c0))


def test_high_t_dirichlet_limit():
    p = BathParams(1.8e-5, 300.0, 400.0, "high_t")
    t = tabulate_kernel(p, EnergySpectrum(1.0), 20 * TAU)
    c_end = t.cumulative[0][8 + t.n_valid - 1]
    g0 = markov_constants(p, TAU).gamma0
    assert c_end.real == pytest.approx(g0 / TAU, rel=0.02)


def test_conjugate_cumulatives_without_delta(ref_params):
    du = grid_step(400.0, TAU)
    u = du * (np.arange(300) - 2)
    gam = kernel_exact(u, ref_params).gamma
    plus = cumulative6(np.exp(1j * u) * gam, du)
    minus = cumulative6(np.exp(-1j * u) * gam, du)
    assert np.allclose(plus, np.conj(minus), atol=1e-17)


@pytest.mark.slow
def test_table_refinement(ref_params, spectrum):
    a = tabulate_kernel(ref_params, spectrum, TAU)
    b = tabulate_kernel(ref_params, spectrum, TAU, du=a.du / 2)
    for s in (-1, 0, 1):
        ca = a.cumulative[s][8 + a.n_valid - 1]
        cb = b.cumulative[s][8 + b.n_valid - 1]
        assert abs(ca - cb) / abs(cb) < 1e-8
