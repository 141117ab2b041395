"""Time the compiled kernels against the numpy fallback on identical inputs.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from tclgate import _pykernels
from tclgate.algebra import EnergySpectrum, spin_operators
from tclgate.propagator import frequency_slots

try:
    from tclgate import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    best = np.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    rng = np.random.default_rng(7)
    h = 400.0 / 4096
    amp = 1.0 + rng.random(4097)
    u = np.linspace(0.0, 3.0, 2000)
    yield "filon_cos (4097 nodes x 2000 u)", lambda m: m.filon_cos(amp, h, u)

    n = 4000
    phase = np.exp(1j * np.linspace(0, 3, n))
    kern = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    yield f"triangle_sums (n={n})", lambda m: m.triangle_sums(phase, kern)

    spectrum = EnergySpectrum(1.0)
    ops = np.asarray(spin_operators()).reshape(-1, 4, 4).copy()
    widx = frequency_slots(spectrum)
    steps = 5000
    tq = np.linspace(0, np.pi, 2 * steps + 1)
    mod = np.exp(1j * tq[:, None] * np.array([-1.0, 0.0, 1.0]))
    lam = 1e-3 * mod * tq[:, None]
    rho0 = np.diag([0.5, 0.25, 0.0, 0.25]).astype(complex)
    dt = np.pi / steps
    yield (f"rk4_tcl2 ({steps} steps)",
           lambda m: m.rk4_tcl2(rho0, ops, widx, mod, lam, dt, steps, 100))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the python backend is available")
    print(f"{'kernel':40s} {'python [s]':>11s} {'cython [s]':>11s} {'speedup':>8s} {'max diff':>10s}")
    for name, fn in cases():
        tp, ref = best_of(lambda: fn(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:40s} {tp:11.4f}")
            continue
        tc, out = best_of(lambda: fn(_ckernels), args.repeat)
        diff = np.max(np.abs(np.asarray(out) - np.asarray(ref)))
        print(f"{name:40s} {tp:11.4f} {tc:11.4f} {tp / tc:8.1f} {diff:10.2e}")


if __name__ == "__main__":
    main()
