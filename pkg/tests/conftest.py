import numpy as np
import pytest

from tclgate import _backend, _pykernels
from tclgate.algebra import EnergySpectrum
from tclgate.bath import BathParams
from tclgate.propagator import GateSchedule, make_integrator

try:
    from tclgate import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNEL_MODULES = {"python": _pykernels}
if _ckernels is not None:
    KERNEL_MODULES["cython"] = _ckernels

TAU = np.pi


@pytest.fixture(params=sorted(KERNEL_MODULES))
def backend(request, monkeypatch):
    """Route every hot loop through one backend for the duration of a test."""
    mod = KERNEL_MODULES[request.param]
    for name in ("filon_cos", "triangle_sums", "rk4_tcl2"):
        monkeypatch.setattr(_backend, name, getattr(mod, name))
    return request.param


@pytest.fixture(scope="session")
def ref_params():
    return BathParams(1.8e-5, 300.0, 400.0)


@pytest.fixture(scope="session")
def schedule():
    return GateSchedule(1.0)


@pytest.fixture(scope="session")
def spectrum():
    return EnergySpectrum(1.0)


@pytest.fixture(scope="session")
def ref_integrator(ref_params, spectrum, schedule):
    return make_integrator(ref_params, spectrum, 4 * TAU, schedule)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
