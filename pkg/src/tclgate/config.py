"""Scenario configuration in a flat ``key = value`` text format.

Lines starting with ``#`` are comments.  Complex numbers are written
``re+imi`` (for example ``0.5-0.25i``); ``custom_state`` holds 16 of them,
comma separated, row-major in the multiplet basis.
"""

from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from .algebra import initial_state
from .bath import MODES, BathParams
from .errors import ConfigError
from .propagator import GateSchedule

STATES = ("mixed_up", "singlet", "custom")


@dataclass(frozen=True)
class ScenarioConfig:
    j0: float = 1.0
    lambda2_eta: float = 1.8e-5
    temperature: float = 300.0
    omega_c: float = 400.0
    t_max: float = 4.0           # in units of tau_s
    n_points: int = 400
    bath_mode: str = "exact"
    initial_state: str = "mixed_up"
    custom_state: tuple | None = None
    output_path: str | None = None
    kernel_du_divisor: int = 40
    seed: int = 0

    def __post_init__(self):
        if not (np.isfinite(self.t_max) and self.t_max > 0):
            raise ConfigError("t_max must be > 0", key="t_max")
        if self.n_points < 2:
            raise ConfigError("n_points must be >= 2", key="n_points")
        if self.kernel_du_divisor < 1:
            raise ConfigError("kernel_du_divisor must be >= 1", key="kernel_du_divisor")
        if self.bath_mode not in MODES:
            raise ConfigError(f"bath_mode must be one of {MODES}", key="bath_mode")
        if self.initial_state not in STATES:
            raise ConfigError(f"initial_state must be one of {STATES}", key="initial_state")
        if self.initial_state == "custom":
            if self.custom_state is None or len(self.custom_state) != 16:
                raise ConfigError("custom_state needs 16 complex entries", key="custom_state")
        elif self.custom_state is not None:
            raise ConfigError("custom_state is only allowed with initial_state = custom",
                              key="custom_state")
        # delegate physical checks
        self.schedule()
        self.bath()
        self.rho0()

    def schedule(self):
        return GateSchedule(self.j0)

    def bath(self):
        return BathParams(self.lambda2_eta, self.temperature, self.omega_c, self.bath_mode)

    def rho0(self):
        matrix = None
        if self.custom_state is not None:
            matrix = np.array(self.custom_state, dtype=complex).reshape(4, 4)
        try:
            return initial_state(self.initial_state, matrix)
        except ConfigError as exc:
            raise ConfigError(str(exc), key="custom_state") from None

    def times(self):
        """Sample times in K^-1 over [0, t_max tau_s]."""
        return np.linspace(0.0, self.t_max * self.schedule().tau_s, self.n_points)

    def with_value(self, key, value):
        return replace(self, **{key: _convert(key, value)})


_TYPES = {f.name: f.type for f in fields(ScenarioConfig)}
_FLOATS = ("j0", "lambda2_eta", "temperature", "omega_c", "t_max")
_INTS = ("n_points", "kernel_du_divisor", "seed")


def parse_complex(text):
    s = text.strip().replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
    return complex(s)


def format_complex(z):
    z = complex(z)
    return f"{z.real!r}{z.imag:+}i".replace("+-", "-")


def _convert(key, value):
    if key not in _TYPES:
        raise ConfigError(f"unknown config key {key!r}", key=key)
    if value is None or (isinstance(value, str) and value.strip() == ""):
        if key in ("custom_state", "output_path"):
            return None
        raise ConfigError(f"{key} has no value", key=key)
    try:
        if key in _FLOATS:
            return float(value)
        if key in _INTS:
            if isinstance(value, str):
                v = float(value)
                if v != int(v):
                    raise ValueError
                return int(v)
            return int(value)
        if key == "custom_state":
            if isinstance(value, str):
                return tuple(parse_complex(v) for v in value.split(","))
            return tuple(complex(v) for v in np.asarray(value).ravel())
        return str(value).strip()
    except (TypeError, ValueError):
        raise ConfigError(f"cannot parse {key} = {value!r}", key=key) from None


def parse_config(text):
    """ScenarioConfig from config-file text; unknown or repeated keys are errors."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'", key=line)
        key, value = (part.strip() for part in line.split("=", 1))
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}", key=key)
        values[key] = _convert(key, value)
    return ScenarioConfig(**values)


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}", key="config") from None
    return parse_config(text)


def dump_config(cfg):
    """Text that parses back to ``cfg`` exactly."""
    lines = []
    for key, value in asdict(cfg).items():
        if value is None:
            continue
        if key == "custom_state":
            text = ", ".join(format_complex(z) for z in value)
        elif isinstance(value, float):
            text = repr(value)
        else:
            text = str(value)
        lines.append(f"{key} = {text}")
    return "\n".join(lines) + "\n"
