"""Experiment configuration: a small key = value text format.

Example::

    study = shots
    model = toy:he6_random
    shots = 1000 10000 100000 1000000
    repeats = 20
    seed = 7
    out = runs/he6_shots

Recognised keys (study-dependent ones may be omitted):

    study         shots | subspace | bias
    model         toy:he6_random | toy:pairing | file:<interaction path>
    protons, neutrons, twice_jz    particle content for file models
    dt            evolution-time spacing (default 1.0)
    mnes_tol      span tolerance for the evolved-state count (default 1e-6)
    m             evolved-state count: integer or "mnes" (default mnes)
    initial       basis-state index of the initial state (default 0; use the
                  basis dump to pick a determinant with ground-state overlap)
    m_extra       subspace study: how many sizes above the minimum (default 5)
    shots         shot counts; one value for subspace/bias sweeps in m/M
    bias_shots    bias study M grid (default 25 50 100 200 400)
    index_pattern worst | distinct (bias study, default worst)
    repeats       independent repeats per point
    seed          master seed
    out           output directory
"""

from dataclasses import dataclass, field
from pathlib import Path

STUDIES = ("shots", "subspace", "bias")


class ConfigError(ValueError):
    """Raised for unreadable, unknown or inconsistent configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    study: str
    model: str
    out_dir: Path
    seed: int = 7
    repeats: int = 20
    protons: int = 0
    neutrons: int = 0
    twice_jz: int | None = None
    dt: float = 1.0
    mnes_tol: float = 1e-6
    m: str | int = "mnes"
    initial: int = 0
    m_extra: int = 5
    shots: tuple[int, ...] = (1000, 10000, 100000, 1000000)
    bias_shots: tuple[int, ...] = (25, 50, 100, 200, 400)
    index_pattern: str = "worst"
    raw: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.study not in STUDIES:
            raise ConfigError(f"study must be one of {STUDIES}, got {self.study!r}")
        if self.repeats < 1:
            raise ConfigError("repeats must be >= 1")
        if not self.shots or any(s < 1 for s in self.shots):
            raise ConfigError("shots must be a non-empty list of positive integers")
        if not self.bias_shots or any(s < 1 for s in self.bias_shots):
            raise ConfigError("bias_shots must be a non-empty list of positive integers")
        if self.index_pattern not in ("worst", "distinct"):
            raise ConfigError(f"index_pattern must be 'worst' or 'distinct', got {self.index_pattern!r}")
        if isinstance(self.m, str) and self.m != "mnes":
            raise ConfigError(f"m must be an integer or 'mnes', got {self.m!r}")
        if self.initial < 0:
            raise ConfigError("initial must be a non-negative basis-state index")
        # sweep grids are strictly increasing
        object.__setattr__(self, "shots", tuple(sorted(set(self.shots))))
        object.__setattr__(self, "bias_shots", tuple(sorted(set(self.bias_shots))))


_INT_KEYS = {"seed", "repeats", "protons", "neutrons", "twice_jz", "m_extra", "initial"}
_FLOAT_KEYS = {"dt", "mnes_tol"}
_LIST_KEYS = {"shots", "bias_shots"}


def parse_config_text(text: str, base_dir: Path | None = None) -> ExperimentConfig:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if key in _INT_KEYS:
            try:
                values[key] = int(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} must be an integer") from None
        elif key in _FLOAT_KEYS:
            try:
                values[key] = float(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} must be a number") from None
        elif key in _LIST_KEYS:
            try:
                values[key] = tuple(int(v) for v in value.replace(",", " ").split())
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} must be a list of integers") from None
        elif key == "m":
            values[key] = value if value == "mnes" else _parse_m(value, lineno)
        elif key in ("study", "model", "index_pattern"):
            values[key] = value
        elif key == "out":
            out = Path(value)
            if base_dir is not None and not out.is_absolute():
                out = base_dir / out
            values["out_dir"] = out
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    for required in ("study", "model", "out_dir"):
        if required not in values:
            raise ConfigError(f"missing required key {'out' if required == 'out_dir' else required!r}")
    raw_echo = dict(values)
    try:
        return ExperimentConfig(**values, raw=raw_echo)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def _parse_m(value: str, lineno: int) -> int:
    try:
        m = int(value)
    except ValueError:
        raise ConfigError(f"line {lineno}: m must be an integer or 'mnes'") from None
    if m < 1:
        raise ConfigError(f"line {lineno}: m must be >= 1")
    return m


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    return parse_config_text(path.read_text(encoding="utf-8"), base_dir=path.parent)
