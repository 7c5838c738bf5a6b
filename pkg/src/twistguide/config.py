"""``section.key = value`` run configuration."""

from dataclasses import dataclass, fields, replace
import math

from . import cross_section as cs, twist as tw
from .errors import ConfigError


@dataclass(frozen=True)
class RunConfig:
    section_kind: str = "rectangle"
    a: float = math.pi
    b: float = math.pi
    mask: str = None
    beta: float = 1.5
    twist_kind: str = "tanh"
    c: float = 0.5
    offset: float = math.pi / 2
    R: float = 2.0
    twist_file: str = None
    L: float = 20.0
    nx: int = 2000
    modes: int = 9
    tol: float = 1e-8
    out_path: str = None
    out_format: str = "kv"

    def section(self):
        if self.section_kind == "rectangle":
            return cs.Rectangle(self.a, self.b)
        return cs.load_mask(self.mask)

    def twist(self):
        if self.twist_kind == "tanh":
            return tw.Tanh(self.c, self.offset)
        if self.twist_kind == "bump":
            return tw.Bump(self.c, self.R, self.offset)
        return tw.load_tabulated(self.twist_file)

    def validate(self):
        checks = [
            ("beta", self.beta >= 0, "must be >= 0"),
            ("domain.L", self.L > 0, "must be > 0"),
            ("domain.nx", self.nx >= 3, "must be >= 3"),
            ("modes", self.modes >= 1, "must be >= 1"),
            ("solver.tol", self.tol > 0, "must be > 0"),
            ("cross_section.a", self.a > 0, "must be > 0"),
            ("cross_section.b", self.b > 0, "must be > 0"),
            ("twist.R", self.R > 0, "must be > 0"),
        ]
        for key, ok, why in checks:
            if not ok:
                raise ConfigError(f"{key} {why}", key=key)
        if self.section_kind == "grid" and not self.mask:
            raise ConfigError("cross_section.mask is required for kind = grid", key="cross_section.mask")
        if self.twist_kind == "tabulated" and not self.twist_file:
            raise ConfigError("twist.file is required for kind = tabulated", key="twist.file")
        return self


def _choice(*options):
    def parse(v):
        v = v.lower()
        if v not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return v
    return parse


def _int(v):
    f = float(v)
    if f != int(f):
        raise ValueError("expected an integer")
    return int(f)


# config key -> (RunConfig field, parser)
KEYS = {
    "cross_section.kind": ("section_kind", _choice("rectangle", "grid")),
    "cross_section.a": ("a", float),
    "cross_section.b": ("b", float),
    "cross_section.mask": ("mask", str),
    "beta": ("beta", float),
    "twist.kind": ("twist_kind", _choice("tanh", "bump", "tabulated")),
    "twist.c": ("c", float),
    "twist.offset": ("offset", float),
    "twist.R": ("R", float),
    "twist.file": ("twist_file", str),
    "domain.L": ("L", float),
    "domain.nx": ("nx", _int),
    "modes": ("modes", _int),
    "solver.tol": ("tol", float),
    "output.path": ("out_path", str),
    "output.format": ("out_format", _choice("csv", "kv")),
}
_FIELD_KEY = {f: k for k, (f, _) in KEYS.items()}


def parse_config(text, base=None):
    """Parse ``key = value`` lines into a validated ``RunConfig``."""
    values = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        key, value = (t.strip() for t in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}", line=lineno, key=key)
        name, parse = KEYS[key]
        try:
            values[name] = parse(value)
        except ValueError as exc:
            raise ConfigError(f"malformed value for {key}: {exc}", line=lineno, key=key) from None
        if isinstance(values[name], float) and not math.isfinite(values[name]):
            raise ConfigError(f"malformed value for {key}: not finite", line=lineno, key=key)
        lines[key] = lineno
    cfg = replace(base or RunConfig(), **values)
    try:
        return cfg.validate()
    except ConfigError as exc:
        raise ConfigError(str(exc), line=lines.get(exc.key), key=exc.key) from None


def with_overrides(cfg, **kw):
    """Apply non-None overrides (e.g. from command-line flags) and re-validate."""
    kw = {k: v for k, v in kw.items() if v is not None}
    return replace(cfg, **kw).validate()


def config_keys():
    return sorted(KEYS)


def as_text(cfg):
    return "".join(f"{_FIELD_KEY[f.name]} = {getattr(cfg, f.name)}\n" for f in fields(cfg)
                   if getattr(cfg, f.name) is not None)
