"""Run configurations and the key=value config-file reader."""

from dataclasses import dataclass, fields
from fractions import Fraction
import os

from x2y2.rrho import DEFAULT_GRID

OUTPUT_DIR_ENV = "X2Y2_OUTPUT_DIR"


@dataclass
class RRHOConfig:
    nmax: int = 88
    states: int = 5
    omega: float = 1.0
    scan: tuple = DEFAULT_GRID


@dataclass
class RRKConfig:
    a: Fraction = Fraction(1)
    order: int = 25
    digits: int = 60


@dataclass
class CMXConfig:
    a: Fraction = Fraction(1)
    order: int = 12
    digits: int = 60


@dataclass
class CompareConfig:
    nmax: int = 88
    rrk_order: int = 30
    cmx_order: int = 16
    digits: int = 60
    a: Fraction = Fraction(1)


@dataclass
class WaveConfig:
    nmax: int = 88
    state: int = 1
    L: float = 8.0
    N: int = 201


def read_config_file(path):
    """Parse ``key = value`` lines; '#' starts a comment.  Keys use the flag
    names with dashes or underscores."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, val = line.split("=", 1)
            out[key.strip().lstrip("-").replace("-", "_")] = val.strip()
    return out


def field_names(cls):
    return {f.name for f in fields(cls)}


def output_dir():
    return os.environ.get(OUTPUT_DIR_ENV)


def resolve_output(path):
    """Relative output paths land in $X2Y2_OUTPUT_DIR when it is set."""
    base = output_dir()
    if path is None or os.path.isabs(path) or not base:
        return path
    return os.path.join(base, path)
