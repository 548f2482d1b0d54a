"""Flat ``key = value`` experiment files.

Recognised keys::

    preset = film-k0
    lower.kind = constant | sinusoidal-squared | fourier
    lower.base = 0.0
    lower.amplitude = 0.0            # sinusoidal-squared
    lower.frequency = 1              # sinusoidal-squared
    lower.coefficients = 0.1 0; 0 0.05   # fourier: "cos sin" pairs for n = 1, 2, ...
    upper.*                          # same keys for b_r
    film_lo = 0.5
    film_hi = 0.99
    a_list = 1e-4, 1e-6
    nx = 64
    ny = 9000
    layer = 10                       # optional, boundary-layer band in units of sqrt(a)
    quick.nx / quick.ny / quick.layer  # used with --quick
    band = 0.3, 0.7
    outputs = out/film-k0

Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .domain import CONSTANT, FOURIER, SIN2, BoundaryProfile, DomainSpec


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Resolution:
    nx: int
    ny: int
    layer: float | None = None  # multiples of sqrt(a)

    def layer_width(self, a: float) -> float | None:
        return None if self.layer is None else self.layer * a**0.5


@dataclass(frozen=True)
class ExperimentConfig:
    spec: DomainSpec
    a_list: tuple[float, ...]
    full: Resolution
    quick: Resolution
    band: tuple[float, float] = (0.3, 0.7)
    outputs: str = "out"
    preset: str = ""

    def __post_init__(self):
        if not self.a_list:
            raise ConfigError("a_list must not be empty")
        if any(not a > 0 for a in self.a_list):
            raise ConfigError("every a in a_list must be positive")
        if not self.band[0] < self.band[1]:
            raise ConfigError("band needs lo < hi")

    def resolution(self, quick: bool = False) -> Resolution:
        return self.quick if quick else self.full


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.replace(",", " ").split())


def _profile(kv: dict, side: str) -> BoundaryProfile:
    kind = kv.get(f"{side}.kind", CONSTANT)
    base = float(kv.get(f"{side}.base", 0.0))
    if kind == CONSTANT:
        return BoundaryProfile.constant(base)
    if kind == SIN2:
        return BoundaryProfile.sin2(base, float(kv.get(f"{side}.amplitude", 0.0)),
                                    int(kv.get(f"{side}.frequency", 1)))
    if kind == FOURIER:
        pairs = []
        for chunk in kv.get(f"{side}.coefficients", "").split(";"):
            if chunk.strip():
                c, s = _floats(chunk)
                pairs.append((c, s))
        return BoundaryProfile.fourier(base, pairs)
    raise ConfigError(f"unknown {side}.kind {kind!r}")


def _resolution(kv: dict, prefix: str, fallback: Resolution | None = None) -> Resolution:
    def get(key, cast, default):
        raw = kv.get(prefix + key)
        return default if raw in (None, "") else cast(raw)

    nx = get("nx", int, fallback.nx if fallback else None)
    ny = get("ny", int, fallback.ny if fallback else None)
    if nx is None or ny is None:
        raise ConfigError(f"missing {prefix}nx / {prefix}ny")
    layer = get("layer", float, fallback.layer if fallback else None)
    return Resolution(nx, ny, layer)


def parse_config(text: str) -> ExperimentConfig:
    parser = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=("#",),
                                       interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string("[experiment]\n" + text)
        kv = dict(parser["experiment"])
        spec = DomainSpec(_profile(kv, "lower"), _profile(kv, "upper"),
                          float(kv["film_lo"]), float(kv["film_hi"]))
        full = _resolution(kv, "")
        quick = _resolution(kv, "quick.", full)
        band = _floats(kv.get("band", "0.3, 0.7"))
        if len(band) != 2:
            raise ConfigError("band needs two numbers")
        return ExperimentConfig(
            spec=spec,
            a_list=_floats(kv.get("a_list", "")),
            full=full,
            quick=quick,
            band=band,
            outputs=kv.get("outputs", "out"),
            preset=kv.get("preset", ""),
        )
    except ConfigError:
        raise
    except (KeyError, ValueError, configparser.Error) as exc:
        raise ConfigError(f"invalid config: {exc}") from exc


def _profile_lines(p: BoundaryProfile, side: str) -> list[str]:
    lines = [f"{side}.kind = {p.kind}", f"{side}.base = {p.base!r}"]
    if p.kind == SIN2:
        lines += [f"{side}.amplitude = {p.amplitude!r}", f"{side}.frequency = {p.frequency}"]
    elif p.kind == FOURIER:
        lines.append(f"{side}.coefficients = " + "; ".join(f"{c!r} {s!r}" for c, s in p.coefficients))
    return lines


def format_config(cfg: ExperimentConfig) -> str:
    lines = [f"preset = {cfg.preset}"] if cfg.preset else []
    lines += _profile_lines(cfg.spec.lower, "lower") + _profile_lines(cfg.spec.upper, "upper")
    lines += [
        f"film_lo = {cfg.spec.film_lo!r}",
        f"film_hi = {cfg.spec.film_hi!r}",
        "a_list = " + ", ".join(repr(a) for a in cfg.a_list),
        f"nx = {cfg.full.nx}",
        f"ny = {cfg.full.ny}",
    ]
    if cfg.full.layer is not None:
        lines.append(f"layer = {cfg.full.layer!r}")
    lines += [f"quick.nx = {cfg.quick.nx}", f"quick.ny = {cfg.quick.ny}"]
    if cfg.quick.layer is not None:
        lines.append(f"quick.layer = {cfg.quick.layer!r}")
    lines += [f"band = {cfg.band[0]!r}, {cfg.band[1]!r}", f"outputs = {cfg.outputs}"]
    return "\n".join(lines) + "\n"


PRESETS = ("film-k0", "film-k1", "film-k2", "flat-box")


def preset_text(name: str) -> str:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}")
    return resources.files("filmthick").joinpath("presets", f"{name}.cfg").read_text()


def load_config(source: str) -> ExperimentConfig:
    """Parse a config file path, or a shipped preset name."""
    path = Path(source)
    if path.is_file():
        return parse_config(path.read_text())
    if source in PRESETS:
        return parse_config(preset_text(source))
    raise ConfigError(f"no such config file or preset: {source}")
