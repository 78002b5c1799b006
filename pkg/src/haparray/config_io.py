"""Scenario-file parsing and CSV emission.

Configs are JSON objects or TOML documents; section headers are flattened,
so ``[channel] ... eta_los_db = 1.0`` and a flat ``eta_los_db = 1.0`` are
equivalent.  Unknown keys are rejected by name.  Results are written as
UTF-8 CSVs (one file per experiment family) with floats at 9 significant
digits, via a temp file and atomic rename, and a manifest records the SHA-256
of every emitted file.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
from dataclasses import dataclass, fields

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .scenario import ScenarioConfig, ScenarioResult, geometry_rows

GEOMETRY_COLUMNS = ("index", "x", "y", "z", "bx", "by", "bz", "d_m", "theta_m", "phi_m")


class ConfigError(ValueError):
    """Invalid or unknown scenario configuration."""


_FIELD_NAMES = {f.name for f in fields(ScenarioConfig)}
# Convenience aliases accepted in config files.
_ALIASES = {"p_haps_dbm"}


def parse_config(source) -> ScenarioConfig:
    """Parse a config path or raw text into a validated ScenarioConfig.

    Omitted keys fall back to the urban default scenario (2 GHz carrier,
    20 MHz bandwidth, K=16, M=2650, 50 dBm, theta_3dB=25, M_k=64, 20 km
    altitude, 60 km square).
    """
    text = source
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source, "rb") as fh:
            text = fh.read().decode("utf-8")
    if not isinstance(text, str):
        raise ConfigError("config source must be a path, text, or file object")

    raw = _load_document(text)
    flat = _flatten(raw)
    unknown = set(flat) - _FIELD_NAMES - _ALIASES
    if unknown:
        raise ConfigError(f"unknown config key: {sorted(unknown)[0]}")
    if "p_haps_dbm" in flat:
        if "p_haps_w" in flat:
            raise ConfigError("give either p_haps_w or p_haps_dbm, not both")
        flat["p_haps_w"] = 10.0 ** ((flat.pop("p_haps_dbm") - 30.0) / 10.0)
    try:
        return ScenarioConfig(**flat)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc


def _load_document(text: str) -> dict:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON config: {exc}") from exc
    else:
        try:
            doc = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"invalid TOML config: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a table of keys")
    return doc


def _flatten(doc: dict) -> dict:
    flat = {}
    for key, value in doc.items():
        if isinstance(value, dict):
            for sub, subvalue in value.items():
                if sub in flat:
                    raise ConfigError(f"duplicate config key: {sub}")
                flat[sub] = subvalue
        else:
            if key in flat:
                raise ConfigError(f"duplicate config key: {key}")
            flat[key] = value
    return flat


def dump_config(config: ScenarioConfig) -> str:
    """Canonical JSON form of a config; parse(dump(cfg)) round-trips."""
    return json.dumps(config.as_dict(), indent=2, sort_keys=True)


@dataclass
class RunManifest:
    """What one run emitted: config, seed, and per-file content hashes."""

    out_dir: str
    experiment: str
    seed: int
    config_hash: str
    files: dict  # name -> sha256

    def verify(self) -> bool:
        for name, digest in self.files.items():
            path = os.path.join(self.out_dir, name)
            if not os.path.exists(path) or _sha256(path) != digest:
                return False
        return True


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return f"{value:.9g}"
    if isinstance(value, (int, str)):
        return str(value)
    try:
        return f"{float(value):.9g}"
    except (TypeError, ValueError):
        return str(value)


def _write_csv(path: str, columns, rows) -> str:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_format_cell(v) for v in row) + "\n")
    os.replace(tmp, path)
    return _sha256(path)


def check_output_dir(out_dir: str):
    """Pre-flight writability check, run before any computation starts."""
    os.makedirs(out_dir, exist_ok=True)
    probe = os.path.join(out_dir, ".write_probe")
    try:
        with open(probe, "w") as fh:
            fh.write("ok")
    finally:
        if os.path.exists(probe):
            os.remove(probe)


def emit_results(result: ScenarioResult, out_dir: str,
                 config: ScenarioConfig | None = None) -> RunManifest:
    """Write one CSV per populated experiment family plus a manifest."""
    os.makedirs(out_dir, exist_ok=True)
    files = {}
    for name, (columns, rows) in result.tables.items():
        filename = f"{name}.csv"
        files[filename] = _write_csv(os.path.join(out_dir, filename), columns, rows)
    if config is not None:
        path = os.path.join(out_dir, "config.json")
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(dump_config(config))
        os.replace(tmp, path)
        files["config.json"] = _sha256(path)
    manifest = RunManifest(
        out_dir=out_dir,
        experiment=result.experiment,
        seed=result.seed,
        config_hash=result.config_hash,
        files=files,
    )
    path = os.path.join(out_dir, "manifest.json")
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(
            {
                "experiment": manifest.experiment,
                "seed": manifest.seed,
                "config_hash": manifest.config_hash,
                "files": manifest.files,
            },
            fh,
            indent=2,
            sort_keys=True,
        )
    os.replace(tmp, path)
    return manifest


def emit_geometry(config: ScenarioConfig, out_dir: str,
                  include_gains: bool = False) -> RunManifest:
    """Write geometry.csv (and optionally gains.csv) for the first architecture.

    gains.csv is a debugging dump of the linear gain matrix for the scenario's
    seeded users: one row per user, one column per element.
    """
    os.makedirs(out_dir, exist_ok=True)
    files = {
        "geometry.csv": _write_csv(
            os.path.join(out_dir, "geometry.csv"), GEOMETRY_COLUMNS, geometry_rows(config)
        )
    }
    if include_gains:
        columns, rows = gain_matrix_table(config)
        files["gains.csv"] = _write_csv(os.path.join(out_dir, "gains.csv"), columns, rows)
    return RunManifest(
        out_dir=out_dir,
        experiment="geometry",
        seed=config.seed,
        config_hash=config.config_hash(),
        files=files,
    )


def gain_matrix_table(config: ScenarioConfig):
    """Gain matrix for the scenario's seeded users: row = user, column = element."""
    import numpy as np

    from .element_gain import gain_matrix
    from .geometry import UserField
    from .scenario import build_geometry

    geometry = build_geometry(config, config.architecture[0])
    rng = np.random.default_rng(config.seed)
    side = config.area_side_m
    xy = rng.uniform(-side / 2.0, side / 2.0, size=(config.k, 2))
    g = gain_matrix(geometry, UserField(xy, altitude=config.altitude_m), config.pattern())
    columns = ("user",) + tuple(f"g_{m}" for m in range(g.shape[1]))
    rows = [(k, *g[k]) for k in range(g.shape[0])]
    return columns, rows
