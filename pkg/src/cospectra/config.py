"""Run configuration: budgets, workers, output format, seed.

Values are layered: defaults < environment (COSPECTRA_*) < ``--config``
file (key=value lines, ``#`` comments) < explicit command-line flags.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace

from .errors import InputError

ENV_PREFIX = "COSPECTRA_"


@dataclass(frozen=True)
class RunConfig:
    tuple_cap: int = 10**7
    node_cap: int = 10**6
    census_max_n: int = 7
    workers: int = 1
    format: str = "json"
    seed: int = 0

    def __post_init__(self):
        for name in ("tuple_cap", "node_cap", "census_max_n", "workers"):
            if getattr(self, name) < 1:
                raise InputError(f"{name} must be positive")
        if self.format not in ("json", "table"):
            raise InputError("format must be 'json' or 'table'")

    def as_dict(self) -> dict:
        return asdict(self)

    def map(self, fn, items) -> list:
        return parallel_map(fn, items, self.workers)


def _coerce(name: str, raw: str):
    types = {f.name: f.type for f in fields(RunConfig)}
    if name not in types:
        raise InputError(f"unknown configuration key {name!r}")
    if types[name] in ("int", int):
        try:
            return int(raw.replace("_", ""))
        except ValueError:
            raise InputError(f"{name} expects an integer, got {raw!r}") from None
    return raw


def parse_config_text(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"config line {lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key] = _coerce(key, value)
    return out


def from_env(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    out = {}
    for f in fields(RunConfig):
        raw = environ.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            out[f.name] = _coerce(f.name, raw)
    return out


def load_config(path: str | None = None, overrides: dict | None = None, environ=None) -> RunConfig:
    values = from_env(environ)
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                values.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise InputError(f"cannot read config file: {exc}") from None
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return replace(RunConfig(), **values)


def parallel_map(fn, items, workers: int = 1) -> list:
    """Order-preserving map; results are identical for any worker count."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
