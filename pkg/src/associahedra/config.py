"""Run configuration: an INI file with a ``[run]`` section, overridden by flags.

Example::

    [run]
    max_n = 4
    epsilon = 1e-9
    format = text
    seed = 0
    threads = 1
    output_dir = out

``output_dir`` falls back to ``$ASSOCIAHEDRA_OUTPUT_DIR`` and then to ``.``.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, fields, replace

FORMATS = ("text", "json", "dot", "csv")
OUTPUT_DIR_ENV = "ASSOCIAHEDRA_OUTPUT_DIR"


@dataclass(frozen=True)
class RunConfig:
    max_n: int = 4  # enumeration cap for the glued complexes
    max_k: int = 8  # cap for single posets K_n
    epsilon: float = 1e-9
    format: str = "text"
    seed: int = 0
    threads: int = 1
    output_dir: str = ""

    def __post_init__(self):
        if self.max_n < 1 or self.max_k < 2:
            raise ValueError("enumeration limits must be positive")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")

    @property
    def out_dir(self) -> str:
        return self.output_dir or os.environ.get(OUTPUT_DIR_ENV) or "."

    def override(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def load_config(path=None) -> RunConfig:
    if path is None:
        return RunConfig()
    parser = configparser.ConfigParser()
    with open(path) as fh:
        parser.read_file(fh)
    if not parser.has_section("run"):
        return RunConfig()
    section = parser["run"]
    kw = {}
    for f in fields(RunConfig):
        if f.name not in section:
            continue
        if f.type == "int":
            kw[f.name] = section.getint(f.name)
        elif f.type == "float":
            kw[f.name] = section.getfloat(f.name)
        else:
            kw[f.name] = section.get(f.name)
    unknown = set(section) - {f.name for f in fields(RunConfig)}
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return RunConfig(**kw)
