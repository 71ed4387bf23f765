"""Run manifests: what a command wrote, under which config hash."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy

from . import __version__


@dataclass
class RunManifest:
    command: str
    config_hash: str
    seeds: tuple[int, ...]
    versions: dict = field(default_factory=lambda: {
        "algrec": __version__, "numpy": numpy.__version__})
    files: list[str] = field(default_factory=list)
    wall_clock_seconds: dict = field(default_factory=dict)

    def add_file(self, path: str | Path) -> None:
        self.files.append(str(path))

    def record_time(self, label: str, seconds: float) -> None:
        self.wall_clock_seconds[label] = seconds

    def write(self, out_dir: str | Path) -> Path:
        path = Path(out_dir) / "manifest.json"
        payload = {
            "command": self.command,
            "config_hash": self.config_hash,
            "seeds": list(self.seeds),
            "versions": self.versions,
            "files": self.files,
            "wall_clock_seconds": self.wall_clock_seconds,
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return path
