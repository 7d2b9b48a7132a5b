"""Bundled example documents."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .io import Document, load as _load


def path(name: str) -> Path:
    return Path(str(resources.files("hyperfan") / "data" / name))


def names() -> list[str]:
    return sorted(p.name for p in resources.files("hyperfan").joinpath("data").iterdir() if p.is_file())


def load(name: str) -> Document:
    return _load(path(name))
