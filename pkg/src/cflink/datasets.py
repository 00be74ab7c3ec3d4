"""Dataset registry: ids mapped to edge-list files with their expected (N, M).

A registry file is plain text with one dataset per line::

    id  path  expected_N  expected_M

Relative paths resolve against a base directory (by default the registry
file's own directory). Loading verifies the parsed graph against the
recorded node and edge counts so a wrong file version fails early.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import DatasetError
from .graph import Graph, read_edge_list

DATA_ENV = "CFLINK_DATA"
REGISTRY_ENV = "CFLINK_REGISTRY"


@dataclass(frozen=True)
class RegistryEntry:
    id: str
    path: Path
    expected_n: int
    expected_m: int


class DatasetRegistry:
    def __init__(self, entries=()):
        self._entries: dict[str, RegistryEntry] = {}
        for e in entries:
            self.add(e)

    def add(self, entry: RegistryEntry):
        self._entries[entry.id.lower()] = entry

    def update(self, other: "DatasetRegistry"):
        for e in other:
            self.add(e)

    @classmethod
    def parse(cls, text: str, base: str | os.PathLike = ".") -> "DatasetRegistry":
        base = Path(base)
        reg = cls()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) != 4:
                raise DatasetError(f"registry line {lineno}: expected 'id path N M'")
            ds, path, n, m = toks
            try:
                n, m = int(n), int(m)
            except ValueError:
                raise DatasetError(f"registry line {lineno}: N and M must be integers") from None
            p = Path(path).expanduser()
            reg.add(RegistryEntry(ds, p if p.is_absolute() else base / p, n, m))
        return reg

    @classmethod
    def load(cls, path: str | os.PathLike, base=None) -> "DatasetRegistry":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DatasetError(f"cannot read registry {path}: {exc}") from exc
        return cls.parse(text, path.parent if base is None else base)

    def __contains__(self, ds: str) -> bool:
        return ds.lower() in self._entries

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self):
        return len(self._entries)

    def ids(self) -> list[str]:
        return list(self._entries)

    def entry(self, ds: str) -> RegistryEntry:
        try:
            return self._entries[ds.lower()]
        except KeyError:
            raise DatasetError(f"dataset not found: {ds}") from None

    def available(self, ds: str) -> bool:
        return ds in self and self.entry(ds).path.is_file()

    def load_graph(self, ds: str) -> Graph:
        e = self.entry(ds)
        if not e.path.is_file():
            raise DatasetError(f"dataset not found: {ds} (expected edge list at {e.path})")
        g = read_edge_list(e.path)
        if (g.node_count, g.edge_count) != (e.expected_n, e.expected_m):
            raise DatasetError(
                f"dataset {ds} at {e.path} has N={g.node_count}, M={g.edge_count}; "
                f"registry expects N={e.expected_n}, M={e.expected_m}"
            )
        return g


def _package_text(name: str) -> str:
    return resources.files("cflink").joinpath("data", name).read_text(encoding="utf-8")


def fixture_dir() -> Path:
    return Path(str(resources.files("cflink").joinpath("data")))


def data_dir() -> Path:
    return Path(os.environ.get(DATA_ENV, "data")).expanduser()


def default_registry() -> DatasetRegistry:
    """Bundled fixtures, the reference benchmark networks, and ``$CFLINK_REGISTRY``.

    Reference networks resolve under ``$CFLINK_DATA`` (default ``./data``).
    Later sources override earlier ones.
    """
    reg = DatasetRegistry.parse(_package_text("fixtures.txt"), fixture_dir())
    reg.update(DatasetRegistry.parse(_package_text("reference_networks.txt"), data_dir()))
    extra = os.environ.get(REGISTRY_ENV)
    if extra:
        reg.update(DatasetRegistry.load(extra))
    return reg


def resolve_graph(name: str, registry: DatasetRegistry | None = None) -> tuple[str, Graph]:
    """Load a registered dataset by id, or else an edge-list file by path.

    Returns ``(dataset_id, graph)``; files are named by their stem.
    """
    registry = default_registry() if registry is None else registry
    if name in registry:
        return name.lower(), registry.load_graph(name)
    p = Path(name).expanduser()
    if p.is_file():
        return p.stem, read_edge_list(p)
    raise DatasetError(f"dataset not found: {name}")
