"""The 38 labelled 24-vertex non-trivial snarks and snark certification."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Mapping

from .graph import (
    Edge,
    LabeledGraph,
    PreconditionViolated,
    are_isomorphic,
    chromatic_index_cubic,
    connected_components,
    find_bridges,
    girth,
    is_connected,
    is_forest_component,
    is_regular,
)

SNARK_COUNT = 38


class UnknownId(KeyError):
    pass


class NotConnected(ValueError):
    pass


def parse_id(snark) -> int:
    """Accept ``1``, ``"G1"`` or ``"g01"`` and return the index 1..38."""
    if isinstance(snark, str):
        s = snark.strip().lstrip("Gg")
        if not s.isdigit():
            raise UnknownId(snark)
        snark = int(s)
    if not isinstance(snark, int) or not 1 <= snark <= SNARK_COUNT:
        raise UnknownId(snark)
    return snark


def data_dir():
    return resources.files("snarkdesign") / "data"


@lru_cache(maxsize=None)
def get_graph(snark) -> LabeledGraph:
    from .formats import parse_graph

    k = parse_id(snark)
    text = (data_dir() / "catalog" / f"g{k:02d}.graph").read_text()
    return parse_graph(text, source=f"g{k:02d}.graph")[1]


@lru_cache(maxsize=None)
def petersen() -> LabeledGraph:
    from .formats import parse_graph

    return parse_graph((data_dir() / "catalog" / "petersen.graph").read_text())[1]


def load_catalog() -> dict[int, LabeledGraph]:
    return {k: get_graph(k) for k in range(1, SNARK_COUNT + 1)}


def _has_cycle_components(g: LabeledGraph, removed) -> bool | None:
    """None if removal leaves g connected, else whether every component has a cycle."""
    h = g.without_edges(removed)
    comps = connected_components(h)
    if len(comps) < 2:
        return None
    return not any(is_forest_component(h, c) for c in comps)


def has_reducing_3cut(g: LabeledGraph) -> tuple[Edge, Edge, Edge] | None:
    """A 3-edge cut leaving only cycle-containing components, or ``None``."""
    if not is_connected(g):
        raise NotConnected("graph must be connected")
    for triple in combinations(g.edges, 3):
        if _has_cycle_components(g, triple):
            return triple
    return None


@dataclass(frozen=True)
class SnarkReport:
    cubic: bool
    connected: bool
    bridgeless: bool
    girth: int | None
    chromatic_index: int | None
    reducing_3cut: tuple | None

    @property
    def is_nontrivial_snark(self) -> bool:
        return (
            self.cubic
            and self.connected
            and self.bridgeless
            and self.chromatic_index == 4
            and self.girth is not None
            and self.girth >= 5
            and self.reducing_3cut is None
        )


def snark_report(g: LabeledGraph) -> SnarkReport:
    cubic = is_regular(g, 3)
    connected = is_connected(g)
    bridgeless = not find_bridges(g)
    chi = None
    if cubic and connected and bridgeless:
        try:
            chi = chromatic_index_cubic(g)
        except PreconditionViolated:  # pragma: no cover - guarded above
            chi = None
    cut = has_reducing_3cut(g) if connected else None
    return SnarkReport(cubic, connected, bridgeless, girth(g), chi, cut)


@dataclass
class CatalogCheck:
    passed: bool
    failure: str | None = None
    reports: dict | None = None

    def __str__(self):
        return "catalog OK" if self.passed else f"catalog FAILED: {self.failure}"


def catalog_integrity(catalog: Mapping[int, LabeledGraph] | None = None, vertices: int = 24) -> CatalogCheck:
    catalog = load_catalog() if catalog is None else catalog
    reports = {}
    for k in sorted(catalog):
        g = catalog[k]
        if g.vertex_count != vertices or len(g.edges) != 3 * vertices // 2:
            return CatalogCheck(False, f"G{k}: {g.vertex_count} vertices, {len(g.edges)} edges")
        if not is_regular(g, 3):
            return CatalogCheck(False, f"G{k}: degree failure (not 3-regular)")
        r = snark_report(g)
        reports[k] = r
        if not r.is_nontrivial_snark:
            return CatalogCheck(False, f"G{k}: not a non-trivial snark ({r})", reports)
    for a, b in combinations(sorted(catalog), 2):
        if are_isomorphic(catalog[a], catalog[b]):
            return CatalogCheck(False, f"duplicate pair (G{a},G{b}) are isomorphic", reports)
    return CatalogCheck(True, None, reports)
