"""Piecewise-modular host permutations, block placement, orbit development
and exact verification of decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, lcm

import numpy as np

from .graph import LabeledGraph, normalize_edge
from .host import HostGraph, NotAHostEdge

MAX_VIOLATIONS = 50


class DesignError(ValueError):
    pass


class SegmentOverlap(DesignError):
    pass


class DomainNotCovered(DesignError):
    pass


class RepeatedVertex(DesignError):
    pass


class PlacementError(DesignError):
    """A developed block failed to place; ``power`` is the map exponent."""

    def __init__(self, message, power=0):
        super().__init__(message)
        self.power = power


@dataclass(frozen=True)
class PiecewiseModularMap:
    """Permutation of ``0..domain_size-1`` built from cyclic segments.

    Each segment ``(base, length, step)`` acts on ``[base, base+length)`` as
    ``x -> base + ((x - base + step) mod length)``; fixed points map to themselves.
    """

    segments: tuple[tuple[int, int, int], ...]
    fixed_points: tuple[int, ...]
    domain_size: int
    name: str = ""

    @cached_property
    def table(self) -> np.ndarray:
        perm = np.arange(self.domain_size, dtype=np.int64)
        for base, length, step in self.segments:
            x = np.arange(base, base + length)
            perm[base:base + length] = base + (x - base + step) % length
        return perm

    @cached_property
    def order(self) -> int:
        out = 1
        for _, length, step in self.segments:
            out = lcm(out, length // gcd(step % length, length))
        return out

    def apply(self, x: int) -> int:
        for base, length, step in self.segments:
            if base <= x < base + length:
                return base + (x - base + step) % length
        if x in self.fixed_points:
            return x
        raise DesignError(f"vertex {x} outside the map domain")

    def powers(self) -> np.ndarray:
        """Array of shape ``(order, domain_size)``; row ``t`` is the map applied ``t`` times."""
        return _powers(self.table, self.order)


def _powers(table: np.ndarray, order: int) -> np.ndarray:
    out = np.empty((order, table.size), dtype=np.int64)
    out[0] = np.arange(table.size)
    for t in range(1, order):
        out[t] = table[out[t - 1]]
    return out


def make_map(segments, fixed_points, host: HostGraph | int, name: str = "") -> PiecewiseModularMap:
    n = host if isinstance(host, int) else host.vertex_count
    owner = [None] * n
    for seg in segments:
        base, length, step = (int(x) for x in seg)
        if length < 1:
            raise DesignError(f"segment {seg} has non-positive length")
        if base < 0 or base + length > n:
            raise DomainNotCovered(f"segment {seg} leaves the domain 0..{n - 1}")
        for x in range(base, base + length):
            if owner[x] is not None:
                raise SegmentOverlap(f"vertex {x} lies in segments {owner[x]} and {seg}")
            owner[x] = tuple(seg)
    for x in fixed_points:
        if not 0 <= x < n:
            raise DomainNotCovered(f"fixed point {x} outside the domain")
        if owner[x] is not None:
            raise SegmentOverlap(f"fixed point {x} also lies in segment {owner[x]}")
        owner[x] = "fixed"
    missing = [x for x in range(n) if owner[x] is None]
    if missing:
        raise DomainNotCovered(f"vertex {missing[0]} not covered by any segment or fixed point")
    return PiecewiseModularMap(
        tuple(tuple(int(x) for x in s) for s in segments), tuple(sorted(int(x) for x in fixed_points)), n, name
    )


def validate_automorphism(m: PiecewiseModularMap, host: HostGraph) -> bool:
    if m.domain_size != host.vertex_count:
        return False
    perm = m.table
    if not np.array_equal(np.sort(perm), np.arange(host.vertex_count)):
        return False
    if host.kind == "complete":
        return True
    parts = np.asarray(host.parts)
    same = parts[:, None] == parts[None, :]
    return bool(np.array_equal(same, same[np.ix_(perm, perm)]))


@dataclass(frozen=True)
class BaseBlock:
    vertices: tuple[int, ...]
    map: PiecewiseModularMap


@dataclass
class DesignRecord:
    id: str
    snark: int
    host: HostGraph
    blocks: list[BaseBlock]
    comments: list[str] = field(default_factory=list)

    @property
    def maps(self) -> list[PiecewiseModularMap]:
        """Distinct maps in order of first use."""
        seen: dict[str, PiecewiseModularMap] = {}
        for b in self.blocks:
            seen.setdefault(b.map.name, b.map)
        return list(seen.values())

    def developed_count(self) -> int:
        return sum(b.map.order for b in self.blocks)


@dataclass
class VerificationReport:
    passed: bool
    developed_block_count: int
    edge_count: int
    histogram: dict[int, int]
    violations: list[tuple[tuple[int, int], int]]
    cause: str | None = None
    record_id: str = ""

    def to_dict(self) -> dict:
        return {
            "id": self.record_id,
            "pass": self.passed,
            "blocks": self.developed_block_count,
            "edges": self.edge_count,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "violations": [{"edge": list(e), "multiplicity": m} for e, m in self.violations],
            "cause": self.cause,
        }


def _snark_graph(snark) -> LabeledGraph:
    if isinstance(snark, LabeledGraph):
        return snark
    from .catalog import get_graph

    return get_graph(snark)


def _check_tuple(vertices, host: HostGraph) -> None:
    if len(set(vertices)) != len(vertices):
        dup = next(v for v in vertices if list(vertices).count(v) > 1)
        raise RepeatedVertex(f"vertex {host.label(dup)} repeated in block")
    for v in vertices:
        if not 0 <= v < host.vertex_count:
            raise PlacementError(f"vertex {v} not in host of order {host.vertex_count}")


def place_block(snark, vertices, host: HostGraph) -> list[tuple[int, int]]:
    """Host edges covered by the snark placed with vertex ``i`` at ``vertices[i]``."""
    g = _snark_graph(snark)
    if len(vertices) != g.vertex_count:
        raise PlacementError(f"block has {len(vertices)} vertices, snark has {g.vertex_count}")
    _check_tuple(vertices, host)
    out = []
    for i, j in g.edges:
        u, v = vertices[i], vertices[j]
        if not host.contains_edge(u, v):
            raise NotAHostEdge(f"snark edge {{{i + 1},{j + 1}}} lands on non-edge {{{host.label(u)},{host.label(v)}}}")
        out.append(normalize_edge(u, v))
    return out


def develop_orbit(block: BaseBlock, snark, host: HostGraph) -> list[list[tuple[int, int]]]:
    g = _snark_graph(snark)
    if not validate_automorphism(block.map, host):
        raise PlacementError(f"map {block.map.name!r} is not a host automorphism")
    out = []
    current = list(block.vertices)
    for t in range(block.map.order):
        try:
            out.append(place_block(g, current, host))
        except (DesignError, NotAHostEdge) as exc:
            raise PlacementError(f"power {t}: {exc}", power=t) from exc
        current = [int(block.map.table[x]) for x in current]
    return out


def developed_edge_indices(block: BaseBlock, g: LabeledGraph, host: HostGraph) -> np.ndarray:
    """Edge indices of every developed block, shape ``(order, |E(G)|)``.

    Raises :class:`PlacementError` naming the first power whose placement fails.
    """
    verts = np.asarray(block.vertices, dtype=np.int64)
    developed = block.map.powers()[:, verts]
    ends = np.asarray(g.edges, dtype=np.int64)
    a = developed[:, ends[:, 0]]
    b = developed[:, ends[:, 1]]
    idx = host.index_matrix[a, b]
    bad = np.argwhere(idx < 0)
    if bad.size:
        t, k = (int(x) for x in bad[0])
        i, j = g.edges[k]
        raise PlacementError(
            f"power {t}: snark edge {{{i + 1},{j + 1}}} lands on non-edge "
            f"{{{host.label(int(a[t, k]))},{host.label(int(b[t, k]))}}}",
            power=t,
        )
    return idx


def coverage(record: DesignRecord, g: LabeledGraph | None = None) -> np.ndarray:
    g = g or _snark_graph(record.snark)
    counts = np.zeros(record.host.edge_count, dtype=np.int64)
    for b in record.blocks:
        counts += np.bincount(developed_edge_indices(b, g, record.host).ravel(), minlength=counts.size)
    return counts


def _fail(record, blocks, cause) -> VerificationReport:
    return VerificationReport(False, blocks, record.host.edge_count, {}, [], cause, record.id)


def verify_design(record: DesignRecord) -> VerificationReport:
    host = record.host
    try:
        g = _snark_graph(record.snark)
    except Exception as exc:  # unknown snark id
        return _fail(record, 0, str(exc))
    blocks = record.developed_count()
    if blocks * len(g.edges) != host.edge_count:
        return _fail(
            record, blocks, f"edge-count balance: {blocks} blocks x {len(g.edges)} edges != {host.edge_count} host edges"
        )
    checked: dict[int, bool] = {}
    for n, b in enumerate(record.blocks):
        if id(b.map) not in checked:
            checked[id(b.map)] = validate_automorphism(b.map, host)
        if not checked[id(b.map)]:
            return _fail(record, blocks, f"block {n + 1}: map {b.map.name!r} is not a host automorphism")
        if len(b.vertices) != g.vertex_count:
            return _fail(record, blocks, f"block {n + 1}: {len(b.vertices)} vertices, expected {g.vertex_count}")
        try:
            _check_tuple(b.vertices, host)
        except DesignError as exc:
            return _fail(record, blocks, f"block {n + 1}: {exc}")
    try:
        counts = coverage(record, g)
    except PlacementError as exc:
        return _fail(record, blocks, str(exc))
    values, freq = np.unique(counts, return_counts=True)
    histogram = {int(v): int(f) for v, f in zip(values, freq)}
    bad = np.flatnonzero(counts != 1)[:MAX_VIOLATIONS]
    violations = [(host.edge_of_index(int(k)), int(counts[k])) for k in bad]
    passed = histogram == {1: host.edge_count}
    return VerificationReport(passed, blocks, host.edge_count, histogram, violations, None, record.id)
