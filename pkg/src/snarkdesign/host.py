"""Host graphs: complete graphs (optionally with a point at infinity) and
complete multipartite graphs described by a partition layout."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


class HostError(ValueError):
    pass


class MalformedLayout(HostError):
    pass


class NotAHostEdge(HostError):
    pass


class UnknownVertex(HostError):
    pass


@dataclass(frozen=True)
class PartitionLayout:
    """Partition of ``0..n-1`` given as ``(base, length, stride, part)`` runs.

    A run puts ``base, base+stride, ..., base+(length-1)*stride`` into ``part``.
    Residue classes and striped-plus-tail layouts are both sequences of runs.
    """

    vertex_count: int
    runs: tuple[tuple[int, int, int, int], ...]
    name: str = ""

    @classmethod
    def residue_classes(cls, modulus: int, vertex_count: int, name: str = "") -> "PartitionLayout":
        if modulus < 1 or vertex_count % modulus:
            raise MalformedLayout(f"{vertex_count} vertices do not split into {modulus} residue classes")
        k = vertex_count // modulus
        return cls(vertex_count, tuple((i, k, modulus, i) for i in range(modulus)), name)

    @classmethod
    def striped_plus_tail(cls, stripes: int, stripe_size: int, tail: int, name: str = "") -> "PartitionLayout":
        prefix = stripes * stripe_size
        runs = tuple((i, stripe_size, stripes, i) for i in range(stripes))
        runs += ((prefix, tail, 1, stripes),)
        return cls(prefix + tail, runs, name)

    @classmethod
    def segments(cls, segs, name: str = "") -> "PartitionLayout":
        """Explicit contiguous ``(base, length, part)`` segments."""
        runs = tuple((b, n, 1, p) for b, n, p in segs)
        total = sum(n for _, n, _ in segs)
        return cls(total, runs, name)

    def part_of(self) -> list[int]:
        part = [-1] * self.vertex_count
        for base, length, stride, p in self.runs:
            if length < 1 or stride < 1 or p < 0:
                raise MalformedLayout(f"bad run {(base, length, stride, p)}")
            for j in range(length):
                x = base + j * stride
                if not 0 <= x < self.vertex_count:
                    raise MalformedLayout(f"vertex {x} outside 0..{self.vertex_count - 1}")
                if part[x] >= 0:
                    raise MalformedLayout(f"vertex {x} assigned twice")
                part[x] = p
        if -1 in part:
            raise MalformedLayout(f"vertex {part.index(-1)} not assigned")
        return part


# Identifiers used in design files.
LAYOUTS: dict[str, PartitionLayout] = {
    "k12x3": PartitionLayout.residue_classes(3, 36, "k12x3"),
    "k24-24-15": PartitionLayout.striped_plus_tail(2, 24, 15, "k24-24-15"),
    "k72-72-63": PartitionLayout.striped_plus_tail(2, 72, 63, "k72-72-63"),
    "k24x4": PartitionLayout.residue_classes(4, 96, "k24x4"),
    "k24x3-21": PartitionLayout.striped_plus_tail(3, 24, 21, "k24x3-21"),
}

LAYOUT_SIGNATURES = {
    "k12x3": (12, 12, 12),
    "k24-24-15": (24, 24, 15),
    "k72-72-63": (72, 72, 63),
    "k24x4": (24, 24, 24, 24),
    "k24x3-21": (24, 24, 24, 21),
}


@dataclass(frozen=True)
class HostGraph:
    """Complete or complete multipartite host on vertices ``0..vertex_count-1``.

    With ``infinity`` set, the last vertex ``vertex_count-1`` plays the role of
    the point at infinity; the remaining vertices form ``Z_{vertex_count-1}``.
    """

    kind: str  # "complete" | "multipartite"
    vertex_count: int
    infinity: bool = False
    parts: tuple[int, ...] | None = None
    layout_id: str | None = None

    @property
    def inf(self) -> int | None:
        return self.vertex_count - 1 if self.infinity else None

    @property
    def part_sizes(self) -> tuple[int, ...]:
        if self.parts is None:
            return (1,) * self.vertex_count
        sizes = [0] * (max(self.parts) + 1)
        for p in self.parts:
            sizes[p] += 1
        return tuple(sizes)

    @cached_property
    def edge_count(self) -> int:
        n = self.vertex_count
        if self.kind == "complete":
            return n * (n - 1) // 2
        sizes = self.part_sizes
        return (n * n - sum(s * s for s in sizes)) // 2

    def _check(self, u: int) -> None:
        if not 0 <= u < self.vertex_count:
            raise UnknownVertex(f"vertex {u} not in host of order {self.vertex_count}")

    def contains_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        if u == v:
            return False
        if self.kind == "complete":
            return True
        return self.parts[u] != self.parts[v]

    def edge_index(self, u: int, v: int) -> int:
        if not self.contains_edge(u, v):
            raise NotAHostEdge(f"{{{self.label(u)},{self.label(v)}}} is not a host edge")
        if self.kind == "complete":
            if u > v:
                u, v = v, u
            # edges ordered by larger endpoint: (0,1),(0,2),(1,2),(0,3),...
            return v * (v - 1) // 2 + u
        return int(self.index_matrix[u, v])

    def edge_of_index(self, k: int) -> tuple[int, int]:
        if not 0 <= k < self.edge_count:
            raise NotAHostEdge(f"edge index {k} out of range")
        return self.edge_list[k]

    @cached_property
    def edge_list(self) -> list[tuple[int, int]]:
        n = self.vertex_count
        return [(u, v) for v in range(n) for u in range(v) if self.kind == "complete" or self.parts[u] != self.parts[v]]

    @cached_property
    def index_matrix(self) -> np.ndarray:
        """Dense ``n x n`` table of edge indices, ``-1`` on non-edges."""
        n = self.vertex_count
        m = np.full((n, n), -1, dtype=np.int64)
        for k, (u, v) in enumerate(self.edge_list):
            m[u, v] = m[v, u] = k
        return m

    def label(self, v: int) -> str:
        return "inf" if self.infinity and v == self.vertex_count - 1 else str(v)

    def describe(self) -> str:
        if self.kind == "complete":
            return f"complete {self.vertex_count}" + (" inf" if self.infinity else "")
        return f"multipartite {self.layout_id}"


def make_complete(n: int, infinity: bool = False) -> HostGraph:
    if n < 1:
        raise HostError("complete host needs at least one vertex")
    if infinity and n < 2:
        raise HostError("a host with infinity needs at least two vertices")
    return HostGraph("complete", n, infinity)


def make_multipartite(layout: PartitionLayout | str) -> HostGraph:
    if isinstance(layout, str):
        try:
            layout = LAYOUTS[layout]
        except KeyError:
            raise MalformedLayout(f"unknown layout id {layout!r}") from None
    parts = layout.part_of()
    host = HostGraph("multipartite", layout.vertex_count, False, tuple(parts), layout.name or None)
    expected = LAYOUT_SIGNATURES.get(layout.name)
    if expected is not None and host.part_sizes != expected:
        raise MalformedLayout(f"{layout.name}: parts {host.part_sizes}, declared {expected}")
    return host


def host_id(host: HostGraph) -> str:
    """Short identifier used for data directories (``k73``, ``k12x3``, ...)."""
    if host.kind == "complete":
        return f"k{host.vertex_count}"
    return host.layout_id
