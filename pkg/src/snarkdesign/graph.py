"""Simple labelled graphs and the predicates used to certify snarks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator


class GraphError(ValueError):
    pass


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class OddVertexCount(GraphError):
    pass


class PreconditionViolated(GraphError):
    pass


Edge = tuple[int, int]


@dataclass(frozen=True)
class LabeledGraph:
    """Graph on vertices ``0..vertex_count-1`` with a sorted, normalised edge list.

    Build instances through :func:`make_graph`, which enforces the invariants.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    _adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def relabel(self, perm) -> "LabeledGraph":
        """Return the image graph under the vertex bijection ``v -> perm[v]``."""
        return make_graph(self.vertex_count, [(perm[u], perm[v]) for u, v in self.edges])

    def without_edges(self, removed) -> "LabeledGraph":
        drop = {normalize_edge(u, v) for u, v in removed}
        return LabeledGraph(self.vertex_count, tuple(e for e in self.edges if e not in drop))


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def make_graph(vertex_count: int, edges) -> LabeledGraph:
    if vertex_count < 0:
        raise VertexOutOfRange(f"negative vertex count {vertex_count}")
    seen = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise VertexOutOfRange(f"edge {{{u},{v}}} outside 0..{vertex_count - 1}")
        e = normalize_edge(u, v)
        if e in seen:
            raise DuplicateEdge(f"duplicate edge {e}")
        seen.add(e)
    return LabeledGraph(vertex_count, tuple(sorted(seen)))


def degree_profile(g: LabeledGraph) -> list[int]:
    return [len(a) for a in g.adjacency]


def is_regular(g: LabeledGraph, d: int) -> bool:
    return all(len(a) == d for a in g.adjacency)


def _component_labels(g: LabeledGraph) -> list[int]:
    label = [-1] * g.vertex_count
    c = 0
    for s in range(g.vertex_count):
        if label[s] >= 0:
            continue
        label[s] = c
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.neighbors(x):
                if label[y] < 0:
                    label[y] = c
                    stack.append(y)
        c += 1
    return label


def connected_components(g: LabeledGraph) -> list[list[int]]:
    label = _component_labels(g)
    comps: dict[int, list[int]] = {}
    for v, c in enumerate(label):
        comps.setdefault(c, []).append(v)
    return list(comps.values())


def is_connected(g: LabeledGraph) -> bool:
    if g.vertex_count == 0:
        return True
    return max(_component_labels(g)) == 0


def find_bridges(g: LabeledGraph) -> list[Edge]:
    """Bridges via iterative low-link DFS, returned sorted."""
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    bridges = []
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # (vertex, parent, neighbor iterator)
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent:
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    bridges.append(normalize_edge(parent, v))
    return sorted(bridges)


def girth(g: LabeledGraph) -> int | None:
    """Length of a shortest cycle, or ``None`` for a forest."""
    best = None
    n = g.vertex_count
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if best is not None and 2 * dist[x] + 1 >= best:
                break
            for y in g.neighbors(x):
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x]:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    return best


def enumerate_perfect_matchings(g: LabeledGraph) -> Iterator[tuple[Edge, ...]]:
    """Yield every perfect matching once, always matching the lowest free vertex."""
    n = g.vertex_count
    if n % 2:
        raise OddVertexCount(f"{n} vertices")
    matched = [False] * n
    chosen: list[Edge] = []

    def rec(start):
        v = start
        while v < n and matched[v]:
            v += 1
        if v == n:
            yield tuple(chosen)
            return
        matched[v] = True
        for w in g.neighbors(v):
            if not matched[w]:
                matched[w] = True
                chosen.append(normalize_edge(v, w))
                yield from rec(v + 1)
                chosen.pop()
                matched[w] = False
        matched[v] = False

    yield from rec(0)


def _all_cycles_even(g: LabeledGraph, removed: set[Edge]) -> bool:
    # remainder is 2-regular: walk each cycle and check its length
    n = g.vertex_count
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        prev, cur = -1, s
        while True:
            seen[cur] = True
            length += 1
            nxt = None
            for w in g.neighbors(cur):
                if w != prev and normalize_edge(cur, w) not in removed:
                    nxt = w
                    break
            if nxt is None or nxt == s:
                break
            prev, cur = cur, nxt
        if length % 2:
            return False
    return True


def chromatic_index_cubic(g: LabeledGraph) -> int:
    """Chromatic index (3 or 4) of a connected bridgeless cubic graph.

    Class 1 iff some perfect matching leaves a union of even cycles.
    """
    if not is_regular(g, 3) or not is_connected(g) or find_bridges(g):
        raise PreconditionViolated("graph must be cubic, connected and bridgeless")
    for m in enumerate_perfect_matchings(g):
        if _all_cycles_even(g, set(m)):
            return 3
    return 4


# --- isomorphism ---------------------------------------------------------


def _distances(g: LabeledGraph) -> list[list[int]]:
    n = g.vertex_count
    out = []
    for s in range(n):
        d = [-1] * n
        d[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in g.neighbors(x):
                if d[y] < 0:
                    d[y] = d[x] + 1
                    q.append(y)
        out.append(d)
    return out


def _signatures(g: LabeledGraph, dist) -> list:
    n = g.vertex_count
    sig = []
    for v in range(n):
        profile = [0] * (n + 1)
        for x in dist[v]:
            profile[x] += 1
        sig.append(tuple(profile))
    for _ in range(n):
        nxt = [(sig[v], tuple(sorted(sig[w] for w in g.neighbors(v)))) for v in range(n)]
        if len(set(nxt)) == len(set(sig)):
            return nxt
        sig = nxt
    return sig


def are_isomorphic(g: LabeledGraph, h: LabeledGraph, witness: bool = False):
    """Decide isomorphism; with ``witness=True`` return ``(flag, mapping)``.

    ``mapping`` is a list with ``mapping[v]`` the image in ``h`` of vertex ``v`` of ``g``.
    """
    result = _isomorphism(g, h)
    if witness:
        return result is not None, result
    return result is not None


def _isomorphism(g: LabeledGraph, h: LabeledGraph):
    n = g.vertex_count
    if n != h.vertex_count or len(g.edges) != len(h.edges):
        return None
    if sorted(degree_profile(g)) != sorted(degree_profile(h)):
        return None
    dg, dh = _distances(g), _distances(h)
    sg, sh = _signatures(g, dg), _signatures(h, dh)
    if sorted(sg) != sorted(sh):
        return None

    by_sig: dict = {}
    for w in range(n):
        by_sig.setdefault(sh[w], []).append(w)

    # search order: BFS from the vertex of rarest signature keeps candidates constrained
    order: list[int] = []
    placed = [False] * n
    for comp_start in sorted(range(n), key=lambda v: len(by_sig[sg[v]])):
        if placed[comp_start]:
            continue
        placed[comp_start] = True
        q = deque([comp_start])
        while q:
            x = q.popleft()
            order.append(x)
            for y in sorted(g.neighbors(x), key=lambda v: len(by_sig[sg[v]])):
                if not placed[y]:
                    placed[y] = True
                    q.append(y)

    fwd = [-1] * n
    used = [False] * n

    def consistent(v, w):
        for u in range(n):
            x = fwd[u]
            if x < 0:
                continue
            if dg[v][u] != dh[w][x]:
                return False
        return True

    def rec(i):
        if i == n:
            return True
        v = order[i]
        for w in by_sig[sg[v]]:
            if used[w] or not consistent(v, w):
                continue
            fwd[v] = w
            used[w] = True
            if rec(i + 1):
                return True
            fwd[v] = -1
            used[w] = False
        return False

    if not rec(0):
        return None
    return fwd


# --- small helpers used by catalog checks and tests -----------------------


def is_forest_component(g: LabeledGraph, comp: list[int]) -> bool:
    members = set(comp)
    m = sum(1 for u, v in g.edges if u in members)
    return m < len(comp)


def disjoint_union(g: LabeledGraph, h: LabeledGraph) -> LabeledGraph:
    off = g.vertex_count
    return make_graph(off + h.vertex_count, list(g.edges) + [(u + off, v + off) for u, v in h.edges])


def cycle_graph(n: int) -> LabeledGraph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> LabeledGraph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> LabeledGraph:
    return make_graph(n, list(combinations(range(n), 2)))
