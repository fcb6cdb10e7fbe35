"""Simulated-annealing search for base blocks under a fixed action plan.

The state is one 24-tuple of host vertices per planned base block.  The cost
counts excess coverage plus a penalty of 36 for every snark edge that a
developed block places on a host non-edge; under edge-count balance, cost 0
is exactly a decomposition.  Moves change a single coordinate, and only the
edges at that snark vertex are re-developed.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .design import BaseBlock, DesignRecord, PiecewiseModularMap, VerificationReport, verify_design
from .graph import LabeledGraph
from .host import HostGraph, host_id

PENALTY = 36


class PlanImbalance(ValueError):
    pass


class Exhausted(Exception):
    """Budget spent without reaching cost 0."""

    def __init__(self, best_cost, best, evaluations):
        super().__init__(f"search exhausted after {evaluations} evaluations, best cost {best_cost}")
        self.best_cost = best_cost
        self.best = best
        self.evaluations = evaluations


@dataclass(frozen=True)
class Schedule:
    initial_temperature: float = 3.0
    cooling: float = 0.9995
    batch: int = 100  # accepted moves per cooling step
    restart_after: int = 2_000  # consecutive non-improving moves


@dataclass(frozen=True)
class Candidate:
    tuples: tuple[tuple[int, ...], ...]

    def replace(self, block: int, pos: int, vertex: int) -> "Candidate":
        t = list(self.tuples[block])
        t[pos] = vertex
        tuples = list(self.tuples)
        tuples[block] = tuple(t)
        return Candidate(tuple(tuples))


@dataclass
class SearchSpec:
    snark: LabeledGraph
    host: HostGraph
    action_plan: list[PiecewiseModularMap]
    budget: int = 1_000_000
    seed: int = 0
    schedule: Schedule = field(default_factory=Schedule)
    initial: Candidate | None = None
    snark_id: int = 0

    def __post_init__(self):
        total = sum(m.order for m in self.action_plan) * len(self.snark.edges)
        if total != self.host.edge_count:
            raise PlanImbalance(
                f"plan develops {sum(m.order for m in self.action_plan)} blocks "
                f"({total} edges) but the host has {self.host.edge_count} edges"
            )
        for m in self.action_plan:
            if m.domain_size != self.host.vertex_count:
                raise PlanImbalance(f"map {m.name!r} acts on {m.domain_size} vertices, host has {self.host.vertex_count}")
        if self.initial is not None and len(self.initial.tuples) != len(self.action_plan):
            raise PlanImbalance("initial candidate does not match the action plan")


@dataclass
class SearchResult:
    candidate: Candidate
    record: DesignRecord
    report: VerificationReport
    evaluations: int
    restarts: int
    worker: int = 0


def to_record(c: Candidate, spec: SearchSpec, rid: str | None = None) -> DesignRecord:
    names: dict[tuple, PiecewiseModularMap] = {}
    blocks = []
    for verts, m in zip(c.tuples, spec.action_plan):
        key = (m.segments, m.fixed_points)
        if key not in names:
            taken = {x.name for x in names.values()}
            name = m.name if m.name and m.name not in taken else f"m{len(names) + 1}"
            names[key] = PiecewiseModularMap(m.segments, m.fixed_points, m.domain_size, name)
        blocks.append(BaseBlock(tuple(verts), names[key]))
    rid = rid or f"g{spec.snark_id:02d}-{host_id(spec.host)}-search"
    return DesignRecord(rid, spec.snark_id, spec.host, blocks)


def cost_of(c: Candidate, spec: SearchSpec) -> int:
    host, g = spec.host, spec.snark
    ends = np.asarray(g.edges, dtype=np.int64)
    counts = np.zeros(host.edge_count, dtype=np.int64)
    illegal = 0
    for verts, m in zip(c.tuples, spec.action_plan):
        developed = m.powers()[:, np.asarray(verts, dtype=np.int64)]
        idx = host.index_matrix[developed[:, ends[:, 0]], developed[:, ends[:, 1]]]
        illegal += int((idx < 0).sum())
        counts += np.bincount(idx[idx >= 0], minlength=counts.size)
    return int(np.maximum(counts - 1, 0).sum()) + PENALTY * illegal


def propose_move(c: Candidate, rng: random.Random, vertex_count: int) -> tuple[Candidate, tuple[int, int, int]]:
    """Replace one random coordinate with a random vertex absent from that tuple."""
    b = rng.randrange(len(c.tuples))
    t = c.tuples[b]
    pos = rng.randrange(len(t))
    present = set(t)
    while True:
        v = rng.randrange(vertex_count)
        if v not in present:
            break
    return c.replace(b, pos, v), (b, pos, v)


def random_candidate(spec: SearchSpec, rng: random.Random) -> Candidate:
    k = spec.snark.vertex_count
    return Candidate(tuple(tuple(rng.sample(range(spec.host.vertex_count), k)) for _ in spec.action_plan))


class _State:
    """Mutable coverage state supporting single-coordinate updates."""

    def __init__(self, spec: SearchSpec, c: Candidate):
        self.spec = spec
        self.nbrs = spec.snark.adjacency
        self.powers = [m.powers().tolist() for m in spec.action_plan]
        self.index = spec.host.index_matrix.tolist()
        self.load(c)

    def load(self, c: Candidate) -> None:
        self.tuples = [list(t) for t in c.tuples]
        self.cov = [0] * self.spec.host.edge_count
        self.over = 0
        self.illegal = 0
        for b, t in enumerate(self.tuples):
            for P in self.powers[b]:
                for i, j in self.spec.snark.edges:
                    self._add(P[t[i]], P[t[j]], 1)

    @property
    def cost(self) -> int:
        return self.over + PENALTY * self.illegal

    def candidate(self) -> Candidate:
        return Candidate(tuple(tuple(t) for t in self.tuples))

    def _add(self, u, v, sign):
        k = self.index[u][v]
        if k < 0:
            self.illegal += sign
            return
        cov = self.cov
        if sign > 0:
            if cov[k] >= 1:
                self.over += 1
            cov[k] += 1
        else:
            cov[k] -= 1
            if cov[k] >= 1:
                self.over -= 1

    def set(self, b: int, pos: int, v: int) -> int:
        """Move coordinate ``pos`` of block ``b`` to ``v``; return the old vertex."""
        t = self.tuples[b]
        old = t[pos]
        nb = [t[q] for q in self.nbrs[pos]]
        index, cov = self.index, self.cov
        over = illegal = 0
        for P in self.powers[b]:
            row_old, row_new = index[P[old]], index[P[v]]
            for w in nb:
                pw = P[w]
                k = row_old[pw]
                if k < 0:
                    illegal -= 1
                else:
                    cov[k] -= 1
                    if cov[k] >= 1:
                        over -= 1
                k = row_new[pw]
                if k < 0:
                    illegal += 1
                else:
                    if cov[k] >= 1:
                        over += 1
                    cov[k] += 1
        self.over += over
        self.illegal += illegal
        t[pos] = v
        return old


def _anneal(spec: SearchSpec, rng: random.Random, worker: int = 0) -> SearchResult:
    sched = spec.schedule
    n = spec.host.vertex_count
    start = spec.initial if spec.initial is not None else random_candidate(spec, rng)
    state = _State(spec, start)
    cost = state.cost
    best_cost, best = cost, state.candidate()
    temp = sched.initial_temperature
    accepted = 0
    stale = 0
    restarts = 0
    evals = 0
    nblocks = len(state.tuples)
    size = spec.snark.vertex_count
    while cost > 0 and evals < spec.budget:
        evals += 1
        b = rng.randrange(nblocks)
        t = state.tuples[b]
        pos = rng.randrange(size)
        while True:
            v = rng.randrange(n)
            if v not in t:
                break
        old = state.set(b, pos, v)
        new_cost = state.cost
        delta = new_cost - cost
        if delta <= 0 or rng.random() < math.exp(-delta / temp):
            cost = new_cost
            accepted += 1
            if accepted % sched.batch == 0:
                temp *= sched.cooling
        else:
            state.set(b, pos, old)
        if cost < best_cost:
            best_cost, best = cost, state.candidate()
            stale = 0
        else:
            stale += 1
            if stale >= sched.restart_after:
                restarts += 1
                state.load(spec.initial if spec.initial is not None else random_candidate(spec, rng))
                cost = state.cost
                temp = sched.initial_temperature
                stale = 0
    if cost > 0:
        raise Exhausted(best_cost, best, evals)
    found = state.candidate()
    record = to_record(found, spec)
    # independent re-check against the snark itself, not the search's bookkeeping
    report = verify_design(replace(record, snark=spec.snark))
    if not report.passed:
        # cost bookkeeping disagreed with the verifier; never report a success
        raise Exhausted(best_cost, found, evals)
    return SearchResult(found, record, report, evals, restarts, worker)


def worker_seeds(seed: int, jobs: int) -> list[int]:
    """Independent per-worker seeds derived from one root seed."""
    children = np.random.SeedSequence(seed).spawn(jobs)
    return [int(c.generate_state(2, dtype=np.uint32).view(np.uint64)[0]) for c in children]


def _worker(args):
    spec, seed, worker = args
    try:
        return _anneal(spec, random.Random(seed), worker)
    except Exhausted as exc:
        return exc


def search(spec: SearchSpec, jobs: int = 1) -> SearchResult:
    """Anneal from ``spec.initial`` (or random tuples) until cost 0 or budget.

    ``jobs`` independent workers run on disjoint streams derived from
    ``spec.seed``; the lowest-numbered successful worker wins.  Raises
    :class:`Exhausted` with the best state seen if no worker succeeds.
    """
    seeds = worker_seeds(spec.seed, jobs)
    if jobs == 1:
        outcomes = [_worker((spec, seeds[0], 0))]
    else:
        with ProcessPoolExecutor(jobs) as pool:
            outcomes = list(pool.map(_worker, [(spec, s, i) for i, s in enumerate(seeds)]))
    for out in outcomes:
        if isinstance(out, SearchResult):
            return out
    best = min(outcomes, key=lambda e: e.best_cost)
    raise Exhausted(best.best_cost, best.best, sum(e.evaluations for e in outcomes))
