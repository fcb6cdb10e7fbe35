import random

import pytest

from conftest import HOST_IDS, shipped
from snarkdesign.catalog import get_graph
from snarkdesign.design import make_map, verify_design
from snarkdesign.search import (
    PENALTY,
    Candidate,
    Exhausted,
    PlanImbalance,
    SearchSpec,
    _State,
    cost_of,
    propose_move,
    random_candidate,
    search,
    to_record,
    worker_seeds,
)


def spec_from(rec, **kw):
    return SearchSpec(
        get_graph(rec.snark),
        rec.host,
        [b.map for b in rec.blocks],
        initial=Candidate(tuple(b.vertices for b in rec.blocks)),
        snark_id=rec.snark,
        **kw,
    )


def corrupt(c, n, rng, vertex_count):
    for _ in range(n):
        c, _ = propose_move(c, rng, vertex_count)
    return c


@pytest.mark.parametrize("host_id", HOST_IDS)
def test_cost_zero_on_shipped(host_id):
    for k in (1, 20):
        spec = spec_from(shipped(host_id, k))
        assert cost_of(spec.initial, spec) == 0


def test_cost_positive_after_mutation():
    rec = shipped("k73", 1)
    spec = spec_from(rec)
    verts = list(rec.blocks[0].vertices)
    verts[verts.index(70)] = 69
    c = Candidate((tuple(verts),))
    assert cost_of(c, spec) >= 1
    assert not verify_design(to_record(c, spec)).passed


def test_cost_penalises_same_part_edges():
    rec = shipped("k12x3", 1)
    spec = spec_from(rec)
    verts = list(rec.blocks[0].vertices)
    verts[1] = next(v for v in range(0, 36, 3) if v not in verts)
    assert cost_of(Candidate((tuple(verts),)), spec) >= PENALTY


def test_cost_zero_iff_verifies_on_mutants():
    rng = random.Random(4)
    for host_id in ("k12x3", "k24-24-15", "k64"):
        rec = shipped(host_id, rng.randrange(1, 39))
        spec = spec_from(rec)
        for _ in range(20):
            c = corrupt(spec.initial, rng.randrange(0, 3), rng, rec.host.vertex_count)
            ok = verify_design(to_record(c, spec)).passed
            assert (cost_of(c, spec) == 0) == ok


def test_propose_move_changes_one_coordinate():
    spec = spec_from(shipped("k12x3", 2))
    rng = random.Random(0)
    c = spec.initial
    for _ in range(10_000):
        nxt, (b, pos, v) = propose_move(c, rng, 36)
        diff = [i for i in range(24) if nxt.tuples[0][i] != c.tuples[0][i]]
        assert diff == [pos] and nxt.tuples[0][pos] == v
        assert len(set(nxt.tuples[0])) == 24 and all(0 <= x < 36 for x in nxt.tuples[0])
        c = nxt


def test_move_and_inverse_restore_cost():
    spec = spec_from(shipped("k12x3", 3))
    rng = random.Random(1)
    base = cost_of(spec.initial, spec)
    nxt, (b, pos, v) = propose_move(spec.initial, rng, 36)
    back = nxt.replace(b, pos, spec.initial.tuples[b][pos])
    assert back == spec.initial and cost_of(back, spec) == base


@pytest.mark.parametrize("host_id", ["k12x3", "k64", "k24-24-15", "k136"])
def test_incremental_matches_full(host_id):
    rec = shipped(host_id, 7)
    spec = spec_from(rec)
    rng = random.Random(host_id)
    state = _State(spec, spec.initial)
    c = spec.initial
    for _ in range(1000 if host_id == "k12x3" else 200):
        c, (b, pos, v) = propose_move(c, rng, rec.host.vertex_count)
        state.set(b, pos, v)
        assert state.candidate() == c
        assert state.cost == cost_of(c, spec)


def test_plan_imbalance_rejected():
    rec = shipped("k12x3", 1)
    wrong = make_map([(0, 36, 1)], [], rec.host)  # order 36: 36 blocks, 1296 edges
    with pytest.raises(PlanImbalance):
        SearchSpec(get_graph(1), rec.host, [wrong])
    with pytest.raises(PlanImbalance):
        SearchSpec(get_graph(1), rec.host, [rec.blocks[0].map] * 2)


def test_search_returns_immediately_on_solution():
    spec = spec_from(shipped("k24x4", 9))
    result = search(spec)
    assert result.evaluations == 0 and result.report.passed


def test_search_is_reproducible():
    rec = shipped("k12x3", 5)
    spec = spec_from(rec, budget=20_000, seed=42)
    rng = random.Random(9)
    spec.initial = corrupt(spec.initial, 2, rng, 36)

    def run():
        try:
            r = search(spec)
            return ("ok", r.evaluations, r.candidate)
        except Exhausted as e:
            return ("exhausted", e.evaluations, e.best_cost, e.best)

    assert run() == run()


def test_worker_seeds_distinct_and_stable():
    a = worker_seeds(7, 4)
    assert a == worker_seeds(7, 4)
    assert len(set(a)) == 4
    assert worker_seeds(7, 1) != worker_seeds(8, 1)


def test_fresh_start_is_sound():
    rec = shipped("k12x3", 1)
    spec = SearchSpec(get_graph(1), rec.host, [rec.blocks[0].map], budget=30_000, seed=3, snark_id=1)
    start = random_candidate(spec, random.Random(0))
    assert all(len(set(t)) == 24 for t in start.tuples)
    try:
        result = search(spec)
    except Exhausted as e:
        assert e.best_cost > 0 and e.evaluations == 30_000
    else:
        assert verify_design(result.record).passed


def test_small_repair_succeeds():
    rec = shipped("k12x3", 10)
    spec = spec_from(rec, budget=200_000, seed=1)
    spec.initial = corrupt(spec.initial, 1, random.Random(2), 36)
    result = search(spec)
    assert result.report.passed
    assert verify_design(result.record).passed
