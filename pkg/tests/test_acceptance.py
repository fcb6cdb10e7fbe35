"""Exit criteria for the package; each test records one PASS/FAIL summary line."""

import json
import random
import time
from dataclasses import replace
from pathlib import Path

import pytest

from conftest import DESIGNS, design_files, record_criterion
from oracles import shortest_cycle_by_enumeration
from snarkdesign.catalog import catalog_integrity, data_dir, get_graph, petersen, snark_report
from snarkdesign.cli import run
from snarkdesign.design import BaseBlock, verify_design
from snarkdesign.formats import REPORT_FIELDS, emit_design, emit_graph, emit_report, parse_design, parse_graph
from snarkdesign.host import host_id
from snarkdesign.search import Candidate, SearchSpec, _State, cost_of, propose_move, search, to_record
from snarkdesign.spectrum import admissible_residues

EXPECTED_BLOCKS = {
    "k64": 56, "k73": 73, "k136": 255, "k145": 290,
    "k12x3": 12, "k24-24-15": 36, "k72-72-63": 396, "k24x4": 96, "k24x3-21": 90,
}


def test_c1_full_reverification(all_records):
    t0 = time.perf_counter()
    reports = [verify_design(r) for r in all_records]
    single = time.perf_counter() - t0
    exact = [r.passed and r.histogram == {1: r.edge_count} for r in reports]

    t0 = time.perf_counter()
    import io

    out = io.StringIO()
    code = run(["verify-all", str(DESIGNS), "--jobs", "8"], out=out)
    parallel = time.perf_counter() - t0

    ok = len(reports) == 342 and all(exact) and single < 300 and code == 0 and parallel < 60
    record_criterion("1 full re-verification of 342 records", ok, f"{sum(exact)}/342 exact, {single:.1f}s single, {parallel:.1f}s with 8 workers")
    assert len(reports) == 342
    assert all(exact)
    assert single < 300 and parallel < 60 and code == 0


def test_c2_block_count_identities(all_records):
    bad = []
    for r in all_records:
        hid = host_id(r.host)
        rep = verify_design(r)
        if not (r.developed_count() == rep.developed_block_count == EXPECTED_BLOCKS[hid] == r.host.edge_count // 36):
            bad.append(r.id)
    seen = {host_id(r.host) for r in all_records}
    ok = not bad and seen == set(EXPECTED_BLOCKS)
    record_criterion("2 block-count identities", ok, "56, 73, 255, 290, 12, 36, 396, 96, 90")
    assert not bad
    assert seen == set(EXPECTED_BLOCKS)


def test_c3_catalog_certification():
    t0 = time.perf_counter()
    check = catalog_integrity()
    girth_ok = all(
        check.reports and check.reports[k].girth == shortest_cycle_by_enumeration(24, list(get_graph(k).edges), 8) == 5
        for k in range(1, 39)
    )
    pet = snark_report(petersen()).is_nontrivial_snark
    elapsed = time.perf_counter() - t0
    ok = check.passed and girth_ok and pet and elapsed < 600
    record_criterion("3 catalog certification (38 snarks, 703 pairs, Petersen)", ok, f"{elapsed:.1f}s")
    assert check.passed, check.failure
    assert girth_ok and pet
    assert elapsed < 600


@pytest.mark.parametrize("dummy", [None])
def test_c4_spectrum_reproduction(dummy):
    cases = {
        (24, 36, 3): (72, (1, 64)),
        (10, 15, 3): (15, (1, 10)),
        (18, 27, 3): (27, (1,)),
        (20, 30, 3): (60, (1, 16, 25, 40)),
        (22, 33, 3): (33, (1, 22)),
    }
    got = {p: (s.modulus, s.residues) for p, s in ((p, admissible_residues(p)) for p in cases)}
    ok = got == cases
    record_criterion("4 spectrum reproduction", ok)
    assert got == cases


def _mutate(rec, rng):
    b = rng.randrange(len(rec.blocks))
    block = rec.blocks[b]
    verts = list(block.vertices)
    pos = rng.randrange(len(verts))
    verts[pos] = rng.choice([v for v in range(rec.host.vertex_count) if v not in verts])
    blocks = list(rec.blocks)
    blocks[b] = BaseBlock(tuple(verts), block.map)
    return replace(rec, blocks=blocks)


def test_c5_perturbation_sensitivity(all_records):
    rng = random.Random(2024)
    false_passes = 0
    for _ in range(100):
        rec = _mutate(rng.choice(all_records), rng)
        rep = verify_design(rec)
        if rep.passed or rep.histogram == {1: rep.edge_count}:
            false_passes += 1
    record_criterion("5 perturbation sensitivity (100 mutations)", false_passes == 0, f"{false_passes} false passes")
    assert false_passes == 0


def _spec(rec, **kw):
    return SearchSpec(
        get_graph(rec.snark), rec.host, [b.map for b in rec.blocks],
        initial=Candidate(tuple(b.vertices for b in rec.blocks)), snark_id=rec.snark, **kw,
    )


def test_c6_search_soundness_and_repair(all_records):
    # cost 0 exactly on verifying records, positive on mutants
    rng = random.Random(6)
    zero_ok = all(cost_of(s.initial, s) == 0 for s in map(_spec, all_records))
    mutants_ok = True
    for _ in range(50):
        rec = _mutate(rng.choice(all_records), rng)
        s = _spec(rec)
        mutants_ok &= (cost_of(s.initial, s) == 0) == verify_design(rec).passed

    # differential vs full cost on 10^3 random moves
    rec = next(r for r in all_records if r.id == "g01-k12x3")
    s = _spec(rec)
    state = _State(s, s.initial)
    c = s.initial
    diff_ok = True
    for _ in range(1000):
        c, (b, pos, v) = propose_move(c, rng, rec.host.vertex_count)
        state.set(b, pos, v)
        diff_ok &= state.cost == cost_of(c, s)

    # repair: 3 corrupted coordinates, 10^6 evaluations, 5 fixed seeds
    wins = 0
    evals = []
    for seed in range(5):
        r = random.Random(seed * 7 + 1)
        t = list(rec.blocks[0].vertices)
        for _ in range(3):
            pos = r.randrange(24)
            t[pos] = r.choice([x for x in range(36) if x not in t])
        spec = _spec(rec, budget=10**6, seed=seed)
        spec.initial = Candidate((tuple(t),))
        try:
            res = search(spec)
        except Exception:
            evals.append(None)
            continue
        if verify_design(to_record(res.candidate, spec)).passed:
            wins += 1
        evals.append(res.evaluations)
    ok = zero_ok and mutants_ok and diff_ok and wins >= 4
    record_criterion("6 search soundness + repair", ok, f"repair {wins}/5 seeds, evaluations {evals}")
    assert zero_ok and mutants_ok and diff_ok
    assert wins >= 4


def test_c7_format_round_trip():
    bad = []
    files = design_files()
    for p in files:
        text = p.read_text()
        first = parse_design(text)
        again = parse_design(emit_design(first))
        if emit_design(again) != emit_design(first) or emit_design(first) != text:
            bad.append(p.name)
    graphs = sorted((Path(str(data_dir())) / "catalog").glob("*.graph"))
    for p in graphs:
        name, g = parse_graph(p.read_text())
        name2, g2 = parse_graph(emit_graph(name, g))
        if (name, g) != (name2, g2) or emit_graph(name, g) != p.read_text():
            bad.append(p.name)
    obj = json.loads(emit_report(verify_design(parse_design(files[0].read_text())), "machine"))
    schema_ok = all(f in obj for f in REPORT_FIELDS)
    ok = not bad and schema_ok and len(files) == 342 and len(graphs) == 39
    record_criterion("7 format round-trip", ok, f"{len(files)} designs, {len(graphs)} graphs")
    assert not bad
    assert schema_ok
