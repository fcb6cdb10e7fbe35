from dataclasses import replace
from math import lcm

import pytest
from hypothesis import given, strategies as st

from snarkdesign.design import BaseBlock
from snarkdesign.spectrum import (
    INGREDIENTS,
    DesignParams,
    InconsistentParams,
    admissible_residues,
    ingredient_status,
    necessary,
    raw_residues,
    theorem_check,
)


@pytest.mark.parametrize(
    "params, modulus, residues",
    [
        ((24, 36, 3), 72, (1, 64)),
        ((10, 15, 3), 15, (1, 10)),
        ((18, 27, 3), 27, (1,)),
        ((20, 30, 3), 60, (1, 16, 25, 40)),
        ((22, 33, 3), 33, (1, 22)),
    ],
)
def test_published_spectra(params, modulus, residues):
    s = admissible_residues(DesignParams(*params))
    assert (s.modulus, s.residues) == (modulus, residues)


def test_caveat_for_twenty_vertices():
    s = admissible_residues((20, 30, 3))
    assert any("16" in c for c in s.caveats)
    assert admissible_residues((24, 36, 3)).caveats == ()


def test_inconsistent_params():
    with pytest.raises(InconsistentParams):
        DesignParams(24, 35, 3)


def test_ingredient_orders_admissible():
    s = admissible_residues((24, 36, 3))
    assert [n % 72 for n in (64, 73, 136, 145)] == [64, 1, 64, 1]
    assert all(n in s for n in (64, 73, 136, 145))


regular = st.tuples(st.integers(1, 40), st.integers(1, 6)).filter(lambda t: (t[0] * t[1]) % 2 == 0)


@given(regular)
def test_spectrum_is_exact_over_one_period(vd):
    v, d = vd
    p = DesignParams(v, v * d // 2, d)
    s = admissible_residues(p)
    period = lcm(2 * p.e, p.d)
    for n in range(period + 1):
        assert (n in s) == ((n - 1) % d == 0 and (n * (n - 1)) % (2 * p.e) == 0)


@given(regular)
def test_minimised_modulus_re_expands(vd):
    v, d = vd
    p = DesignParams(v, v * d // 2, d)
    period, raw = raw_residues(p)
    s = admissible_residues(p)
    assert period % s.modulus == 0
    assert s.expand(period) == raw
    for m in range(1, s.modulus):
        if s.modulus % m == 0:
            reduced = {r % m for r in raw}
            assert {r for r in range(period) if r % m in reduced} != raw


def test_necessary_examples():
    p = DesignParams(24, 36, 3)
    assert necessary(73, p) and necessary(64, p) and not necessary(72, p)


# --- ledger -----------------------------------------------------------------


@pytest.fixture(scope="module")
def g1_records(all_records):
    return [r for r in all_records if r.snark == 1]


def test_ledger_full(g1_records):
    row = ingredient_status(1, g1_records)
    assert set(row.slots) == set(INGREDIENTS)
    assert all(s.state == "Verified" for s in row.slots.values())
    assert row.complete


def test_ledger_missing(g1_records):
    db = [r for r in g1_records if r.host.vertex_count != 136]
    row = ingredient_status(1, db)
    states = [s.state for s in row.slots.values()]
    assert states.count("Verified") == 8 and row.slots["k136"].state == "Missing"


def test_ledger_failed(g1_records):
    db = []
    for r in g1_records:
        if r.id.endswith("k73"):
            v = list(r.blocks[0].vertices)
            v[0], v[1] = v[1], v[0]
            r = replace(r, blocks=[BaseBlock(tuple(v), r.blocks[0].map)])
        db.append(r)
    row = ingredient_status(1, db)
    assert row.slots["k73"].state == "Failed"
    assert not row.slots["k73"].report.passed


def test_theorem_check_full(all_records):
    check = theorem_check(all_records)
    assert check.passed, check.failures[:3]
    assert "1 or 64 (mod 72)" in check.statement()


def test_theorem_check_removed_record(all_records):
    db = [r for r in all_records if r.id != "g05-k24x4"]
    check = theorem_check(db)
    assert not check.passed
    assert check.failures == ["G5 k24x4: Missing"]


def test_theorem_check_37_snarks(all_records):
    db = [r for r in all_records if r.snark != 38]
    check = theorem_check(db)
    assert not check.passed
    assert "G38: snark absent" in check.failures
