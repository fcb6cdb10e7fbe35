"""Necessary congruence conditions for G-designs and the ingredient ledger.

For a d-regular graph G with e edges, a G-design of order n needs

* ``d | n - 1``: every vertex has degree n-1 in K_n, consumed d at a time, and
* ``2e | n(n-1)``: the block count n(n-1)/2e is an integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Iterable

from .catalog import SNARK_COUNT
from .design import DesignRecord, VerificationReport, verify_design
from .host import host_id


class InconsistentParams(ValueError):
    pass


@dataclass(frozen=True)
class DesignParams:
    v: int
    e: int
    d: int

    def __post_init__(self):
        if min(self.v, self.e, self.d) < 1 or 2 * self.e != self.d * self.v:
            raise InconsistentParams(f"2e = {2 * self.e} but d*v = {self.d * self.v}")


@dataclass(frozen=True)
class ResidueSpectrum:
    modulus: int
    residues: tuple[int, ...]
    caveats: tuple[str, ...] = ()

    def __contains__(self, n: int) -> bool:
        return n % self.modulus in self.residues

    def expand(self, modulus: int) -> set[int]:
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        return {r for r in range(modulus) if r % self.modulus in self.residues}

    def __str__(self):
        text = f"mod {self.modulus}: " + ", ".join(str(r) for r in self.residues)
        for c in self.caveats:
            text += f"  [{c}]"
        return text


# Existence exceptions are facts about designs, not congruences; shown alongside.
KNOWN_CAVEATS = {
    (20, 30, 3): ("n != 16: no design of order 16 exists",),
}


def necessary(n: int, p: DesignParams) -> bool:
    return (n - 1) % p.d == 0 and (n * (n - 1)) % (2 * p.e) == 0


def raw_residues(p: DesignParams) -> tuple[int, set[int]]:
    period = lcm(2 * p.e, p.d)
    return period, {n for n in range(period) if necessary(n, p)}


def minimize_modulus(period: int, residues: set[int]) -> tuple[int, tuple[int, ...]]:
    for m in range(1, period + 1):
        if period % m:
            continue
        reduced = {r % m for r in residues}
        if {r for r in range(period) if r % m in reduced} == residues:
            return m, tuple(sorted(reduced))
    raise AssertionError("unreachable: period itself always works")


def admissible_residues(p: DesignParams | tuple) -> ResidueSpectrum:
    if not isinstance(p, DesignParams):
        p = DesignParams(*p)
    period, residues = raw_residues(p)
    m, reduced = minimize_modulus(period, residues)
    return ResidueSpectrum(m, reduced, KNOWN_CAVEATS.get((p.v, p.e, p.d), ()))


# --- ingredient ledger ----------------------------------------------------

INGREDIENTS = ("k64", "k73", "k136", "k145", "k12x3", "k24-24-15", "k72-72-63", "k24x4", "k24x3-21")
SNARK24 = DesignParams(24, 36, 3)


@dataclass
class SlotStatus:
    state: str  # "Verified" | "Missing" | "Failed"
    report: VerificationReport | None = None

    def __str__(self):
        return self.state


@dataclass
class LedgerRow:
    snark: int
    slots: dict[str, SlotStatus] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return all(s.state == "Verified" for s in self.slots.values())


def _index(db: Iterable) -> dict[tuple[int, str], list]:
    """Group ``DesignRecord`` or ``(record, report)`` entries by (snark, host id)."""
    out: dict[tuple[int, str], list] = {}
    for item in db:
        rec, rep = item if isinstance(item, tuple) else (item, None)
        out.setdefault((rec.snark, host_id(rec.host)), []).append((rec, rep))
    return out


def ingredient_status(snark: int, db, _indexed=None) -> LedgerRow:
    indexed = _indexed if _indexed is not None else _index(db)
    row = LedgerRow(snark)
    for slot in INGREDIENTS:
        entries = indexed.get((snark, slot), [])
        if not entries:
            row.slots[slot] = SlotStatus("Missing")
            continue
        status = SlotStatus("Failed")
        for rec, rep in entries:
            rep = rep if rep is not None else verify_design(rec)
            if rep.passed:
                status = SlotStatus("Verified", rep)
                break
            status = SlotStatus("Failed", rep)
        row.slots[slot] = status
    return row


@dataclass
class TheoremCheck:
    passed: bool
    rows: dict[int, LedgerRow]
    spectrum: ResidueSpectrum
    failures: list[str]

    def statement(self) -> str:
        if self.passed:
            return (
                f"All {SNARK_COUNT} snarks have verified designs of orders 64, 73, 136, 145 and decompositions "
                f"of the five multipartite hosts; necessary condition n in {{{', '.join(map(str, self.spectrum.residues))}}} "
                f"mod {self.spectrum.modulus}. Designs of order n exist iff n = 1 or 64 (mod 72)."
            )
        return "theorem check FAILED: " + "; ".join(self.failures[:10])


def theorem_check(db, snarks: Iterable[int] | None = None) -> TheoremCheck:
    entries = list(db)
    indexed = _index(entries)
    wanted = list(range(1, SNARK_COUNT + 1))
    present = sorted({k for k, _ in indexed}) if snarks is None else sorted(snarks)
    rows = {k: ingredient_status(k, entries, indexed) for k in wanted}
    failures = []
    for k in wanted:
        if k not in present:
            failures.append(f"G{k}: snark absent")
        for slot, st in rows[k].slots.items():
            if st.state != "Verified":
                failures.append(f"G{k} {slot}: {st.state}")
    spec = admissible_residues(SNARK24)
    if (spec.modulus, spec.residues) != (72, (1, 64)):
        failures.append(f"spectrum mismatch: {spec}")
    return TheoremCheck(not failures, rows, spec, failures)
