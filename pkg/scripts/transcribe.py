"""Transcribe snark edge lists and base blocks from the LaTeX tables into data files.

Usage: python scripts/transcribe.py SOURCE.tex-or-md [OUT_DATA_DIR]

The source lists edge sets as ``$\\adfGa$: \\{$\\{1,2\\}$, ...\\}`` and base blocks as
``$(\\infty,1,96,...)_{\\adfGa}$``.  Blocks appear in nine consecutive sections,
each introduced by ``Let the vertex set of $K_...$``.
"""

import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from snarkdesign.design import BaseBlock, DesignRecord, make_map  # noqa: E402
from snarkdesign.formats import emit_design, emit_graph  # noqa: E402
from snarkdesign.graph import make_graph  # noqa: E402
from snarkdesign.host import make_complete, make_multipartite  # noqa: E402

LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKL"

# (host id, host factory, [(map name, segments, fix inf, number of blocks or None for the rest)])
SECTIONS = {
    "K_{136}": ("k136", lambda: make_complete(136, True), [("a", [(0, 135, 3)], True, 5), ("b", [(0, 135, 9)], True, None)]),
    "K_{64}": ("k64", lambda: make_complete(64, True), [("a", [(0, 63, 3)], True, 2), ("b", [(0, 63, 9)], True, None)]),
    "K_{73}": ("k73", lambda: make_complete(73), [("a", [(0, 73, 1)], False, None)]),
    "K_{145}": ("k145", lambda: make_complete(145), [("a", [(0, 145, 1)], False, None)]),
    "K_{12,12,12}": ("k12x3", lambda: make_multipartite("k12x3"), [("a", [(0, 36, 3)], False, None)]),
    "K_{24,24,15}": ("k24-24-15", lambda: make_multipartite("k24-24-15"), [("a", [(0, 48, 4), (48, 15, 5)], False, None)]),
    "K_{72,72,63}": (
        "k72-72-63",
        lambda: make_multipartite("k72-72-63"),
        [("a", [(0, 144, 4), (144, 36, 4), (180, 27, 12)], False, None)],
    ),
    "K_{24,24,24,24}": ("k24x4", lambda: make_multipartite("k24x4"), [("a", [(0, 96, 1)], False, None)]),
    "K_{24,24,24,21}": ("k24x3-21", lambda: make_multipartite("k24x3-21"), [("a", [(0, 72, 4), (72, 21, 7)], False, None)]),
}

EDGE_SET = re.compile(r"\$\\adfG(\w)\$:\s*\\\{(.*?)\\\}(?:,|\.|\s*\n)", re.S)
PAIR = re.compile(r"\\\{(\d+),(\d+)\\\}")
BLOCK = re.compile(r"\$\(([^)]*)\)_\{\\adfG(\w)\}\$")
SECTION = re.compile(r"Let the vertex set of \$(K_\{[\d,]+\})\$")


def snark_index(letter):
    return LETTERS.index(letter) + 1


def edge_sets(text):
    head = text[: text.index("\\lemma")]
    out = {}
    for letter, body in EDGE_SET.findall(head):
        pairs = [(int(a) - 1, int(b) - 1) for a, b in PAIR.findall(body)]
        out[snark_index(letter)] = pairs
    return out


def block_sections(text):
    starts = [(m.start(), m.group(1)) for m in SECTION.finditer(text)]
    for i, (pos, key) in enumerate(starts):
        end = starts[i + 1][0] if i + 1 < len(starts) else len(text)
        chunk = text[pos:end]
        blocks = {}
        for body, letter in BLOCK.findall(chunk):
            body = body.replace("\\adfsplit", ",")
            verts = [t.strip() for t in body.split(",") if t.strip()]
            blocks.setdefault(snark_index(letter), []).append(verts)
        yield key, blocks


def main(argv):
    src = Path(argv[1])
    out = Path(argv[2]) if len(argv) > 2 else ROOT / "src" / "snarkdesign" / "data"
    text = src.read_text()

    catalog = out / "catalog"
    catalog.mkdir(parents=True, exist_ok=True)
    sets = edge_sets(text)
    assert sorted(sets) == list(range(1, 39)), sorted(sets)
    for k, pairs in sets.items():
        g = make_graph(24, pairs)
        assert len(g.edges) == 36, (k, len(g.edges))
        (catalog / f"g{k:02d}.graph").write_text(emit_graph(f"G{k}", g))
    petersen = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
    petersen += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    (catalog / "petersen.graph").write_text(emit_graph("petersen", make_graph(10, petersen)))

    total = 0
    for key, blocks in block_sections(text):
        hid, factory, plan = SECTIONS[key]
        host = factory()
        maps = [(make_map(segs, [host.inf] if fix else [], host, name), count) for name, segs, fix, count in plan]
        d = out / "designs" / hid
        d.mkdir(parents=True, exist_ok=True)
        assert sorted(blocks) == list(range(1, 39)), (key, sorted(blocks))
        for k, tuples in blocks.items():
            base = []
            pos = 0
            for m, count in maps:
                take = tuples[pos:] if count is None else tuples[pos:pos + count]
                pos += len(take)
                for verts in take:
                    vs = tuple(host.inf if v == "\\infty" else int(v) for v in verts)
                    assert len(vs) == 24, (key, k, verts)
                    base.append(BaseBlock(vs, m))
            assert pos == len(tuples)
            rec = DesignRecord(f"g{k:02d}-{hid}", k, host, base)
            (d / f"g{k:02d}.design").write_text(emit_design(rec))
            total += 1
    print(f"wrote 38 graphs + petersen fixture and {total} design files under {out}")


if __name__ == "__main__":
    main(sys.argv)
