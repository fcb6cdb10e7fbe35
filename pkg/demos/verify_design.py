"""Walk through verifying one shipped decomposition, then break it.

A design record lists base blocks (24-vertex tuples) and the automorphism
each one is developed under.  Verification develops every orbit and checks
that each host edge is covered exactly once.
"""

from dataclasses import replace

from snarkdesign.catalog import data_dir
from snarkdesign.design import BaseBlock, verify_design
from snarkdesign.formats import emit_report, read_design

path = data_dir() / "designs" / "k73" / "g01.design"
rec = read_design(path)
print(f"{rec.id}: {len(rec.blocks)} base block(s), host with {rec.host.edge_count} edges")

report = verify_design(rec)
print(emit_report(report))

# Swap a single vertex of the base block for one not already used.
verts = list(rec.blocks[0].vertices)
verts[verts.index(70)] = 69
broken = replace(rec, blocks=[BaseBlock(tuple(verts), rec.blocks[0].map)])
bad = verify_design(broken)
print("\nafter a one-vertex change:")
print(emit_report(bad))
