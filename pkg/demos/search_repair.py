"""Repair a damaged decomposition with simulated annealing.

Three entries of the K_{12,12,12} base block for G1 are overwritten, then the
search starts from the damaged tuple and anneals back to a valid design.
"""

import random

from snarkdesign.catalog import data_dir, get_graph
from snarkdesign.design import verify_design
from snarkdesign.formats import emit_design, read_design
from snarkdesign.search import Candidate, SearchSpec, cost_of, search

rec = read_design(data_dir() / "designs" / "k12x3" / "g01.design")
verts = list(rec.blocks[0].vertices)
rng = random.Random(8)
for _ in range(3):
    verts[rng.randrange(24)] = rng.choice([x for x in range(36) if x not in verts])

spec = SearchSpec(
    get_graph(1), rec.host, [rec.blocks[0].map],
    budget=1_000_000, seed=1, initial=Candidate((tuple(verts),)), snark_id=1,
)
print("starting cost:", cost_of(spec.initial, spec))
result = search(spec)
print(f"repaired after {result.evaluations} evaluations, {result.restarts} restarts")
print("verifies:", verify_design(result.record).passed)
print(emit_design(result.record))
