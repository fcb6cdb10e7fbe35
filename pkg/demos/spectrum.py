"""Necessary congruence conditions for decomposing K_n into copies of a graph.

For a graph with v vertices, e edges and degree gcd d, K_n can only be
decomposed when n - 1 is a multiple of d and n(n - 1) is a multiple of 2e.
"""

from snarkdesign.spectrum import DesignParams, admissible_residues

for v, e, d in [(24, 36, 3), (10, 15, 3), (18, 27, 3), (20, 30, 3), (22, 33, 3)]:
    spec = admissible_residues(DesignParams(v, e, d))
    first = [n for r in range(0, 240, spec.modulus) for n in (r + x for x in spec.residues) if n >= v]
    print(f"v={v:2d} e={e:2d}: {spec}   first orders: {sorted(first)[:6]}")
