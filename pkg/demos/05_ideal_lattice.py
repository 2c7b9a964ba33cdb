"""The lattice of gauge-invariant ideals, as admissible pairs.

A pair is a hereditary saturated ideal of the set algebra together with
a choice of breaking vertices: vertices that emit infinitely many edges
in the graph but only finitely many that survive into the quotient.
"""

import pathlib

from ultragraph import SourceFile, enumerate_admissible_pairs, parse_ultragraph

HERE = pathlib.Path(__file__).parent
g = parse_ultragraph(SourceFile.load(HERE / "graphs" / "block_fan.ug"))

lattice = enumerate_admissible_pairs(g)
print(f"{len(lattice.pairs)} admissible pairs ({lattice.label}):")
for i, p in enumerate(lattice.pairs):
    vs = ", ".join(sorted(str(v) for v in p.v))
    print(f"  {i}: {p.ideal}  V={{{vs}}}")
print()

print("cover relations (lower index below higher):", lattice.hasse_edges())
print()

# the Hasse diagram as DOT; `ultra ideals --hasse` emits the same
print(lattice.export_hasse_dot())
