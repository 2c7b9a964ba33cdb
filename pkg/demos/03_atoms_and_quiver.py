"""Atom decomposition and the quiver over the spectrum.

The ranges of the edges cut the vertex set into atoms: for each
bit-vector over the edge listing, the vertices lying in exactly the
ranges flagged 1.  Each infinite atom contributes one boundary point,
and the quiver is the graph living over vertices plus boundary points.
"""

import pathlib
import sys

from ultragraph import (
    SourceFile,
    build_quiver,
    compute_atoms,
    export_dot,
    is_in_g0,
    parse_ultragraph,
)

HERE = pathlib.Path(__file__).parent
g = parse_ultragraph(SourceFile.load(HERE / "graphs" / "block_fan.ug"))

table = compute_atoms(g)
print(f"atoms over the {table.n}-edge listing (e, f):")
for omega in table.sorted_omegas():
    flag = "infinite" if table.is_infinite(omega) else "finite"
    bits = "".join(map(str, omega))
    print(f"  [{bits}] {table.atoms[omega]}  ({flag})")
print("infinite atoms:", ["".join(map(str, w)) for w in table.delta])
print()

# membership in the generated set algebra is decidable: a set belongs
# iff it is finite or cofinite inside every infinite atom and finitely
# supported outside the ranges
print("B in the algebra:        ", is_in_g0(g, g.universe.block_set("B")))
print("{B[0]} in the algebra:   ",
      is_in_g0(g, g.universe.finite_set([g.universe.witness("B", 0)])))

q = build_quiver(g)
print()
print("discrete part of the spectrum:", q.discrete)
print("boundary points:", ["".join(map(str, w)) for w in q.boundary_points])
print("regular vertices:", sorted(str(v) for v in q.regular) or "(none)")

# DOT output for graphviz; `ultra quiver -f dot` does the same
if "--dot" in sys.argv:
    print()
    print(export_dot(q))
