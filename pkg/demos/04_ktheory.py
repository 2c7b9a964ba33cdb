"""K-theory of the graph algebra, exactly.

K0 is the cokernel and K1 the kernel of an integer boundary matrix
indexed by regular vertices.  The Smith normal form runs over plain
Python integers (no overflow, no floats) and re-verifies its own
transform identity on every call.
"""

import pathlib

from ultragraph import (
    SourceFile,
    boundary_matrix,
    import_exel_laca,
    k_groups,
    parse_ultragraph,
    smith_normal_form,
)

HERE = pathlib.Path(__file__).parent


def show(label, g):
    print(f"{label:18} {k_groups(g)}")


show("one loop:", parse_ultragraph(SourceFile.load(HERE / "graphs" / "loop.ug")))
show("o2:", parse_ultragraph(SourceFile.load(HERE / "graphs" / "o2.ug")))

# n parallel loops give the Cuntz algebra O_n: K0 = Z/(n-1)
for n in range(2, 6):
    edges = " ".join(f"edge e{i}: v -> {{v}};" for i in range(n))
    show(f"{n} loops:",
         parse_ultragraph("ultragraph { vertices: v; %s }" % edges))

show("block fan:",
     parse_ultragraph(SourceFile.load(HERE / "graphs" / "block_fan.ug")))
print()

# the boundary matrix itself, for the matrix-presented algebra
g = import_exel_laca([[1, 1, 0], [0, 1, 1], [1, 0, 1]], name="m3")
m = boundary_matrix(g)
print("rows:", m.basis.labels())
print("columns:", [str(v) for v in m.columns])
for row in m.entries:
    print(" ", list(row))

d = smith_normal_form([list(r) for r in m.entries])
print("invariant factors:", d.factors)
show("so the algebra has", g)
