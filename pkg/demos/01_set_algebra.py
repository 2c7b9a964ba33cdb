"""Vertex sets with exact countable-infinity support.

A universe holds finitely many named vertices plus blocks, each block an
infinite family of witnesses B[0], B[1], ...  Sets are stored in a
canonical pattern form (whole blocks, finitely many removals, finitely
many extras), so equality, cardinality, and the boolean operations are
all exact. No approximation, no truncation.
"""

from ultragraph import INF, Vertex, VertexUniverse

u = VertexUniverse(named=("v", "w"), blocks=("B",))

b = u.block_set("B")
cofinite = u.block_set("B", removed=[0, 2])
finite = u.finite_set([Vertex("v"), Vertex("B", 2)])

print("B              =", b)
print("B minus two    =", cofinite)
print("a finite set   =", finite)
print()

print("union          =", cofinite | finite)
print("intersection   =", b & finite)
print("difference     =", b - cofinite, "   (the removals came back)")
print()

print("|B|            =", b.cardinality())
print("|B - {B[0],B[2]}| =", cofinite.cardinality())
print("|union|        =", (cofinite | finite).cardinality())
assert b.cardinality() == INF

# canonical form makes structural equality extensional: removing two
# witnesses and putting them back is a no-op
assert (cofinite | u.finite_set([Vertex("B", 0), Vertex("B", 2)])) == b
print()
print("putting the removed witnesses back gives B again:",
      cofinite | u.finite_set([Vertex("B", 0), Vertex("B", 2)]))
