"""The .ug description language, plus the two structured importers."""

import pathlib

from ultragraph import (
    SourceFile,
    import_digraph,
    import_exel_laca,
    parse_ultragraph,
    pretty_print,
)

HERE = pathlib.Path(__file__).parent

g = parse_ultragraph(SourceFile.load(HERE / "graphs" / "two_vertex.ug"))
print("parsed", g.name, "with edges", [e.id for e in g.edges])
print("regular vertices:", sorted(str(v) for v in g.regular_vertices()))
print()

# pretty_print emits canonical source that parses back to the same graph
text = pretty_print(g)
print(text)
assert parse_ultragraph(text) == g

# an ordinary digraph is the special case of singleton ranges
d = import_digraph(
    ["a", "b"],
    [("e1", "a", "b"), ("e2", "b", "a")],
    name="cycle2",
)
print(pretty_print(d))

# a {0,1} matrix becomes one edge per row, range = support of the row
o2 = import_exel_laca([[1, 1], [1, 1]], name="o2")
print(pretty_print(o2))
