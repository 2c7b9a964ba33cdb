"""Atom decomposition of the ranges, the spectrum, and the quiver.

For an edge listing ``e_1, ..., e_n`` and a bit-vector ``w`` over it, the
atom ``r(w)`` consists of the vertices lying in exactly the ranges flagged
1.  The nonempty atoms partition the union of all ranges; the infinite
ones each contribute one boundary point to the spectrum, which is the
vertex universe plus those boundary points.  The quiver built here is the
space-level graph over the spectrum whose edge fibers are the closures of
the ranges.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .model import INF, Infinite, Ultragraph, Vertex, VertexSet

Omega = tuple[int, ...]


def omega_str(omega: Omega) -> str:
    return "".join(str(b) for b in omega)


@dataclass(frozen=True, eq=False)
class AtomTable:
    """All nonempty atoms of an edge listing, flagged finite/infinite.

    ``atoms`` maps each bit-vector with nonempty atom to its vertex set;
    ``delta`` lists the bit-vectors of the infinite atoms, in lexicographic
    order.
    """

    n: int
    atoms: dict[Omega, VertexSet]

    @property
    def delta(self) -> tuple[Omega, ...]:
        return tuple(w for w in self.sorted_omegas() if not self.atoms[w].is_finite)

    def sorted_omegas(self) -> tuple[Omega, ...]:
        return tuple(sorted(self.atoms))

    def is_infinite(self, omega: Omega) -> bool:
        return not self.atoms[omega].is_finite

    def omegas_of_edge(self, i: int) -> tuple[Omega, ...]:
        """Bit-vectors whose atom lies inside the range of edge ``i``."""
        return tuple(w for w in self.sorted_omegas() if w[i] == 1)

    def boundary_of_edge(self, i: int) -> frozenset[Omega]:
        """Infinite-atom bit-vectors flagged 1 at position ``i``."""
        return frozenset(w for w in self.delta if w[i] == 1)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "atoms": [
                {
                    "omega": omega_str(w),
                    "set": self.atoms[w].to_json(),
                    "infinite": self.is_infinite(w),
                }
                for w in self.sorted_omegas()
            ],
            "delta": [omega_str(w) for w in self.delta],
        }


@functools.lru_cache(maxsize=128)
def compute_atoms(g: Ultragraph) -> AtomTable:
    """Split the union of ranges into its atoms.

    The partition is refined one edge at a time: each existing cell is
    split by the incoming range, and the part of the range not covered so
    far opens a new cell.  Empty bit-vectors are never materialized; the
    worst case is still 2^n - 1 cells.
    """
    cells: list[tuple[Omega, VertexSet]] = []
    covered = g.universe.empty_set()
    for i, e in enumerate(g.edges):
        r = e.range
        refined: list[tuple[Omega, VertexSet]] = []
        for bits, s in cells:
            inside = s & r
            outside = s - r
            if inside:
                refined.append((bits + (1,), inside))
            if outside:
                refined.append((bits + (0,), outside))
        fresh = r - covered
        if fresh:
            refined.append(((0,) * i + (1,), fresh))
        covered = covered | r
        cells = refined
    return AtomTable(len(g.edges), dict(cells))


@dataclass(frozen=True, eq=False)
class ClosedRange:
    """Closure of a range in the spectrum: its vertices plus the boundary
    points of the infinite atoms it contains."""

    vertices: VertexSet
    boundary: frozenset[Omega]


def closure_of_range(g: Ultragraph, atoms: AtomTable, edge_id: str) -> ClosedRange:
    i = g.edge_index(edge_id)
    return ClosedRange(g.edges[i].range, atoms.boundary_of_edge(i))


def is_in_g0(g: Ultragraph, a: VertexSet) -> bool:
    """Membership in the algebra generated by singletons and the ranges.

    A set belongs to the algebra iff the part outside all ranges is
    finite, and within each infinite atom it is either finite or cofinite.
    """
    if (a - g.range_union()).full_blocks:
        return False
    atoms = compute_atoms(g)
    for w in atoms.delta:
        cell = atoms.atoms[w]
        if not (a & cell).is_finite and not (cell - a).is_finite:
            return False
    return True


@dataclass(frozen=True, eq=False)
class AtomComponent:
    """One compact open component of the spectrum: an infinite atom
    together with its boundary point."""

    omega: Omega
    vertices: VertexSet


@dataclass(frozen=True, eq=False)
class EdgeComponent:
    """The edge fiber over one ultragraph edge: the closure of its range,
    repeated ``multiplicity`` times."""

    edge_id: str
    source: Vertex
    vertices: VertexSet
    boundary: frozenset[Omega]
    multiplicity: int | Infinite


@dataclass(frozen=True, eq=False)
class Quiver:
    """The space-level graph over the spectrum.

    The vertex space is the discrete remainder plus one compact open
    component per infinite atom; the edge space has one component per
    ultragraph edge, living over the closure of its range.  The range map
    is the identity on the fiber and the source map is constant on each
    component.  Fiber measures are counting measure throughout.
    """

    graph: Ultragraph
    discrete: VertexSet
    atom_components: tuple[AtomComponent, ...]
    edge_components: tuple[EdgeComponent, ...]
    regular: frozenset[Vertex]

    @property
    def boundary_points(self) -> tuple[Omega, ...]:
        return tuple(c.omega for c in self.atom_components)

    def to_json(self) -> dict:
        key = self.graph.universe.sort_key
        return {
            "vertices": self.discrete.to_json(),
            "atoms": [
                {"omega": omega_str(c.omega), "set": c.vertices.to_json()}
                for c in self.atom_components
            ],
            "boundary_points": [omega_str(w) for w in self.boundary_points],
            "edges": [
                {
                    "id": c.edge_id,
                    "source": str(c.source),
                    "range": c.vertices.to_json(),
                    "boundary": sorted(omega_str(w) for w in c.boundary),
                    "multiplicity": "inf" if isinstance(c.multiplicity, Infinite)
                    else c.multiplicity,
                }
                for c in self.edge_components
            ],
            "regular": [str(v) for v in sorted(self.regular, key=key)],
        }


def build_quiver(g: Ultragraph, atoms: AtomTable | None = None) -> Quiver:
    """Assemble the quiver: spectrum components, edge fibers, regular set.

    Components are ordered deterministically: atoms lexicographically by
    bit-vector, edge fibers by declaration order.  The regular set is read
    off the edge fibers: a vertex is regular when a nonzero finite number
    of fiber components sit over it as source.
    """
    if atoms is None:
        atoms = compute_atoms(g)
    infinite_union = g.universe.empty_set()
    components = []
    for w in atoms.delta:
        cell = atoms.atoms[w]
        components.append(AtomComponent(w, cell))
        infinite_union = infinite_union | cell
    discrete = g.universe.all_vertices() - infinite_union

    fibers = tuple(
        EdgeComponent(
            e.id,
            e.source,
            e.range,
            atoms.boundary_of_edge(i),
            e.multiplicity,
        )
        for i, e in enumerate(g.edges)
    )

    regular = set()
    counts: dict[Vertex, int | Infinite] = {}
    for c in fibers:
        prev = counts.get(c.source, 0)
        if isinstance(prev, Infinite) or isinstance(c.multiplicity, Infinite):
            counts[c.source] = INF
        else:
            counts[c.source] = prev + c.multiplicity
    for v, m in counts.items():
        if not isinstance(m, Infinite) and m > 0:
            regular.add(v)

    return Quiver(g, discrete, tuple(components), fibers, frozenset(regular))


# -- DOT rendering ------------------------------------------------------------

_MAX_WITNESS_LABEL = 3


def _set_label(s: VertexSet) -> str:
    """Short description of a set: named extras plus a truncated witness
    list per block (at most three shown)."""
    parts = [str(v) for v in s.sorted_extra()]
    for b in s.sorted_blocks():
        shown = s.present_witnesses(b, _MAX_WITNESS_LABEL)
        parts.append(" ".join(f"{b}[{k}]" for k in shown) + " ...")
    return " ".join(parts)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


class _NodeMap:
    """Maps each spectrum point to the DOT node displaying it."""

    def __init__(self, q: Quiver):
        self.q = q

    def node_of_vertex(self, v: Vertex) -> str:
        for c in self.q.atom_components:
            if c.vertices.contains(v):
                return f"atom_{omega_str(c.omega)}"
        if v.is_witness and v.label in self.q.discrete.full_blocks \
                and self.q.discrete.contains(v):
            return f"blk_{v.label}"
        if v.is_witness:
            return f"w_{v.label}_{v.index}"
        return f"v_{v.label}"

    def node_of_boundary(self, omega: Omega) -> str:
        return f"bp_{omega_str(omega)}"


def export_dot(q: Quiver) -> str:
    """Render the quiver as a DOT digraph.

    Named vertices are ellipses, block cells and atom cells are boxes
    labeled with the bit-vector and a truncated witness list, boundary
    points are diamonds.  Arrows are grouped per ultragraph edge and
    annotated with the multiplicity when it is not 1.
    """
    nm = _NodeMap(q)
    lines = ["digraph quiver {", "  rankdir=LR;"]

    for v in q.discrete.sorted_extra():
        shape = "ellipse"
        lines.append(f"  {_quote(nm.node_of_vertex(v))} [shape={shape}, "
                     f"label={_quote(str(v))}];")
    for b in q.discrete.sorted_blocks():
        shown = q.discrete.present_witnesses(b, _MAX_WITNESS_LABEL)
        label = " ".join(f"{b}[{k}]" for k in shown) + " ..."
        lines.append(f"  {_quote(f'blk_{b}')} [shape=box, label={_quote(label)}];")
    for c in q.atom_components:
        label = f"[{omega_str(c.omega)}] {_set_label(c.vertices)}"
        lines.append(f"  {_quote(f'atom_{omega_str(c.omega)}')} [shape=box, "
                     f"label={_quote(label)}];")
        lines.append(f"  {_quote(nm.node_of_boundary(c.omega))} [shape=diamond, "
                     f"label={_quote(omega_str(c.omega))}];")

    atoms = compute_atoms(q.graph)
    for c in q.edge_components:
        src = nm.node_of_vertex(c.source)
        targets: dict[str, None] = {}
        finite_part = c.vertices
        for w in atoms.delta:
            if w in c.boundary:
                targets.setdefault(f"atom_{omega_str(w)}", None)
                targets.setdefault(nm.node_of_boundary(w), None)
                finite_part = finite_part - atoms.atoms[w]
        for v in finite_part.finite_vertices():
            targets.setdefault(nm.node_of_vertex(v), None)
        if isinstance(c.multiplicity, Infinite):
            label = f"{c.edge_id} (x inf)"
        elif c.multiplicity != 1:
            label = f"{c.edge_id} (x{c.multiplicity})"
        else:
            label = c.edge_id
        for t in targets:
            lines.append(f"  {_quote(src)} -> {_quote(t)} [label={_quote(label)}];")

    lines.append("}")
    return "\n".join(lines) + "\n"
