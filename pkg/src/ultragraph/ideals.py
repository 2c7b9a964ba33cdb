"""Ideals of the vertex-set algebra and the admissible-pair lattice.

An ideal of the set algebra is stored as an open pair (W, T): W is the
union of its members and T the infinite atoms whose cofinite pieces it
contains.  A set belongs to the ideal iff it sits inside W and every
infinite atom it meets infinitely lies in T.  Openness means each atom in
T is cofinitely inside W.

Admissible pairs attach to a hereditary saturated ideal a set of breaking
vertices, the vertices regular in the quotient but not in the graph; the
pairs classify the gauge-invariant ideals of the algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .atoms import AtomTable, Omega, compute_atoms, is_in_g0, omega_str
from .model import INF, Infinite, Ultragraph, Vertex, VertexSet

PATTERN_SUBLATTICE = "pattern-sublattice (possibly incomplete)"
COMPLETE = "complete"


@dataclass(frozen=True)
class G0Ideal:
    """Open pair (W, T); see the module docstring for the membership law."""

    w: VertexSet
    t: frozenset[Omega]

    def to_json(self) -> dict:
        return {"W": self.w.to_json(), "T": sorted(omega_str(x) for x in self.t)}

    def __str__(self) -> str:
        ts = ",".join(omega_str(x) for x in sorted(self.t))
        return f"(W={self.w}, T={{{ts}}})"


def _check_open(atoms: AtomTable, w: VertexSet, t: frozenset[Omega]) -> None:
    for omega in t:
        if omega not in atoms.atoms or atoms.atoms[omega].is_finite:
            raise ValueError(f"{omega_str(omega)} is not an infinite atom")
        if not (atoms.atoms[omega] - w).is_finite:
            raise ValueError(
                f"not open: atom {omega_str(omega)} is not cofinitely in W"
            )


def make_ideal(g: Ultragraph, w: VertexSet, t: frozenset[Omega] = frozenset()) -> G0Ideal:
    if w.universe != g.universe:
        raise ValueError("vertex set belongs to a different universe")
    _check_open(compute_atoms(g), w, t)
    return G0Ideal(w, t)


def empty_ideal(g: Ultragraph) -> G0Ideal:
    return G0Ideal(g.universe.empty_set(), frozenset())


def full_ideal(g: Ultragraph) -> G0Ideal:
    return G0Ideal(g.universe.all_vertices(), frozenset(compute_atoms(g).delta))


def principal_ideal(g: Ultragraph, a: VertexSet) -> G0Ideal:
    """Smallest ideal containing a single member set."""
    if not is_in_g0(g, a):
        raise ValueError("set is not in the algebra")
    atoms = compute_atoms(g)
    t = frozenset(
        omega for omega in atoms.delta
        if not (a & atoms.atoms[omega]).is_finite
    )
    return G0Ideal(a, t)


def ideal_contains(g: Ultragraph, h: G0Ideal, a: VertexSet) -> bool:
    if not is_in_g0(g, a):
        raise ValueError("set is not in the algebra")
    if not a.issubset(h.w):
        return False
    atoms = compute_atoms(g)
    return all(
        omega in h.t or (a & atoms.atoms[omega]).is_finite
        for omega in atoms.delta
    )


def _range_in(atoms: AtomTable, h: G0Ideal, g: Ultragraph, i: int) -> bool:
    # fast path for a = r(e_i): subset of W plus its boundary atoms in T
    return g.edges[i].range.issubset(h.w) and atoms.boundary_of_edge(i) <= h.t


def is_hereditary(g: Ultragraph, h: G0Ideal) -> bool:
    atoms = compute_atoms(g)
    return all(
        not h.w.contains(e.source) or _range_in(atoms, h, g, i)
        for i, e in enumerate(g.edges)
    )


def is_saturated(g: Ultragraph, h: G0Ideal) -> bool:
    atoms = compute_atoms(g)
    for v in g.regular_vertices():
        if h.w.contains(v):
            continue
        outgoing = [i for i, e in enumerate(g.edges) if e.source == v]
        if all(_range_in(atoms, h, g, i) for i in outgoing):
            return False
    return True


def saturate_hereditary_closure(g: Ultragraph, seed: G0Ideal) -> G0Ideal:
    """Least hereditary saturated ideal above the seed.

    Alternates the two sweeps until neither fires.  W only ever absorbs
    edge ranges and single vertices, so it stays inside the finite pattern
    space spanned by the graph's own data and the loop terminates.
    """
    atoms = compute_atoms(g)
    w = seed.w
    t = set(seed.t)
    regular = g.regular_vertices()
    changed = True
    while changed:
        changed = False
        for i, e in enumerate(g.edges):
            if w.contains(e.source) and not _range_in(
                atoms, G0Ideal(w, frozenset(t)), g, i
            ):
                w = w | e.range
                t |= atoms.boundary_of_edge(i)
                changed = True
        for v in regular:
            if w.contains(v):
                continue
            h = G0Ideal(w, frozenset(t))
            outgoing = [i for i, e in enumerate(g.edges) if e.source == v]
            if all(_range_in(atoms, h, g, i) for i in outgoing):
                w = w | g.universe.finite_set([v])
                changed = True
    return G0Ideal(w, frozenset(t))


def quotient_regular_set(g: Ultragraph, h: G0Ideal) -> frozenset[Vertex]:
    """Vertices regular in the quotient by the ideal: outside W, with a
    nonzero finite number of outgoing edges whose range survives,
    multiplicities counted."""
    atoms = compute_atoms(g)
    counts: dict[Vertex, int | Infinite] = {}
    for i, e in enumerate(g.edges):
        if _range_in(atoms, h, g, i):
            continue
        prev = counts.get(e.source, 0)
        if isinstance(prev, Infinite) or isinstance(e.multiplicity, Infinite):
            counts[e.source] = INF
        else:
            counts[e.source] = prev + e.multiplicity
    return frozenset(
        v for v, m in counts.items()
        if not isinstance(m, Infinite) and not h.w.contains(v)
    )


def meet(g: Ultragraph, a: G0Ideal, b: G0Ideal) -> G0Ideal:
    return G0Ideal(a.w & b.w, a.t & b.t)


def join(g: Ultragraph, a: G0Ideal, b: G0Ideal) -> G0Ideal:
    return saturate_hereditary_closure(g, G0Ideal(a.w | b.w, a.t | b.t))


@dataclass(frozen=True)
class AdmissiblePair:
    ideal: G0Ideal
    v: frozenset[Vertex]

    def to_json(self, g: Ultragraph) -> dict:
        key = g.universe.sort_key
        doc = self.ideal.to_json()
        doc["V"] = [str(x) for x in sorted(self.v, key=key)]
        doc["generators"] = _generators(g, self)
        return doc


def _generators(g: Ultragraph, pair: AdmissiblePair) -> dict:
    """Generating data: projections of basic member sets, and for each
    breaking vertex the gap projection left after its surviving edges."""
    atoms = compute_atoms(g)
    key = g.universe.sort_key
    sets: list[str] = []
    remainder = pair.ideal.w
    for omega in sorted(pair.ideal.t):
        cell = atoms.atoms[omega]
        sets.append(str(pair.ideal.w & cell))
        remainder = remainder - cell
    singles = sorted(remainder.finite_vertices(), key=key) \
        if remainder.is_finite else None
    if singles is None:
        sets.insert(0, str(remainder))
    else:
        sets = [f"{{{v}}}" for v in singles] + sets
    return {
        "projections": sets,
        "gap_projections": [str(v) for v in sorted(pair.v, key=key)],
    }


def pair_leq(a: AdmissiblePair, b: AdmissiblePair) -> bool:
    """Containment of the generated gauge-invariant ideals: the open pairs
    are nested and every breaking vertex of the smaller is either still
    breaking in the larger or already swallowed by its W."""
    return (
        a.ideal.w.issubset(b.ideal.w)
        and a.ideal.t <= b.ideal.t
        and all(v in b.v or b.ideal.w.contains(v) for v in a.v)
    )


@dataclass(frozen=True, eq=False)
class IdealLattice:
    graph: Ultragraph
    ideals: tuple[G0Ideal, ...]
    pairs: tuple[AdmissiblePair, ...]
    complete: bool

    @property
    def label(self) -> str:
        return COMPLETE if self.complete else PATTERN_SUBLATTICE

    def hasse_edges(self) -> tuple[tuple[int, int], ...]:
        """Cover relations (i below j) after transitive reduction."""
        n = len(self.pairs)
        below = [
            [i != j and pair_leq(self.pairs[i], self.pairs[j]) for j in range(n)]
            for i in range(n)
        ]
        covers = []
        for i in range(n):
            for j in range(n):
                if below[i][j] and not any(
                    below[i][k] and below[k][j] for k in range(n)
                ):
                    covers.append((i, j))
        return tuple(covers)

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "label": self.label,
            "pairs": [p.to_json(self.graph) for p in self.pairs],
        }

    def export_hasse_dot(self) -> str:
        def quote(s: str) -> str:
            return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

        key = self.graph.universe.sort_key
        lines = ["digraph hasse {", "  rankdir=BT;",
                 f"  label={quote(self.label)};"]
        for i, p in enumerate(self.pairs):
            vs = ",".join(str(v) for v in sorted(p.v, key=key))
            lines.append(
                f"  p{i} [shape=box, label={quote(str(p.ideal) + ' V={' + vs + '}')}];"
            )
        for i, j in self.hasse_edges():
            lines.append(f"  p{i} -> p{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _ideal_sort_key(g: Ultragraph, h: G0Ideal):
    w = h.w
    finite_count = len(w.extra) if not w.full_blocks else None
    return (
        len(w.full_blocks),
        finite_count if finite_count is not None else -1,
        str(w),
        tuple(sorted(omega_str(x) for x in h.t)),
    )


def enumerate_admissible_pairs(g: Ultragraph) -> IdealLattice:
    """All admissible pairs reachable from the canonical seeds.

    Seeds are the singletons of named vertices and mentioned witnesses and
    every atom; the hereditary saturated closures of the seeds are then
    closed under pairwise joins.  Without blocks the vertex set is finite
    and this provably exhausts the lattice; with blocks the result is the
    generated sublattice and is labeled as possibly incomplete.
    """
    atoms = compute_atoms(g)
    seeds: list[VertexSet] = [g.universe.empty_set()]
    for label in g.universe.named:
        seeds.append(g.universe.finite_set([g.universe.vertex(label)]))
    mentioned = g.mentioned_witnesses()
    for block in g.universe.blocks:
        for k in sorted(mentioned.get(block, frozenset())):
            seeds.append(g.universe.finite_set([g.universe.witness(block, k)]))
    seeds.extend(atoms.atoms[omega] for omega in atoms.sorted_omegas())

    found: set[G0Ideal] = set()
    for s in seeds:
        found.add(saturate_hereditary_closure(g, principal_ideal(g, s)))
    # every element of the generated sublattice is a join of seed
    # closures, so joining new elements against the generators alone
    # reaches the whole fixpoint
    generators = sorted(found, key=lambda h: _ideal_sort_key(g, h))
    frontier = list(generators)
    while frontier:
        fresh = []
        for a, b in itertools.product(frontier, generators):
            if (a.w.issubset(b.w) and a.t <= b.t) or (
                b.w.issubset(a.w) and b.t <= a.t
            ):
                continue  # join is the larger one, already present
            j = join(g, a, b)
            if j not in found:
                found.add(j)
                fresh.append(j)
        frontier = fresh

    ideals = tuple(sorted(found, key=lambda h: _ideal_sort_key(g, h)))
    key = g.universe.sort_key
    graph_regular = g.regular_vertices()
    pairs = []
    for h in ideals:
        breaking = sorted(quotient_regular_set(g, h) - graph_regular, key=key)
        for size in range(len(breaking) + 1):
            for combo in itertools.combinations(breaking, size):
                pairs.append(AdmissiblePair(h, frozenset(combo)))
    return IdealLattice(g, ideals, tuple(pairs), not g.universe.blocks)
