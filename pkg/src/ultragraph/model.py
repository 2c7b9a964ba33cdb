"""Exact data model for finitely presented ultragraphs.

An ultragraph is a directed-graph-like structure whose edges point from a
single source vertex to a nonempty *set* of range vertices.  The vertex
universe here is presented as finitely many named vertices plus finitely
many pairwise-disjoint countably infinite blocks; every subset that the
rest of the package manipulates is a :class:`VertexSet`, a canonical exact
representation closed under union, intersection and difference with
decidable equality and cardinality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


class Infinite:
    """Singleton marker for countably infinite cardinalities.

    Used wherever a quantity is either a nonnegative integer or countably
    infinite: set cardinalities, edge multiplicities, free ranks of
    abelian groups.  Serialized as the JSON string ``"inf"``.
    """

    _instance: "Infinite | None" = None

    def __new__(cls) -> "Infinite":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (Infinite, ())


INF = Infinite()


def card_to_json(value: int | Infinite) -> int | str:
    return "inf" if isinstance(value, Infinite) else value


class UniverseMismatchError(ValueError):
    """Raised when combining vertex sets over different universes."""


@dataclass(frozen=True, order=True)
class Vertex:
    """A vertex: either named, or the ``index``-th witness of a block.

    ``index is None`` means a named vertex whose identifier is ``label``;
    otherwise ``label`` is a block identifier and the vertex is the
    witness ``label[index]``.
    """

    label: str
    index: int | None = None

    @property
    def is_witness(self) -> bool:
        return self.index is not None

    def __str__(self) -> str:
        if self.index is None:
            return self.label
        return f"{self.label}[{self.index}]"


@dataclass(frozen=True)
class VertexUniverse:
    """Finitely many named vertices plus countably infinite blocks.

    Each block identifier denotes a countably infinite family of
    witnesses ``block[k]``, k = 0, 1, 2, ...; the blocks are pairwise
    disjoint and disjoint from the named vertices.
    """

    named: tuple[str, ...] = ()
    blocks: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for ident in self.named + self.blocks:
            if ident in seen:
                raise ValueError(f"duplicate identifier in universe: {ident!r}")
            seen.add(ident)

    # -- vertex construction ------------------------------------------------

    def vertex(self, name: str) -> Vertex:
        if name not in self.named:
            raise ValueError(f"unknown vertex: {name!r}")
        return Vertex(name)

    def witness(self, block: str, index: int) -> Vertex:
        if block not in self.blocks:
            raise ValueError(f"unknown block: {block!r}")
        if index < 0:
            raise ValueError(f"witness index must be nonnegative, got {index}")
        return Vertex(block, index)

    def check_vertex(self, v: Vertex) -> Vertex:
        """Validate that ``v`` denotes an element of this universe."""
        if v.index is None:
            return self.vertex(v.label)
        return self.witness(v.label, v.index)

    def sort_key(self, v: Vertex) -> tuple[int, int, int]:
        """Deterministic vertex order: named (declaration order) first,
        then witnesses by (block declaration order, index)."""
        if v.index is None:
            return (0, self.named.index(v.label), 0)
        return (1, self.blocks.index(v.label), v.index)

    # -- set construction ---------------------------------------------------

    def empty_set(self) -> "VertexSet":
        return _canonical(self, frozenset(), frozenset(), frozenset())

    def finite_set(self, vertices: Iterable[Vertex]) -> "VertexSet":
        vs = frozenset(self.check_vertex(v) for v in vertices)
        return _canonical(self, frozenset(), frozenset(), vs)

    def block_set(self, block: str, removed: Iterable[int] = ()) -> "VertexSet":
        """The block minus finitely many witnesses, e.g. ``B \\ {B[0], B[2]}``."""
        if block not in self.blocks:
            raise ValueError(f"unknown block: {block!r}")
        gone = frozenset((block, int(k)) for k in removed)
        for _, k in gone:
            if k < 0:
                raise ValueError("removed witness index must be nonnegative")
        return _canonical(self, frozenset({block}), gone, frozenset())

    def all_vertices(self) -> "VertexSet":
        """The whole universe as a vertex set."""
        named = frozenset(Vertex(n) for n in self.named)
        return _canonical(self, frozenset(self.blocks), frozenset(), named)


def _canonical(
    universe: VertexUniverse,
    full_blocks: frozenset[str],
    removed: frozenset[tuple[str, int]],
    extra: frozenset[Vertex],
) -> "VertexSet":
    """Build a VertexSet in canonical form.

    Canonicalization: removed pairs are kept only for blocks actually
    present; a witness of a full block listed in ``extra`` either cancels
    its removal or is absorbed into the block; named vertices and
    witnesses of absent blocks stay in ``extra``.
    """
    for b in full_blocks:
        if b not in universe.blocks:
            raise ValueError(f"unknown block: {b!r}")
    removed = frozenset(p for p in removed if p[0] in full_blocks)
    keep: set[Vertex] = set()
    gone = set(removed)
    for v in extra:
        if v.is_witness and v.label in full_blocks:
            gone.discard((v.label, v.index))  # re-added witness cancels removal
        else:
            keep.add(v)
    return VertexSet(universe, full_blocks, frozenset(gone), frozenset(keep))


@dataclass(frozen=True)
class VertexSet:
    """Canonical subset of the vertex universe.

    Semantics: the union of ``block \\ removed[block]`` over
    ``full_blocks``, plus the finite set ``extra``.  Canonical form makes
    structural equality coincide with extensional equality, so the
    default dataclass ``__eq__``/``__hash__`` are the set-theoretic ones.
    Instances are immutable; all operations return new sets.
    """

    universe: VertexUniverse
    full_blocks: frozenset[str] = field(default_factory=frozenset)
    removed: frozenset[tuple[str, int]] = field(default_factory=frozenset)
    extra: frozenset[Vertex] = field(default_factory=frozenset)

    # -- queries ------------------------------------------------------------

    def __contains__(self, v: Vertex) -> bool:
        return self.contains(v)

    def contains(self, v: Vertex) -> bool:
        if v.is_witness and v.label in self.full_blocks:
            return (v.label, v.index) not in self.removed
        return v in self.extra

    @property
    def is_finite(self) -> bool:
        return not self.full_blocks

    def __bool__(self) -> bool:
        return bool(self.full_blocks) or bool(self.extra)

    def cardinality(self) -> int | Infinite:
        if self.full_blocks:
            return INF
        return len(self.extra)

    def finite_vertices(self) -> tuple[Vertex, ...]:
        """The elements, sorted; only valid for finite sets."""
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite vertex set")
        return tuple(sorted(self.extra, key=self.universe.sort_key))

    def issubset(self, other: "VertexSet") -> bool:
        return not (self - other)

    def __le__(self, other: "VertexSet") -> bool:
        return self.issubset(other)

    def removed_indices(self, block: str) -> frozenset[int]:
        return frozenset(k for b, k in self.removed if b == block)

    def present_witnesses(self, block: str, count: int) -> list[int]:
        """First ``count`` witness indices of ``block`` present in the set."""
        if block not in self.full_blocks:
            return sorted(v.index for v in self.extra if v.label == block)[:count]
        gone = self.removed_indices(block)
        out: list[int] = []
        k = 0
        while len(out) < count:
            if k not in gone:
                out.append(k)
            k += 1
        return out

    def mentioned_indices(self) -> dict[str, set[int]]:
        """Witness indices appearing structurally, per block."""
        out: dict[str, set[int]] = {}
        for b, k in self.removed:
            out.setdefault(b, set()).add(k)
        for v in self.extra:
            if v.is_witness:
                out.setdefault(v.label, set()).add(v.index)
        return out

    # -- boolean operations ---------------------------------------------------

    def _check(self, other: "VertexSet") -> None:
        if self.universe != other.universe:
            raise UniverseMismatchError("vertex sets belong to different universes")

    def union(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        blocks = self.full_blocks | other.full_blocks
        removed = set()
        for b in blocks:
            if b in self.full_blocks and b in other.full_blocks:
                gone = self.removed_indices(b) & other.removed_indices(b)
            elif b in self.full_blocks:
                gone = self.removed_indices(b)
            else:
                gone = other.removed_indices(b)
            removed.update((b, k) for k in gone)
        extra = self.extra | other.extra
        return _canonical(self.universe, blocks, frozenset(removed), extra)

    def intersection(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        blocks = self.full_blocks & other.full_blocks
        removed = frozenset(
            (b, k) for b, k in self.removed | other.removed if b in blocks
        )
        extra = frozenset(
            v for v in self.extra if other.contains(v)
        ) | frozenset(v for v in other.extra if self.contains(v))
        return _canonical(self.universe, blocks, removed, extra)

    def difference(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        blocks = set()
        removed: set[tuple[str, int]] = set()
        extra = {v for v in self.extra if not other.contains(v)}
        for b in self.full_blocks:
            if b in other.full_blocks:
                # (B \ R1) \ (B \ R2) is the finite set R2 \ R1
                for k in other.removed_indices(b) - self.removed_indices(b):
                    extra.add(Vertex(b, k))
            else:
                blocks.add(b)
                removed.update((b, k) for k in self.removed_indices(b))
                removed.update(
                    (b, v.index) for v in other.extra if v.is_witness and v.label == b
                )
        return _canonical(
            self.universe, frozenset(blocks), frozenset(removed), frozenset(extra)
        )

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    # -- presentation ---------------------------------------------------------

    def sorted_extra(self) -> tuple[Vertex, ...]:
        return tuple(sorted(self.extra, key=self.universe.sort_key))

    def sorted_blocks(self) -> tuple[str, ...]:
        return tuple(b for b in self.universe.blocks if b in self.full_blocks)

    def to_json(self) -> dict:
        return {
            "blocks": list(self.sorted_blocks()),
            "removed": {
                b: sorted(self.removed_indices(b)) for b in self.sorted_blocks()
                if self.removed_indices(b)
            },
            "extra": [str(v) for v in self.sorted_extra()],
        }

    def __str__(self) -> str:
        parts = [str(v) for v in self.sorted_extra()]
        for b in self.sorted_blocks():
            gone = sorted(self.removed_indices(b))
            if gone:
                parts.append(b + " \\ {" + ", ".join(f"{b}[{k}]" for k in gone) + "}")
            else:
                parts.append(b)
        return "{" + ", ".join(parts) + "}" if parts else "{}"


@dataclass(frozen=True)
class Edge:
    """An ultragraph edge: single source vertex, nonempty range set.

    ``multiplicity`` counts parallel copies of the edge; :data:`INF`
    encodes a countably infinite parallel family, which makes the source
    vertex non-regular.
    """

    id: str
    source: Vertex
    range: VertexSet
    multiplicity: int | Infinite = 1


@dataclass(frozen=True)
class Ultragraph:
    """An ultragraph over a block-presented universe.

    The edge listing order is part of the value: atom bit-vectors and all
    listing-dependent outputs are relative to it.
    """

    universe: VertexUniverse
    edges: tuple[Edge, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        ids: set[str] = set()
        for e in self.edges:
            if e.id in ids:
                raise ValueError(f"duplicate edge id: {e.id!r}")
            ids.add(e.id)
            self.universe.check_vertex(e.source)
            if e.range.universe != self.universe:
                raise UniverseMismatchError(
                    f"range of edge {e.id!r} lives in a different universe"
                )
            if not e.range:
                raise ValueError(f"edge {e.id!r} has empty range")
            if not isinstance(e.multiplicity, Infinite) and e.multiplicity < 1:
                raise ValueError(f"edge {e.id!r} has nonpositive multiplicity")

    # -- lookups --------------------------------------------------------------

    def edge_by_id(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(f"unknown edge id: {edge_id!r}")

    def edge_index(self, edge_id: str) -> int:
        for i, e in enumerate(self.edges):
            if e.id == edge_id:
                return i
        raise KeyError(f"unknown edge id: {edge_id!r}")

    def sources(self) -> tuple[Vertex, ...]:
        """Distinct source vertices in first-occurrence order."""
        seen: dict[Vertex, None] = {}
        for e in self.edges:
            seen.setdefault(e.source, None)
        return tuple(seen)

    def out_multiplicity(self, v: Vertex) -> int | Infinite:
        """Total number of outgoing edges at ``v``, counting parallel copies."""
        total = 0
        for e in self.edges:
            if e.source != v:
                continue
            if isinstance(e.multiplicity, Infinite):
                return INF
            total += e.multiplicity
        return total

    def regular_vertices(self) -> frozenset[Vertex]:
        """Vertices with nonzero finite outgoing multiplicity."""
        out = set()
        for v in self.sources():
            m = self.out_multiplicity(v)
            if not isinstance(m, Infinite) and m > 0:
                out.add(v)
        return frozenset(out)

    def range_union(self) -> VertexSet:
        u = self.universe.empty_set()
        for e in self.edges:
            u = u | e.range
        return u

    def r_lambda_mu(self, lam: Iterable[str], mu: Iterable[str]) -> VertexSet:
        """Intersection of the ranges over ``lam`` minus the ranges over ``mu``.

        ``lam`` must be nonempty and disjoint from ``mu``; ids must exist.
        """
        lam = list(lam)
        mu = list(mu)
        if not lam:
            raise ValueError("lambda must be nonempty")
        overlap = set(lam) & set(mu)
        if overlap:
            raise ValueError(f"lambda and mu overlap: {sorted(overlap)}")
        result = self.edge_by_id(lam[0]).range
        for eid in lam[1:]:
            result = result & self.edge_by_id(eid).range
        for eid in mu:
            result = result - self.edge_by_id(eid).range
        return result

    def mentioned_witnesses(self) -> dict[str, frozenset[int]]:
        """Witness indices mentioned anywhere in the presentation, per block."""
        acc: dict[str, set[int]] = {b: set() for b in self.universe.blocks}
        for e in self.edges:
            if e.source.is_witness:
                acc.setdefault(e.source.label, set()).add(e.source.index)
            for b, ks in e.range.mentioned_indices().items():
                acc.setdefault(b, set()).update(ks)
        return {b: frozenset(ks) for b, ks in acc.items()}

    def with_edge_order(self, order: Iterable[str]) -> "Ultragraph":
        """Same ultragraph with edges permuted into the given id order."""
        edges = tuple(self.edge_by_id(eid) for eid in order)
        if len(edges) != len(self.edges):
            raise ValueError("edge order must list every edge exactly once")
        return Ultragraph(self.universe, edges, self.name)
