"""K-theory of the ultragraph algebra, computed exactly over Z.

The boundary map sends the generator of each regular vertex v to
``delta_v - sum m_e * chi_range(e)`` over the edges leaving v, written in
the free basis consisting of vertex indicators and the indicator of each
infinite atom (a range indicator expands into the atoms it covers).  K0
is the cokernel and K1 the kernel, both read off a Smith normal form.

Everything is plain Python integers, so entries never overflow and the
invariant factors are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .atoms import AtomTable, Omega, compute_atoms, omega_str
from .model import INF, Infinite, Ultragraph, Vertex, card_to_json

Matrix = list[list[int]]


class SelfCheckError(AssertionError):
    """The transform identity U * M * V == D failed to verify."""


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    inner = len(b)
    width = len(b[0]) if inner else 0
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) for j in range(width)]
        for row in a
    ]


@dataclass(frozen=True, eq=False)
class SmithDecomposition:
    """D = U * M * V with U, V unimodular and D diagonal, d1 | d2 | ...

    ``factors`` lists the nonzero diagonal entries; ``rank`` is their
    count.  The identity is re-verified at construction time by
    :func:`smith_normal_form`, so a decomposition in hand is trustworthy.
    """

    rows: int
    cols: int
    factors: tuple[int, ...]
    u: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.factors)


def smith_normal_form(matrix: list[list[int]]) -> SmithDecomposition:
    """Diagonalize an integer matrix by unimodular row and column moves.

    Pivots are chosen with least absolute value, which keeps the
    intermediate entries small in practice.  Before a pivot is finalized
    it is made to divide every entry of the remaining submatrix, so the
    diagonal comes out as a divisibility chain.  The claimed identity
    U * M * V == D is multiplied out and checked before returning.
    """
    a = [[int(x) for x in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if any(len(row) != cols for row in a):
        raise ValueError("ragged matrix")
    u = _identity(rows)
    v = _identity(cols)

    def add_row(dst: int, src: int, c: int) -> None:
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, c: int) -> None:
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    t = 0
    while True:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        # remainder beats the pivot, promote it
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, rows):
                if any(x % a[t][t] for x in a[i][t + 1:]):
                    offender = i
                    break
            if offender is None:
                break
            # pull the stubborn row up so the pivot shrinks next sweep
            add_row(t, offender, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    if _mat_mul(_mat_mul(u, [list(row) for row in matrix]), v) != a:
        raise SelfCheckError("U * M * V != D")
    factors = tuple(a[i][i] for i in range(t))
    return SmithDecomposition(
        rows,
        cols,
        factors,
        tuple(tuple(row) for row in u),
        tuple(tuple(row) for row in v),
    )


@dataclass(frozen=True, eq=False)
class ZGBasis:
    """Row basis of the boundary matrix.

    ``vertices`` lists the vertex indicators that can receive an entry:
    every named vertex, plus the finitely many block witnesses that occur
    as a regular source or inside a finite atom of some range.  ``omegas``
    lists the infinite atoms.  When blocks exist, infinitely many further
    vertex indicators are untouched by the map and each survives as a free
    generator of the cokernel; ``untouched_infinite`` records that.
    """

    vertices: tuple[Vertex, ...]
    omegas: tuple[Omega, ...]
    untouched_infinite: bool

    @property
    def untouched_free_rank(self) -> int | Infinite:
        return INF if self.untouched_infinite else 0

    def row_of_vertex(self, v: Vertex) -> int:
        return self.vertices.index(v)

    def row_of_omega(self, w: Omega) -> int:
        return len(self.vertices) + self.omegas.index(w)

    @property
    def size(self) -> int:
        return len(self.vertices) + len(self.omegas)

    def labels(self) -> tuple[str, ...]:
        return tuple(str(v) for v in self.vertices) + tuple(
            "chi[" + omega_str(w) + "]" for w in self.omegas
        )


@dataclass(frozen=True, eq=False)
class BoundaryMatrix:
    """The boundary map as an integer matrix, columns over regular
    vertices, rows over :class:`ZGBasis`."""

    basis: ZGBasis
    columns: tuple[Vertex, ...]
    entries: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "rows": list(self.basis.labels()),
            "columns": [str(v) for v in self.columns],
            "entries": [list(row) for row in self.entries],
        }


def boundary_matrix(g: Ultragraph, atoms: AtomTable | None = None) -> BoundaryMatrix:
    if atoms is None:
        atoms = compute_atoms(g)
    key = g.universe.sort_key
    regular = sorted(g.regular_vertices(), key=key)

    touched: set[Vertex] = {v for v in regular if v.is_witness}
    finite_cells: dict[Omega, tuple[Vertex, ...]] = {}
    for w, cell in atoms.atoms.items():
        if cell.is_finite:
            members = tuple(sorted(cell.finite_vertices(), key=key))
            finite_cells[w] = members
            touched.update(v for v in members if v.is_witness)
    named = tuple(g.universe.vertex(lbl) for lbl in g.universe.named)
    basis = ZGBasis(
        named + tuple(sorted(touched, key=key)),
        atoms.delta,
        bool(g.universe.blocks),
    )

    entries = [[0] * len(regular) for _ in range(basis.size)]
    for col, v in enumerate(regular):
        entries[basis.row_of_vertex(v)][col] += 1
        for i, e in enumerate(g.edges):
            if e.source != v:
                continue
            m = e.multiplicity
            assert not isinstance(m, Infinite)  # v is regular
            for w in atoms.omegas_of_edge(i):
                if w in finite_cells:
                    for x in finite_cells[w]:
                        entries[basis.row_of_vertex(x)][col] -= m
                else:
                    entries[basis.row_of_omega(w)][col] -= m
    return BoundaryMatrix(
        basis, tuple(regular), tuple(tuple(row) for row in entries)
    )


@dataclass(frozen=True)
class KGroups:
    k0_free_rank: int | Infinite
    k0_torsion: tuple[int, ...]
    k1_free_rank: int

    def to_json(self) -> dict:
        return {
            "K0": {
                "free_rank": card_to_json(self.k0_free_rank),
                "torsion": list(self.k0_torsion),
            },
            "K1": {"free_rank": self.k1_free_rank},
        }

    def __str__(self) -> str:
        def free(rank: int | Infinite) -> list[str]:
            if isinstance(rank, Infinite):
                return ["Z^(inf)"]
            return ["Z"] * rank if rank else []

        k0 = free(self.k0_free_rank) + [f"Z/{d}" for d in self.k0_torsion]
        k1 = free(self.k1_free_rank)
        return "K0 = {}, K1 = {}".format(
            " + ".join(k0) or "0", " + ".join(k1) or "0"
        )


def k_groups(g: Ultragraph) -> KGroups:
    """K0 as cokernel and K1 as kernel of the boundary matrix."""
    m = boundary_matrix(g)
    snf = smith_normal_form([list(row) for row in m.entries])
    free: int | Infinite
    if m.basis.untouched_infinite:
        free = INF
    else:
        free = snf.rows - snf.rank
    torsion = tuple(d for d in snf.factors if d > 1)
    return KGroups(free, torsion, snf.cols - snf.rank)
