"""Shared oracles and random generators for the test suite.

The oracles here deliberately avoid the library's own algorithms:

* truncated universes turn block arithmetic into plain Python frozensets,
* sympy provides an independent Smith normal form,
* admissible pairs are brute forced straight from the definitions,
* first-return paths are enumerated walk by walk.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass

from ultragraph import (
    INF,
    Edge,
    Infinite,
    Ultragraph,
    Vertex,
    VertexSet,
    VertexUniverse,
)

TAIL = -1  # stand-in index for the infinitely many unmentioned witnesses


# -- truncated concrete universes ---------------------------------------------

@dataclass(frozen=True)
class TruncatedUniverse:
    """Finite stand-in for a block universe.

    Per block: every witness index mentioned anywhere in the expressions
    under test, 12 fresh indices, and one TAIL element representing all
    remaining witnesses at once.  Any vertex set built from the mentioned
    data treats unmentioned witnesses uniformly, so the TAIL element is a
    faithful proxy for cofinite membership.
    """

    universe: VertexUniverse
    elements: dict

    @classmethod
    def build(cls, universe: VertexUniverse, mentioned: dict) -> "TruncatedUniverse":
        table = {}
        for b in universe.blocks:
            ks = sorted(mentioned.get(b, ()))
            fresh = []
            k = 0
            while len(fresh) < 12:
                if k not in ks:
                    fresh.append(k)
                k += 1
            table[b] = tuple(ks) + tuple(fresh) + (TAIL,)
        return cls(universe, table)

    def concretize(self, s: VertexSet) -> frozenset:
        out = set()
        for label in self.universe.named:
            if s.contains(Vertex(label)):
                out.add(("named", label))
        for b, indices in self.elements.items():
            for k in indices:
                if k == TAIL:
                    if b in s.full_blocks:
                        out.add((b, TAIL))
                elif s.contains(Vertex(b, k)):
                    out.add((b, k))
        return frozenset(out)


# -- random structured data ---------------------------------------------------

def random_universe(rng: random.Random, max_named: int = 3,
                    max_blocks: int = 2, min_blocks: int = 0) -> VertexUniverse:
    named = tuple(f"v{i}" for i in range(rng.randint(1, max_named)))
    blocks = tuple(f"B{i}" for i in range(rng.randint(min_blocks, max_blocks)))
    return VertexUniverse(named, blocks)


def random_leaf(rng: random.Random, universe: VertexUniverse) -> VertexSet:
    if universe.blocks and rng.random() < 0.5:
        block = rng.choice(universe.blocks)
        removed = rng.sample(range(6), rng.randint(0, 3))
        return universe.block_set(block, removed)
    pool = [Vertex(n) for n in universe.named]
    for b in universe.blocks:
        pool.extend(Vertex(b, k) for k in range(6))
    picks = rng.sample(pool, rng.randint(0, min(4, len(pool))))
    return universe.finite_set(picks)


def random_expr(rng: random.Random, universe: VertexUniverse, depth: int):
    """An expression tree: ("leaf", VertexSet) or (op, left, right)."""
    if depth == 0 or rng.random() < 0.3:
        return ("leaf", random_leaf(rng, universe))
    op = rng.choice(["union", "inter", "diff"])
    return (op, random_expr(rng, universe, depth - 1),
            random_expr(rng, universe, depth - 1))


def eval_canonical(tree) -> VertexSet:
    if tree[0] == "leaf":
        return tree[1]
    left = eval_canonical(tree[1])
    right = eval_canonical(tree[2])
    if tree[0] == "union":
        return left | right
    if tree[0] == "inter":
        return left & right
    return left - right


def eval_concrete(tree, tu: TruncatedUniverse) -> frozenset:
    if tree[0] == "leaf":
        return tu.concretize(tree[1])
    left = eval_concrete(tree[1], tu)
    right = eval_concrete(tree[2], tu)
    if tree[0] == "union":
        return left | right
    if tree[0] == "inter":
        return left & right
    return left - right


def mentioned_in_tree(tree, acc: dict) -> dict:
    if tree[0] == "leaf":
        for b, ks in tree[1].mentioned_indices().items():
            acc.setdefault(b, set()).update(ks)
    else:
        mentioned_in_tree(tree[1], acc)
        mentioned_in_tree(tree[2], acc)
    return acc


def random_ultragraph(
    rng: random.Random,
    max_named: int = 3,
    max_blocks: int = 2,
    max_edges: int = 4,
    allow_inf_mult: bool = True,
    expr_depth: int = 2,
    min_blocks: int = 0,
) -> Ultragraph:
    universe = random_universe(rng, max_named, max_blocks, min_blocks)
    edges = []
    for i in range(rng.randint(1, max_edges)):
        if universe.blocks and rng.random() < 0.2:
            source = universe.witness(rng.choice(universe.blocks), rng.randint(0, 4))
        else:
            source = universe.vertex(rng.choice(universe.named))
        rng_set = universe.empty_set()
        while not rng_set:
            rng_set = eval_canonical(random_expr(rng, universe, expr_depth))
        roll = rng.random()
        if allow_inf_mult and roll < 0.12:
            mult: int | Infinite = INF
        elif roll < 0.35:
            mult = rng.randint(2, 3)
        else:
            mult = 1
        edges.append(Edge(f"e{i}", source, rng_set, mult))
    return Ultragraph(universe, tuple(edges))


def random_finite_ultragraph(rng: random.Random, max_named: int = 4,
                             max_edges: int = 4) -> Ultragraph:
    """No blocks, for brute-force lattice comparison."""
    universe = VertexUniverse(
        tuple(f"v{i}" for i in range(rng.randint(1, max_named))), ()
    )
    vertices = [Vertex(n) for n in universe.named]
    edges = []
    for i in range(rng.randint(1, max_edges)):
        members = rng.sample(vertices, rng.randint(1, len(vertices)))
        roll = rng.random()
        if roll < 0.15:
            mult: int | Infinite = INF
        elif roll < 0.3:
            mult = rng.randint(2, 3)
        else:
            mult = 1
        edges.append(Edge(
            f"e{i}", rng.choice(vertices), universe.finite_set(members), mult
        ))
    return Ultragraph(universe, tuple(edges))


def random_el_matrix(rng: random.Random, n: int) -> list[list[int]]:
    rows = []
    for _ in range(n):
        row = [rng.randint(0, 1) for _ in range(n)]
        if not any(row):
            row[rng.randrange(n)] = 1
        rows.append(row)
    return rows


# -- independent Smith normal form (sympy) -------------------------------------

def snf_oracle(rows: list[list[int]]) -> tuple[int, tuple[int, ...], int]:
    """(rank, torsion factors > 1, kernel rank) straight from sympy."""
    from sympy import ZZ, Matrix
    from sympy.matrices.normalforms import invariant_factors

    if not rows or not rows[0]:
        return 0, (), len(rows[0]) if rows else 0
    m = Matrix(rows)
    factors = [abs(int(d)) for d in invariant_factors(m, domain=ZZ)]
    nonzero = [d for d in factors if d]
    torsion = tuple(d for d in nonzero if d > 1)
    return len(nonzero), torsion, m.cols - len(nonzero)


def k_oracle_exel_laca(matrix: list[list[int]]) -> tuple[int, tuple[int, ...], int]:
    """(K0 free rank, K0 torsion, K1 free rank) of the classical matrix
    answer: cokernel and kernel of I - A^t."""
    n = len(matrix)
    m = [[(1 if i == j else 0) - matrix[j][i] for j in range(n)] for i in range(n)]
    rank, torsion, kernel = snf_oracle(m)
    return n - rank, torsion, kernel


# -- brute-force admissible pairs (finite universes) ---------------------------

def brute_admissible_pairs(g: Ultragraph) -> set[tuple[frozenset, frozenset]]:
    """Every (W, V) tested directly against the definitions.

    Only valid without blocks.  Returns {(frozenset of vertex labels W,
    frozenset of vertex labels V)}.
    """
    assert not g.universe.blocks
    vertices = [Vertex(n) for n in g.universe.named]

    def members(s: VertexSet) -> frozenset:
        return frozenset(v for v in vertices if s.contains(v))

    def total_mult(edge_list) -> int | Infinite:
        total = 0
        for e in edge_list:
            if isinstance(e.multiplicity, Infinite):
                return INF
            total += e.multiplicity
        return total

    regular = set()
    for v in vertices:
        out = [e for e in g.edges if e.source == v]
        m = total_mult(out)
        if out and not isinstance(m, Infinite):
            regular.add(v)

    pairs = set()
    for picks in itertools.product([False, True], repeat=len(vertices)):
        w = frozenset(v for v, keep in zip(vertices, picks) if keep)
        if any(e.source in w and not members(e.range) <= w for e in g.edges):
            continue  # not hereditary
        saturated = True
        for v in regular:
            out = [e for e in g.edges if e.source == v]
            if all(members(e.range) <= w for e in out) and v not in w:
                saturated = False
                break
        if not saturated:
            continue
        breaking = []
        for v in vertices:
            if v in w:
                continue
            surviving = [
                e for e in g.edges
                if e.source == v and not members(e.range) <= w
            ]
            m = total_mult(surviving)
            if surviving and not isinstance(m, Infinite) and v not in regular:
                breaking.append(v)
        for size in range(len(breaking) + 1):
            for combo in itertools.combinations(breaking, size):
                pairs.add((
                    frozenset(str(v) for v in w),
                    frozenset(str(v) for v in combo),
                ))
    return pairs


def library_pairs_as_sets(g: Ultragraph, lattice) -> set[tuple[frozenset, frozenset]]:
    out = set()
    for p in lattice.pairs:
        w = frozenset(str(v) for v in p.ideal.w.finite_vertices())
        out.add((w, frozenset(str(v) for v in p.v)))
    return out


# -- brute-force first-return classification -----------------------------------

def brute_first_return(g: Ultragraph, v: Vertex) -> int:
    """0, 1, or 2 (meaning at least two), by enumerating walks.

    Walks are edge index sequences; extension follows range containment
    and never re-departs from v.  Enumeration is pruned by the remaining
    distance to an accepting edge and stops at the length bound
    2 * |edges| + 1; a walk revisiting one of its own nodes proves an
    infinite family.  Parallel copies multiply the count of a walk.
    """
    n = len(g.edges)
    bound = 2 * n + 1
    starts = [i for i, e in enumerate(g.edges) if e.source == v]
    accepts = {i for i, e in enumerate(g.edges) if e.range.contains(v)}
    succ = [
        [j for j, f in enumerate(g.edges)
         if f.source != v and e.range.contains(f.source)]
        for e in g.edges
    ]
    # distance to an accepting node, for pruning dead branches
    dist = {i: 0 for i in accepts}
    queue = deque(accepts)
    while queue:
        j = queue.popleft()
        for i in range(n):
            if j in succ[i] and i not in dist:
                dist[i] = dist[j] + 1
                queue.append(i)

    def weight(walk) -> int:
        total = 1
        for i in walk:
            m = g.edges[i].multiplicity
            total *= 2 if isinstance(m, Infinite) or m >= 2 else 1
        return min(total, 2)

    count = 0
    stack = [(i,) for i in reversed(starts) if i in dist]
    while stack:
        walk = stack.pop()
        if walk[-1] in accepts:
            count += weight(walk)
            if count >= 2:
                return 2
        if len(walk) >= bound:
            continue
        for j in succ[walk[-1]]:
            if j not in dist:
                continue
            if j in walk:
                # lasso: the loop both starts from v and reaches an
                # accepting edge, so paths can be pumped forever
                return 2
            stack.append(walk + (j,))
    return min(count, 2)
