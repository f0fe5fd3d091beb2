"""Implication digraph of a 2-CNF and its SCC-based satisfiability test.

The digraph has 2n literal vertices.  Variable i occupies vertices 2i-2
(positive literal) and 2i-1 (negative literal), so complementation is a
single XOR with 1.  Every 2-clause (l1 v l2) inserts exactly the two
implication edges ~l1 -> l2 and ~l2 -> l1; multi-edges from repeated clauses
are retained, matching the with-replacement clause process.

The formula is satisfiable iff no variable shares a strongly connected
component with its own negation.  SCCs are computed by a single-pass
iterative Tarjan walk (explicit stacks, no recursion) so instances with
millions of literals do not overflow the interpreter stack.  Component ids
are numbered so that every condensation edge points from a smaller id to a
larger id; a satisfying assignment then falls out by making each literal TRUE
exactly when its component id exceeds its complement's.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .projection import TwoClause


class ResourceLimitError(RuntimeError):
    """An exhaustive routine was asked to exceed its desk-scale limits."""


def lit_to_vertex(lit: int) -> int:
    """Signed literal -> vertex id (positive literal of var i at 2i-2)."""
    return 2 * (abs(lit) - 1) + (0 if lit > 0 else 1)


def vertex_to_lit(v: int) -> int:
    var = v // 2 + 1
    return var if v % 2 == 0 else -var


@dataclass(frozen=True)
class ImplicationDigraph:
    """CSR adjacency over 2n literal vertices."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    clause_count: int

    @property
    def num_vertices(self) -> int:
        return 2 * self.n

    @property
    def edge_count(self) -> int:
        return int(self.indices.size)

    def out_neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]


def build_digraph(two_clauses: Sequence[TwoClause], n: int) -> ImplicationDigraph:
    """Assemble the digraph; every clause contributes its two implications."""
    if not two_clauses:
        lit_a = np.empty(0, dtype=np.int64)
        lit_b = np.empty(0, dtype=np.int64)
    else:
        lit_a = np.array([tc.lit_a for tc in two_clauses], dtype=np.int64)
        lit_b = np.array([tc.lit_b for tc in two_clauses], dtype=np.int64)
    return build_digraph_from_arrays(lit_a, lit_b, n)


def build_digraph_from_arrays(
    lit_a: np.ndarray, lit_b: np.ndarray, n: int
) -> ImplicationDigraph:
    """Vectorised digraph assembly from parallel signed-literal arrays."""
    if lit_a.shape != lit_b.shape:
        raise ValueError("literal arrays must have equal length")
    if lit_a.size and (np.abs(lit_a).max() > n or np.abs(lit_b).max() > n):
        raise ValueError("variable index exceeds n")
    if lit_a.size and (np.abs(lit_a).min() < 1 or np.abs(lit_b).min() < 1):
        raise ValueError("literals are nonzero signed variable indices")

    va = 2 * (np.abs(lit_a) - 1) + (lit_a < 0)
    vb = 2 * (np.abs(lit_b) - 1) + (lit_b < 0)
    src = np.concatenate([va ^ 1, vb ^ 1])
    dst = np.concatenate([vb, va])

    order = np.argsort(src, kind="stable")
    counts = np.bincount(src, minlength=2 * n)
    indptr = np.zeros(2 * n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return ImplicationDigraph(
        n=n,
        indptr=indptr,
        indices=dst[order].astype(np.int64),
        clause_count=int(lit_a.size),
    )


@dataclass(frozen=True)
class SccPartition:
    """Component id per literal vertex.

    Ids are assigned so that every edge of the condensation goes from a
    smaller id to a larger id (sink components carry the largest ids).
    """

    ids: np.ndarray
    count: int


def strongly_connected_components(g: ImplicationDigraph) -> SccPartition:
    """Iterative Tarjan over the 2n literal vertices."""
    nv = g.num_vertices
    indptr = g.indptr.tolist()
    adj = g.indices.tolist()

    index = [-1] * nv
    low = [0] * nv
    on_stack = bytearray(nv)
    comp = [-1] * nv
    scc_stack: list[int] = []
    counter = 0
    n_comps = 0

    work_v: list[int] = []
    work_ptr: list[int] = []

    for root in range(nv):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        scc_stack.append(root)
        on_stack[root] = 1
        work_v.append(root)
        work_ptr.append(indptr[root])
        while work_v:
            v = work_v[-1]
            ptr = work_ptr[-1]
            if ptr < indptr[v + 1]:
                work_ptr[-1] = ptr + 1
                w = adj[ptr]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    scc_stack.append(w)
                    on_stack[w] = 1
                    work_v.append(w)
                    work_ptr.append(indptr[w])
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                work_v.pop()
                work_ptr.pop()
                if work_v:
                    parent = work_v[-1]
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                if low[v] == index[v]:
                    while True:
                        w = scc_stack.pop()
                        on_stack[w] = 0
                        comp[w] = n_comps
                        if w == v:
                            break
                    n_comps += 1

    # Tarjan finishes sink components first; flip ids so condensation edges
    # run small -> large.
    ids = np.array([n_comps - 1 - c for c in comp], dtype=np.int64)
    return SccPartition(ids=ids, count=n_comps)


def is_satisfiable(
    g: ImplicationDigraph, partition: Optional[SccPartition] = None
) -> bool:
    """True iff no variable sits in the same SCC as its negation."""
    p = partition if partition is not None else strongly_connected_components(g)
    return bool((p.ids[0::2] != p.ids[1::2]).all())


def extract_assignment(
    g: ImplicationDigraph, partition: Optional[SccPartition] = None
) -> Optional[np.ndarray]:
    """A satisfying assignment, or None when the certificate fails.

    Literal TRUE iff its component id is greater than its complement's; with
    the small->large condensation numbering this always satisfies every
    inserted 2-clause.
    """
    p = partition if partition is not None else strongly_connected_components(g)
    pos = p.ids[0::2]
    neg = p.ids[1::2]
    if (pos == neg).any():
        return None
    return pos > neg


def satisfies_two_clauses(
    assignment: np.ndarray, lit_a: np.ndarray, lit_b: np.ndarray
) -> bool:
    """Check an assignment against parallel 2-clause literal arrays."""
    sat_a = assignment[np.abs(lit_a) - 1] == (lit_a > 0)
    sat_b = assignment[np.abs(lit_b) - 1] == (lit_b > 0)
    return bool((sat_a | sat_b).all())


@dataclass(frozen=True)
class BicycleCount:
    """Number of bicycles in the formula keyed by bicycle length (edge count)."""

    counts: dict[int, int]

    def total(self) -> int:
        return sum(self.counts.values())


def count_bicycles(
    two_clauses: Sequence[TwoClause], n: int, t_max: int
) -> BicycleCount:
    """Exhaustively count bicycles with inner paths of t = 2..t_max literals.

    A bicycle of length t+1 is a tuple (v, l1, ..., lt, w) where l1..lt are
    strongly distinct literals (pairwise distinct variables), the clauses
    (~l_i v l_{i+1}) chain the inner path, v and w are drawn from
    {l1..lt, ~l1..~lt}, and the end clauses (~v v l1) and (~lt v w) are also
    present.  Endpoints are deliberately drawn from path literals and their
    complements; strong distinctness binds only the inner path.

    Intended for desk scale only: n <= 12 and t_max <= 8 are enforced.
    """
    if n > 12 or t_max > 8:
        raise ResourceLimitError(
            f"bicycle enumeration limited to n <= 12, t_max <= 8 "
            f"(got n={n}, t_max={t_max})"
        )
    if t_max < 2:
        return BicycleCount(counts={})

    present: set[tuple[int, int]] = set()
    for tc in two_clauses:
        a, b = tc.lit_a, tc.lit_b
        present.add((a, b) if a <= b else (b, a))

    def has_clause(x: int, y: int) -> bool:
        return ((x, y) if x <= y else (y, x)) in present

    literals = [l for v in range(1, n + 1) for l in (v, -v)]
    counts = {t + 1: 0 for t in range(2, t_max + 1)}

    def endpoint_factor(path: list[int]) -> int:
        starts = 0
        ends = 0
        head, tail = path[0], path[-1]
        for l in path:
            for cand in (l, -l):
                if has_clause(-cand, head):
                    starts += 1
                if has_clause(-tail, cand):
                    ends += 1
        return starts * ends

    def extend(path: list[int], used_vars: set[int]) -> None:
        t = len(path)
        if t >= 2:
            counts[t + 1] += endpoint_factor(path)
        if t == t_max:
            return
        last = path[-1]
        for nxt in literals:
            if abs(nxt) in used_vars:
                continue
            if has_clause(-last, nxt):
                used_vars.add(abs(nxt))
                path.append(nxt)
                extend(path, used_vars)
                path.pop()
                used_vars.remove(abs(nxt))

    for start in literals:
        extend([start], {abs(start)})
    return BicycleCount(counts=counts)


def max_reachable_set_size(g: ImplicationDigraph) -> int:
    """Largest number of other vertices reachable from any literal vertex."""
    nv = g.num_vertices
    indptr = g.indptr.tolist()
    adj = g.indices.tolist()
    stamp = [-1] * nv
    best = 0
    for s in range(nv):
        stamp[s] = s
        size = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for ptr in range(indptr[v], indptr[v + 1]):
                w = adj[ptr]
                if stamp[w] != s:
                    stamp[w] = s
                    size += 1
                    stack.append(w)
        if size > best:
            best = size
    return best
