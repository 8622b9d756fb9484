"""Non-commuting graphs, the AC property, and centralizer partitions.

For an AC-group the graph is complete multipartite, so it is never stored as
an adjacency matrix on the main path: the centralizer partition is the
primary representation and adjacency between cells is implied.  A small
generic SimpleGraph type backs the brute-force cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import AbelianGroup, NotACGroup, TooLarge
from .groups import FiniteGroup, Subgroup

GRAPH_ISO_MAX_VERTICES = 64


@dataclass(frozen=True, eq=False)
class SimpleGraph:
    """Undirected simple graph on 0..n-1 with a boolean adjacency matrix."""

    adjacency: np.ndarray

    def __post_init__(self):
        adj = self.adjacency
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be square")
        if adj.dtype != bool:
            object.__setattr__(self, "adjacency", adj.astype(bool))

    @property
    def n(self) -> int:
        return int(self.adjacency.shape[0])

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)


@dataclass(frozen=True, eq=False)
class NonCommutingGraph:
    """Graph on the non-central elements; x ~ y iff x*y != y*x."""

    group: FiniteGroup
    vertices: tuple[int, ...]

    @cached_property
    def degrees(self) -> dict[int, int]:
        n = self.group.order
        return {x: n - self.group.centralizer(x).order for x in self.vertices}

    def adjacent(self, x: int, y: int) -> bool:
        return x != y and not self.group.commuting_matrix[x, y]

    def to_simple_graph(self) -> SimpleGraph:
        idx = np.asarray(self.vertices)
        adj = ~self.group.commuting_matrix[np.ix_(idx, idx)]
        np.fill_diagonal(adj, False)
        return SimpleGraph(adj)


@dataclass(frozen=True)
class CentralizerPartition:
    """Distinct non-central-element centralizers with their vertex cells."""

    parts: tuple[tuple[Subgroup, tuple[int, ...]], ...]
    center_order: int

    @property
    def part_count(self) -> int:
        return len(self.parts)

    @cached_property
    def part_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(cell) for _, cell in self.parts))

    def cells(self) -> list[frozenset[int]]:
        return [frozenset(cell) for _, cell in self.parts]


@dataclass(frozen=True)
class GraphSignature:
    """Multiset of part sizes; a complete isomorphism invariant for the
    non-commuting graphs of AC-groups."""

    part_sizes: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return sum(self.part_sizes)


def build_graph(g: FiniteGroup) -> NonCommutingGraph:
    if g.is_abelian:
        raise AbelianGroup(f"{g.name} is abelian; its non-commuting graph is empty")
    vertices = tuple(np.flatnonzero(~g.center_mask).tolist())
    return NonCommutingGraph(g, vertices)


def _distinct_centralizers(g: FiniteGroup) -> list[tuple[Subgroup, np.ndarray]]:
    """(centralizer, cell) pairs, where a cell collects the non-central
    vertices sharing that centralizer.  Deterministic order: by first vertex."""
    commuting = g.commuting_matrix
    vertices = np.flatnonzero(~g.center_mask)
    rows = commuting[vertices]
    seen: dict[bytes, int] = {}
    cells: list[list[int]] = []
    reps: list[int] = []
    for i, v in enumerate(vertices.tolist()):
        key = rows[i].tobytes()
        at = seen.get(key)
        if at is None:
            seen[key] = len(cells)
            cells.append([v])
            reps.append(v)
        else:
            cells[at].append(v)
    out = []
    for rep, cell in zip(reps, cells):
        members = np.flatnonzero(commuting[rep])
        out.append((Subgroup(g, tuple(members.tolist())), np.asarray(cell)))
    return out


def is_ac(g: FiniteGroup) -> bool:
    """True iff every centralizer of a non-central element is abelian."""
    if g.is_abelian:
        raise AbelianGroup(f"{g.name} is abelian; the AC property is undefined")
    return all(c.is_abelian for c, _ in _distinct_centralizers(g))


def centralizer_partition(g: FiniteGroup) -> CentralizerPartition:
    if g.is_abelian:
        raise AbelianGroup(f"{g.name} is abelian")
    z = int(g.center_mask.sum())
    parts = []
    for cent, cell in _distinct_centralizers(g):
        if not cent.is_abelian:
            raise NotACGroup(
                f"{g.name}: centralizer of element {cell[0]} is non-abelian"
            )
        if cent.order - z != len(cell):
            raise NotACGroup(f"{g.name}: centralizer cells do not tile the vertices")
        parts.append((cent, tuple(int(v) for v in cell)))
    return CentralizerPartition(tuple(parts), z)


def clique_number(g: FiniteGroup) -> int:
    """Number of distinct centralizers; equals the clique number of the
    non-commuting graph for AC-groups."""
    return centralizer_partition(g).part_count


@dataclass(frozen=True)
class CliqueFormulaReport:
    part_count: int
    formula_value: int
    center_index: int
    centralizer_indices: tuple[int, ...]
    holds: bool
    mod_p: Optional[tuple[int, int, bool]]  # (p, count mod p, residue is 1)

    @property
    def ok(self) -> bool:
        return self.holds and (self.mod_p is None or self.mod_p[2])


def verify_clique_formula(g: FiniteGroup) -> CliqueFormulaReport:
    """Check part count = -[G:Z] + 1 + sum of [C:Z]; when G/Z is a p-group,
    also check part count = 1 mod p."""
    partition = centralizer_partition(g)
    z = partition.center_order
    center_index = g.order // z
    indices = tuple(cent.order // z for cent, _ in partition.parts)
    value = -center_index + 1 + sum(indices)
    holds = value == partition.part_count
    mod_p = None
    factors = _prime_power(center_index)
    if factors is not None:
        p = factors
        residue = partition.part_count % p
        mod_p = (p, residue, residue == 1)
    return CliqueFormulaReport(
        partition.part_count, value, center_index, indices, holds, mod_p
    )


def _prime_power(n: int) -> Optional[int]:
    """The prime p when n = p^k with k >= 1, else None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
        p += 1
    return n


def is_complete_multipartite(graph: SimpleGraph) -> Optional[list[list[int]]]:
    """Partition the vertices into non-adjacency classes, or None.

    Succeeds iff vertices with equal adjacency rows form independent sets
    that are completely joined to everything outside them; that is exactly
    the complete multipartite condition.
    """
    n = graph.n
    if n == 0:
        return None
    adj = graph.adjacency
    groups: dict[bytes, list[int]] = {}
    for v in range(n):
        groups.setdefault(adj[v].tobytes(), []).append(v)
    parts = []
    for members in groups.values():
        row = adj[members[0]]
        members_arr = np.asarray(members)
        if row[members_arr].any():
            return None  # an edge inside a would-be part
        outside = np.ones(n, dtype=bool)
        outside[members_arr] = False
        if not row[outside].all():
            return None  # a missing cross edge
        parts.append(members)
    parts.sort(key=lambda p: (len(p), p))
    return parts


def signature(g: FiniteGroup) -> GraphSignature:
    return GraphSignature(centralizer_partition(g).part_sizes)


def iso_ac(s1: GraphSignature, s2: GraphSignature) -> bool:
    """Exact graph-isomorphism decision for AC-groups: the part-size
    multisets coincide."""
    return s1.part_sizes == s2.part_sizes


def signature_report(g: FiniteGroup) -> dict:
    partition = centralizer_partition(g)
    return {
        "group": g.name,
        "order": g.order,
        "center": partition.center_order,
        "parts": [int(s) for s in partition.part_sizes],
    }


# ---------------------------------------------------------------------------
# generic brute-force isomorphism (cross-check oracle)


def _refine_colors(adj: np.ndarray, colors: np.ndarray) -> np.ndarray:
    n = len(colors)
    while True:
        keys = []
        for v in range(n):
            neigh = np.sort(colors[adj[v]]).tolist()
            keys.append((int(colors[v]), tuple(neigh)))
        uniq = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = np.asarray([uniq[k] for k in keys])
        if (new == colors).all():
            return colors
        colors = new


def graph_iso_general(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    """Exact isomorphism by backtracking with degree/color refinement.

    Raises TooLarge above 64 vertices; meant as a cross-check oracle for
    iso_ac and for small non-AC cases.
    """
    if g1.n > GRAPH_ISO_MAX_VERTICES or g2.n > GRAPH_ISO_MAX_VERTICES:
        raise TooLarge(f"graph isomorphism capped at {GRAPH_ISO_MAX_VERTICES} vertices")
    if g1.n != g2.n:
        return False
    n = g1.n
    if n == 0:
        return True
    if sorted(g1.degrees.tolist()) != sorted(g2.degrees.tolist()):
        return False
    a1, a2 = g1.adjacency, g2.adjacency
    c1 = _refine_colors(a1, g1.degrees.astype(np.int64))
    c2 = _refine_colors(a2, g2.degrees.astype(np.int64))
    if sorted(c1.tolist()) != sorted(c2.tolist()):
        return False

    order = sorted(range(n), key=lambda v: (np.count_nonzero(c1 == c1[v]), v))
    mapping = np.full(n, -1, dtype=np.int64)
    used = np.zeros(n, dtype=bool)

    def backtrack(i: int) -> bool:
        if i == n:
            return True
        u = order[i]
        for v in range(n):
            if used[v] or c2[v] != c1[u]:
                continue
            ok = True
            for w in range(n):
                mw = mapping[w]
                if mw >= 0 and a1[u, w] != a2[v, mw]:
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = v
            used[v] = True
            if backtrack(i + 1):
                return True
            mapping[u] = -1
            used[v] = False
        return False

    return backtrack(0)
