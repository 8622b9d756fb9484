"""Finite groups as dense Cayley tables with 0-based element indices.

Elements are the integers 0..n-1 with 0 always the identity; the table is a
contiguous n x n int32 array with table[x, y] = x*y.  Groups and subgroups are
immutable after construction, so every operation here is a pure read and safe
to share across threads or processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    IndexOutOfRange,
    InvalidTable,
    NotNormal,
    OrderCapExceeded,
)

DEFAULT_ORDER_CAP = 5000
ISOMORPHISM_ORDER_CAP = 200
SUBGROUP_ENUM_CAP = 200

# Associativity policy: exhaustive triple scan up to this order, randomized
# sampling (10 * n^2 triples, fixed seed) above it.
ASSOC_EXHAUSTIVE_MAX = 500
ASSOC_SAMPLE_FACTOR = 10
ASSOC_SAMPLE_SEED = 0xAC6


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Invariants: table[0, x] = table[x, 0] = x, every row and column is a
    permutation of 0..n-1, multiplication is associative and every element
    has a two-sided inverse.  Construction does not re-check these unless
    asked; use :func:`validate_group`.
    """

    def __init__(self, table: np.ndarray, name: str = "G"):
        table = np.ascontiguousarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise InvalidTable(f"table must be square, got shape {table.shape}")
        table.flags.writeable = False
        self.table = table
        self.order = int(table.shape[0])
        self.name = name

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def _check_index(self, x: int) -> None:
        if not 0 <= x < self.order:
            raise IndexOutOfRange(f"element index {x} not in 0..{self.order - 1}")

    def multiply(self, x: int, y: int) -> int:
        self._check_index(x)
        self._check_index(y)
        return int(self.table[x, y])

    @cached_property
    def inverses(self) -> np.ndarray:
        rows, cols = np.nonzero(self.table == 0)
        inv = np.empty(self.order, dtype=np.int32)
        inv[rows] = cols
        inv.flags.writeable = False
        return inv

    def inverse(self, x: int) -> int:
        self._check_index(x)
        return int(self.inverses[x])

    def element_order(self, x: int) -> int:
        self._check_index(x)
        k, cur = 1, x
        while cur != 0:
            cur = int(self.table[cur, x])
            k += 1
        return k

    @cached_property
    def element_orders(self) -> np.ndarray:
        """Orders of all elements, computed by iterating the power maps."""
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        cur = np.arange(n)
        k = 1
        while (orders == 0).any():
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            cur = self.table[cur, np.arange(n)]
            k += 1
        orders.flags.writeable = False
        return orders

    @cached_property
    def commuting_matrix(self) -> np.ndarray:
        """Boolean matrix with entry (x, y) true iff x*y = y*x."""
        mat = self.table == self.table.T
        mat.flags.writeable = False
        return mat

    @cached_property
    def center_mask(self) -> np.ndarray:
        mask = self.commuting_matrix.all(axis=1)
        mask.flags.writeable = False
        return mask

    def center(self) -> "Subgroup":
        return Subgroup(self, tuple(np.flatnonzero(self.center_mask).tolist()))

    def centralizer(self, x: int) -> "Subgroup":
        self._check_index(x)
        members = np.flatnonzero(self.table[x, :] == self.table[:, x])
        return Subgroup(self, tuple(members.tolist()))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(self.commuting_matrix.all())

    def conjugate(self, x: int, g: int) -> int:
        """g * x * g^-1."""
        return int(self.table[self.table[g, x], self.inverses[g]])

    def subgroup(self, elements: Sequence[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(int(e) for e in set(elements))))

    def commutator_row(self, x: int) -> np.ndarray:
        """[x, g] = x^-1 g^-1 x g for every g, as an index vector."""
        inv = self.inverses
        t = self.table
        return t[t[inv[x], inv], t[x, :]]


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a parent group, stored as a sorted element tuple."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        if not self.elements or self.elements[0] != 0:
            raise InvalidTable("a subgroup must contain the identity 0")

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    @cached_property
    def is_abelian(self) -> bool:
        idx = np.asarray(self.elements)
        block = self.parent.table[np.ix_(idx, idx)]
        return bool((block == block.T).all())

    def as_group(self, name: Optional[str] = None) -> FiniteGroup:
        """The subgroup as a standalone group; element 0 stays the identity."""
        idx = np.asarray(self.elements)
        pos = np.full(self.parent.order, -1, dtype=np.int32)
        pos[idx] = np.arange(len(idx), dtype=np.int32)
        block = pos[self.parent.table[np.ix_(idx, idx)]]
        if (block < 0).any():
            raise InvalidTable("element set is not closed under the product")
        return FiniteGroup(block, name or f"{self.parent.name}|{self.order}")


def is_subgroup_abelian(s: Subgroup) -> bool:
    return s.is_abelian


def subgroup_generated(g: FiniteGroup, seeds: Sequence[int]) -> Subgroup:
    """Closure of the seed set under the product (inverses come for free)."""
    for x in seeds:
        g._check_index(int(x))
    members = np.zeros(g.order, dtype=bool)
    members[0] = True
    new = np.unique(np.asarray(list(seeds) + [0], dtype=np.int64))
    members[new] = True
    table = g.table
    while new.size:
        all_idx = np.flatnonzero(members)
        prods = np.concatenate(
            [
                table[np.ix_(all_idx, new)].ravel(),
                table[np.ix_(new, all_idx)].ravel(),
            ]
        )
        prods = np.unique(prods)
        new = prods[~members[prods]]
        members[new] = True
    return Subgroup(g, tuple(np.flatnonzero(members).tolist()))


def is_normal(g: FiniteGroup, s: Subgroup) -> bool:
    """Conjugation scan: x^h stays in s for every h in g, x in s."""
    inv = g.inverses
    table = g.table
    member = np.zeros(g.order, dtype=bool)
    member[list(s.elements)] = True
    for x in s.elements:
        conj = table[table[:, x], inv]
        if not member[conj].all():
            return False
    return True


def derived_subgroup(g: FiniteGroup) -> Subgroup:
    """Subgroup generated by all commutators [x, y] = x^-1 y^-1 x y."""
    return _derived_of(g, np.arange(g.order))


def _derived_of(g: FiniteGroup, idx: np.ndarray) -> Subgroup:
    inv = g.inverses
    t = g.table
    left = t[np.ix_(inv[idx], inv[idx])]
    right = t[np.ix_(idx, idx)]
    comms = np.unique(t[left, right])
    return subgroup_generated(g, comms.tolist())


def derived_series(g: FiniteGroup) -> list[Subgroup]:
    """G >= G' >= G'' >= ... until the series stabilizes."""
    series = [Subgroup(g, tuple(range(g.order)))]
    while True:
        nxt = _derived_of(g, np.asarray(series[-1].elements))
        if nxt.elements == series[-1].elements:
            break
        series.append(nxt)
    return series


def upper_central_series(g: FiniteGroup) -> list[Subgroup]:
    """Z_0 = 1 <= Z_1 = Z(G) <= Z_2 <= ... computed by commutator membership.

    x lies in Z_{i+1} exactly when [x, h] lies in Z_i for every h.  The list
    starts with the trivial subgroup and ends where the series stabilizes.
    """
    n = g.order
    in_z = np.zeros(n, dtype=bool)
    in_z[0] = True
    series = [Subgroup(g, (0,))]
    if n == 1:
        return series
    while True:
        nxt = np.fromiter(
            (in_z[g.commutator_row(x)].all() for x in range(n)), dtype=bool, count=n
        )
        if (nxt == in_z).all():
            break
        in_z = nxt
        series.append(Subgroup(g, tuple(np.flatnonzero(in_z).tolist())))
        if in_z.all():
            break
    return series


def nilpotency_class(g: FiniteGroup) -> Optional[int]:
    """Least c with Z_c = G, or None when the series stabilizes early."""
    series = upper_central_series(g)
    if series[-1].order == g.order:
        return len(series) - 1
    return None


def is_nilpotent(g: FiniteGroup) -> bool:
    return nilpotency_class(g) is not None


class QuotientResult(NamedTuple):
    group: FiniteGroup
    coset_of: np.ndarray
    representatives: np.ndarray


def quotient(g: FiniteGroup, n: Subgroup, name: Optional[str] = None) -> QuotientResult:
    """Cayley table on the cosets of a normal subgroup; coset of 0 is index 0."""
    if not is_normal(g, n):
        raise NotNormal(f"subgroup of order {n.order} is not normal in {g.name}")
    elems = np.asarray(n.elements)
    coset_of = np.full(g.order, -1, dtype=np.int32)
    reps = []
    for x in range(g.order):
        if coset_of[x] < 0:
            coset_of[g.table[x, elems]] = len(reps)
            reps.append(x)
    reps_arr = np.asarray(reps, dtype=np.int32)
    q_table = coset_of[g.table[np.ix_(reps_arr, reps_arr)]]
    q = FiniteGroup(q_table, name or f"{g.name}/{n.order}")
    coset_of.flags.writeable = False
    return QuotientResult(q, coset_of, reps_arr)


def direct_product(
    g1: FiniteGroup,
    g2: FiniteGroup,
    name: Optional[str] = None,
    cap: int = DEFAULT_ORDER_CAP,
) -> FiniteGroup:
    """Product group on pairs, encoded as x1 * |G2| + x2."""
    n1, n2 = g1.order, g2.order
    if n1 * n2 > cap:
        raise OrderCapExceeded(f"direct product order {n1 * n2} exceeds cap {cap}")
    t1 = g1.table.astype(np.int64) * n2
    table = (t1[:, None, :, None] + g2.table[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    return FiniteGroup(table, name or f"{g1.name} x {g2.name}")


def conjugacy_classes(g: FiniteGroup) -> list[np.ndarray]:
    """Conjugacy classes as sorted index arrays; the identity class comes first."""
    inv = g.inverses
    table = g.table
    seen = np.zeros(g.order, dtype=bool)
    classes = []
    for x in range(g.order):
        if not seen[x]:
            orbit = np.unique(table[table[:, x], inv])
            seen[orbit] = True
            classes.append(orbit)
    return classes


def class_of(g: FiniteGroup, x: int) -> np.ndarray:
    return np.unique(g.table[g.table[:, x], g.inverses])


def all_subgroups(g: FiniteGroup, max_order: int = SUBGROUP_ENUM_CAP) -> list[Subgroup]:
    """Every subgroup, by breadth-first closure of one-element extensions."""
    if g.order > max_order:
        raise OrderCapExceeded(
            f"subgroup enumeration capped at order {max_order}, got {g.order}"
        )
    trivial = subgroup_generated(g, [])
    known = {trivial.elements: trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for s in frontier:
            inside = s.member_set
            for x in range(1, g.order):
                if x in inside:
                    continue
                bigger = subgroup_generated(g, list(s.elements) + [x])
                if bigger.elements not in known:
                    known[bigger.elements] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return sorted(known.values(), key=lambda s: (s.order, s.elements))


# ---------------------------------------------------------------------------
# isomorphism testing


def _greedy_generators(g: FiniteGroup) -> list[int]:
    gens: list[int] = []
    reached = subgroup_generated(g, [])
    for x in range(1, g.order):
        if x not in reached:
            gens.append(x)
            reached = subgroup_generated(g, gens)
            if reached.order == g.order:
                break
    return gens


def _extend_map(
    g1: FiniteGroup, g2: FiniteGroup, gens: Sequence[int], images: Sequence[int]
) -> Optional[np.ndarray]:
    """Grow the homomorphism determined by generator images; None on conflict.

    Returns the partial map defined on <gens>; it is injective by construction.
    """
    mapping = np.full(g1.order, -1, dtype=np.int32)
    used = np.zeros(g2.order, dtype=bool)
    mapping[0] = 0
    used[0] = True
    queue = [0]
    pairs = list(zip(gens, images))
    while queue:
        x = queue.pop()
        for gen, img in pairs:
            y = int(g1.table[x, gen])
            im = int(g2.table[mapping[x], img])
            if mapping[y] < 0:
                if used[im]:
                    return None
                mapping[y] = im
                used[im] = True
                queue.append(y)
            elif mapping[y] != im:
                return None
    return mapping


def _invariant_key(g: FiniteGroup, x: int, class_sizes: dict[int, int]) -> tuple:
    return (int(g.element_orders[x]), class_sizes[x], g.centralizer(x).order)


def is_isomorphic(
    g1: FiniteGroup, g2: FiniteGroup, cap: int = ISOMORPHISM_ORDER_CAP
) -> bool:
    """Exact isomorphism test by backtracking on generator images.

    Intended for desk-scale inputs; raises OrderCapExceeded above the cap.
    """
    if g1.order > cap or g2.order > cap:
        raise OrderCapExceeded(f"isomorphism test capped at order {cap}")
    if g1.order != g2.order:
        return False
    orders1 = sorted(g1.element_orders.tolist())
    orders2 = sorted(g2.element_orders.tolist())
    if orders1 != orders2:
        return False
    if g1.is_abelian != g2.is_abelian:
        return False
    if g1.is_abelian:
        # Finite abelian groups are determined by their element-order counts.
        return True
    if g1.center().order != g2.center().order:
        return False

    sizes1 = {}
    for cls in conjugacy_classes(g1):
        for x in cls.tolist():
            sizes1[x] = len(cls)
    sizes2 = {}
    for cls in conjugacy_classes(g2):
        for x in cls.tolist():
            sizes2[x] = len(cls)
    if sorted(sizes1.values()) != sorted(sizes2.values()):
        return False

    gens = _greedy_generators(g1)
    keys2: dict[tuple, list[int]] = {}
    for y in range(g2.order):
        keys2.setdefault(_invariant_key(g2, y, sizes2), []).append(y)
    candidate_lists = []
    for gen in gens:
        cands = keys2.get(_invariant_key(g1, gen, sizes1))
        if not cands:
            return False
        candidate_lists.append(cands)

    n = g1.order
    arange = np.arange(n)

    def backtrack(depth: int, chosen: list[int]) -> bool:
        if depth == len(gens):
            mapping = _extend_map(g1, g2, gens, chosen)
            if mapping is None or (mapping < 0).any():
                return False
            ok = (mapping[g1.table] == g2.table[np.ix_(mapping[arange], mapping[arange])]).all()
            return bool(ok)
        for cand in candidate_lists[depth]:
            if cand in chosen:
                continue
            partial = _extend_map(g1, g2, gens[: depth + 1], chosen + [cand])
            if partial is None:
                continue
            if backtrack(depth + 1, chosen + [cand]):
                return True
        return False

    return backtrack(0, [])


# ---------------------------------------------------------------------------
# validation


def _magma_generators(table: np.ndarray) -> list[int]:
    n = table.shape[0]
    members = np.zeros(n, dtype=bool)
    members[0] = True
    gens: list[int] = []

    def close(new_idx: np.ndarray) -> None:
        new = new_idx[~members[new_idx]]
        members[new] = True
        while new.size:
            all_idx = np.flatnonzero(members)
            prods = np.unique(
                np.concatenate(
                    [table[np.ix_(all_idx, new)].ravel(), table[np.ix_(new, all_idx)].ravel()]
                )
            )
            new = prods[~members[prods]]
            members[new] = True

    for x in range(1, n):
        if not members[x]:
            gens.append(x)
            close(np.asarray([x]))
    return gens


def validate_group(g: FiniteGroup, assoc: str = "auto") -> None:
    """Check the group axioms, raising InvalidTable on the first failure.

    assoc modes:
      "auto"       exhaustive triple scan up to order 500, else 10*n^2 sampled
                   triples with a fixed RNG seed;
      "exhaustive" full n^3 scan regardless of size;
      "sampled"    sampled triples regardless of size;
      "light"      generator-based associativity (exact: verifying the law for
                   every middle element of a magma generating set implies it
                   for all middles);
      "none"       skip the associativity check.
    """
    t = g.table
    n = g.order
    if t.min() < 0 or t.max() >= n:
        raise InvalidTable("table entries out of range")
    arange = np.arange(n)
    if not ((t[0, :] == arange).all() and (t[:, 0] == arange).all()):
        raise InvalidTable("element 0 is not a two-sided identity")
    if not ((np.sort(t, axis=1) == arange).all() and (np.sort(t, axis=0) == arange[:, None]).all()):
        raise InvalidTable("table is not a Latin square")
    inv = g.inverses
    if not (t[inv, arange] == 0).all() or not (t[arange, inv] == 0).all():
        raise InvalidTable("some element lacks a two-sided inverse")

    if assoc == "auto":
        assoc = "exhaustive" if n <= ASSOC_EXHAUSTIVE_MAX else "sampled"
    if assoc == "none":
        return
    if assoc == "exhaustive":
        for y in range(n):
            if not (t[t[:, y], :] == t[:, t[y, :]]).all():
                raise InvalidTable(f"associativity fails with middle element {y}")
    elif assoc == "sampled":
        rng = np.random.default_rng(ASSOC_SAMPLE_SEED)
        m = ASSOC_SAMPLE_FACTOR * n * n
        xs = rng.integers(0, n, size=m)
        ys = rng.integers(0, n, size=m)
        zs = rng.integers(0, n, size=m)
        if not (t[t[xs, ys], zs] == t[xs, t[ys, zs]]).all():
            raise InvalidTable("associativity fails on a sampled triple")
    elif assoc == "light":
        for gen in _magma_generators(t):
            if not (t[t[:, gen], :] == t[:, t[gen, :]]).all():
                raise InvalidTable(f"associativity fails with middle element {gen}")
    else:
        raise ValueError(f"unknown associativity mode {assoc!r}")


def is_valid_group(g: FiniteGroup, assoc: str = "auto") -> bool:
    try:
        validate_group(g, assoc=assoc)
    except InvalidTable:
        return False
    return True


# ---------------------------------------------------------------------------
# arithmetic helpers shared by classify / diophantine


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def p_valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
