"""Arithmetic feasibility systems for graph-isomorphic group pairs.

Both systems compare a nilpotent side G = P x A (parameters p, n, r, a with
[G:Z(G)] = p^n, |Z(P)| = p^r, |A| = a) against a hypothetical non-nilpotent
partner H with an isomorphic non-commuting graph.  Matching vertex counts,
degrees and part sizes turn into exact integer equations; the enumerators
search bounded parameter boxes for assignments satisfying all of them, and
the claim verifiers assert the structural consequences that every feasible
assignment must exhibit.  All arithmetic is exact (Python integers).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional

from .errors import BoundsTooLarge, InvalidTuple, NotFeasible
from .groups import is_prime, p_valuation

SEARCH_BUDGET = 10**10


def _primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def _is_power_of(value: int, p: int) -> Optional[int]:
    """The exponent k >= 1 with value = p^k, or None."""
    if value < p:
        return None
    k = 0
    while value % p == 0:
        value //= p
        k += 1
    return k if value == 1 else None


@dataclass(frozen=True)
class ConstraintResult:
    constraint: str
    satisfied: bool
    lhs: int
    rhs: int

    def to_json(self) -> dict:
        return {
            "constraint": self.constraint,
            "satisfied": self.satisfied,
            "lhs": int(self.lhs),
            "rhs": int(self.rhs),
        }


@dataclass(frozen=True)
class FeasibilityReport:
    constraints: tuple[ConstraintResult, ...]

    @property
    def feasible(self) -> bool:
        return all(c.satisfied for c in self.constraints)

    def failing(self) -> tuple[str, ...]:
        return tuple(c.constraint for c in self.constraints if not c.satisfied)

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "constraints": [c.to_json() for c in self.constraints],
        }


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    holds: bool


# ---------------------------------------------------------------------------
# the H-of-Frobenius-type system


@dataclass(frozen=True)
class Type3Tuple:
    """Parameters pairing a nilpotent G = P x A against a partner H whose
    central quotient is Frobenius with kernel index q^f and complement order c.

    Quantities: [G:Z(G)] = p^n, |Z(P)| = p^r, |A| = a; |Z(H)| = b q^u with
    gcd(b, q) = 1, [F:Z(H)] = q^f, [K:Z(H)] = c; the image of the complement
    generator has centralizer index p^m in G, and each family pair (t_i, s_i)
    matches a kernel-part size q^(t_i) against a G-part size p^(s_i).
    """

    p: int
    q: int
    n: int
    r: int
    a: int
    f: int
    u: int
    b: int
    c: int
    m: int
    families: tuple[tuple[int, int], ...]

    def validate(self) -> None:
        t = self
        if not is_prime(t.p) or not is_prime(t.q):
            raise InvalidTuple(f"p={t.p} and q={t.q} must be prime")
        if t.p == t.q:
            raise InvalidTuple("p and q must be distinct primes")
        if t.n < 1 or t.f < 1 or t.a < 1 or t.b < 1 or t.r < 0 or t.u < 0:
            raise InvalidTuple("n, f >= 1; a, b >= 1; r, u >= 0")
        if t.c < 2:
            raise InvalidTuple(f"complement index c must be >= 2, got {t.c}")
        if not 1 <= t.m <= t.n - 1:
            raise InvalidTuple(f"m must satisfy 1 <= m <= n-1, got m={t.m}, n={t.n}")
        if math.gcd(t.a, t.p) != 1:
            raise InvalidTuple("a must be coprime to p")
        if math.gcd(t.b, t.q) != 1:
            raise InvalidTuple("b must be coprime to q")
        if (t.q**t.f - 1) % t.c != 0:
            raise InvalidTuple("c must divide q^f - 1")
        if not t.families:
            raise InvalidTuple("at least one family pair (t_i, s_i) is required")
        ts = [x for x, _ in t.families]
        ss = [y for _, y in t.families]
        if len(set(ts)) != len(ts) or len(set(ss)) != len(ss):
            raise InvalidTuple("family entries must be pairwise distinct")
        for ti, si in t.families:
            if not 1 <= ti <= t.f:
                raise InvalidTuple(f"family t={ti} outside 1..f={t.f}")
            if not 1 <= si <= t.n - 1:
                raise InvalidTuple(f"family s={si} outside 1..n-1={t.n - 1}")
            if si == t.m:
                raise InvalidTuple(f"family s={si} collides with m")

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "n": self.n,
            "r": self.r,
            "a": self.a,
            "f": self.f,
            "u": self.u,
            "b": self.b,
            "c": self.c,
            "m": self.m,
            "families": [[t, s] for t, s in self.families],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Type3Tuple":
        return cls(
            p=data["p"], q=data["q"], n=data["n"], r=data["r"], a=data["a"],
            f=data["f"], u=data["u"], b=data["b"], c=data["c"], m=data["m"],
            families=tuple((int(t), int(s)) for t, s in data["families"]),
        )

    def sort_key(self) -> tuple:
        return (self.p, self.q, self.n, self.f, self.m, self.r, self.u,
                self.c, self.a, self.b, self.families)


def check_type3(t: Type3Tuple) -> FeasibilityReport:
    """Evaluate every size equation for the tuple with exact arithmetic.

    The equations pair |H|, |K|, |C_H(x_i)|, |Z(H)| differences against the
    corresponding |G|, |M|, |C_G(y_i)|, |Z(G)| differences; the final ratio
    identity eliminates |Z(H)| between two of them.
    """
    t.validate()
    p, q, n, r, a, f, u, b, c, m = t.p, t.q, t.n, t.r, t.a, t.f, t.u, t.b, t.c, t.m
    qu_b = q**u * b
    pr_a = p**r * a
    results = [
        ConstraintResult("h_z", qu_b * (q**f * c - 1) == pr_a * (p**n - 1),
                         qu_b * (q**f * c - 1), pr_a * (p**n - 1)),
        ConstraintResult("h_k", qu_b * c * (q**f - 1) == p**(m + r) * a * (p**(n - m) - 1),
                         qu_b * c * (q**f - 1), p**(m + r) * a * (p**(n - m) - 1)),
        ConstraintResult("k_z", q**u * (b * c - b) == pr_a * (p**m - 1),
                         q**u * (b * c - b), pr_a * (p**m - 1)),
        ConstraintResult(
            "ratio",
            p**m * (p**(n - m) - 1) * (c - 1) == (p**m - 1) * c * (q**f - 1),
            p**m * (p**(n - m) - 1) * (c - 1),
            (p**m - 1) * c * (q**f - 1),
        ),
    ]
    for i, (ti, si) in enumerate(t.families):
        results.append(
            ConstraintResult(
                f"x_z[{i}]",
                qu_b * (q**ti - 1) == pr_a * (p**si - 1),
                qu_b * (q**ti - 1),
                pr_a * (p**si - 1),
            )
        )
        results.append(
            ConstraintResult(
                f"k_x[{i}]",
                q**u * (b * c - b * q**ti) == pr_a * (p**m - p**si),
                q**u * (b * c - b * q**ti),
                pr_a * (p**m - p**si),
            )
        )
        results.append(
            ConstraintResult(
                f"h_x[{i}]",
                q**(u + ti) * b * (q**(f - ti) * c - 1)
                == p**(r + si) * a * (p**(n - si) - 1),
                q**(u + ti) * b * (q**(f - ti) * c - 1),
                p**(r + si) * a * (p**(n - si) - 1),
            )
        )
    return FeasibilityReport(tuple(results))


def verify_claims_type3(t: Type3Tuple) -> tuple[ClaimResult, ...]:
    """Assert the consequences every feasible tuple must satisfy.

    Raises NotFeasible if the tuple does not satisfy the equation system.
    A False entry on a feasible tuple indicates an implementation bug, since
    the claims are theorems about the system.
    """
    report = check_type3(t)
    if not report.feasible:
        raise NotFeasible(f"tuple fails constraints: {report.failing()}")
    p, q, n, r, a, f, u, b, c, m = t.p, t.q, t.n, t.r, t.a, t.f, t.u, t.b, t.c, t.m
    claims = [
        ClaimResult("distinct_primes", p != q),
        ClaimResult(
            "bc_p_part_matches_b",
            all(
                ((b * c) % p**d == 0) == (b % p**d == 0)
                for d in range(1, r + 1)
            ),
        ),
        ClaimResult("no_p_r1_in_bc", (b * c) % p**(r + 1) != 0),
        ClaimResult("no_q_u1_in_a", a % q**(u + 1) != 0),
        ClaimResult("c_coprime_p", math.gcd(c, p) == 1),
        ClaimResult(
            "ratio_identity",
            p**m * (p**(n - m) - 1) * (c - 1) == (p**m - 1) * c * (q**f - 1),
        ),
        ClaimResult("n_gt_2m", n > 2 * m),
        ClaimResult("chain_c_pm_qf_pnm", c < p**m < q**f < p**(n - m)),
        ClaimResult("center_growth", q**u * b > p**r * a),
        ClaimResult("c_below_qf_minus_1", c < q**f - 1),
        ClaimResult("pm_divides_qf_minus_1", (q**f - 1) % p**m == 0),
        ClaimResult("n_gt_4", n > 4),
        ClaimResult("m_not_n_minus_1", m != n - 1),
    ]
    for i, (ti, si) in enumerate(t.families):
        claims.append(ClaimResult(f"n_gt_2s[{i}]", n > 2 * si))
        claims.append(ClaimResult(f"ps_gt_qt[{i}]", p**si > q**ti))
        claims.append(ClaimResult(f"s_not_n_minus_1[{i}]", si != n - 1))
        claims.append(
            ClaimResult(
                f"ps_divides_tail[{i}]",
                (q**(f - ti) * c - 1) % p**si == 0
                and p**si <= q**(f - ti) * c - 1,
            )
        )
    return tuple(claims)


# ---------------------------------------------------------------------------
# bounded enumeration, sharded by (p, q, n, f)


@dataclass(frozen=True)
class Type3Bounds:
    p_max: int = 7
    q_max: int = 7
    n_max: int = 8
    f_max: int = 4
    a_max: int = 50
    b_max: int = 50
    c_max: int = 50
    r_max: int = 3
    u_max: int = 3
    v_max: int = 3

    @classmethod
    def from_json(cls, data: dict) -> "Type3Bounds":
        known = {f.name for f in cls.__dataclass_fields__.values()}  # type: ignore[attr-defined]
        unknown = set(data) - known
        if unknown:
            raise InvalidTuple(f"unknown bounds fields: {sorted(unknown)}")
        return cls(**{k: int(v) for k, v in data.items()})

    def to_json(self) -> dict:
        return {
            "p_max": self.p_max, "q_max": self.q_max, "n_max": self.n_max,
            "f_max": self.f_max, "a_max": self.a_max, "b_max": self.b_max,
            "c_max": self.c_max, "r_max": self.r_max, "u_max": self.u_max,
            "v_max": self.v_max,
        }

    def fingerprint(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def type3_shards(bounds: Type3Bounds) -> list[tuple[int, int, int, int]]:
    """The deterministic (p, q, n, f) shard list, outer loop order."""
    shards = []
    for p in _primes_upto(bounds.p_max):
        for q in _primes_upto(bounds.q_max):
            if p == q:
                continue
            for n in range(1, bounds.n_max + 1):
                for f in range(1, bounds.f_max + 1):
                    shards.append((p, q, n, f))
    return shards


def estimate_type3_work(bounds: Type3Bounds) -> int:
    """Candidate assignments the solver will visit (not the raw product
    space: b is solved from the equations rather than scanned)."""
    shards = len(type3_shards(bounds))
    per_shard = (
        max(0, bounds.n_max - 1)
        * (bounds.r_max + 1)
        * (bounds.u_max + 1)
        * bounds.c_max
    )
    return shards * per_shard


def enumerate_type3_shard(
    bounds: Type3Bounds, shard: tuple[int, int, int, int]
) -> tuple[list[Type3Tuple], int]:
    """All feasible tuples in one (p, q, n, f) shard, plus the scan count.

    Solving strategy: the k_z and h_k equations both fix the ratio b/a, so a
    core assignment (m, r, u, c) is viable only when the two ratios agree
    (that agreement is exactly the ratio identity); then (a, b) ranges over
    integer multiples of the reduced ratio, and each family pair (t, s) must
    solve its own part-size equation, which no longer involves a or b.
    """
    p, q, n, f = shard
    scanned = 0
    found: list[Type3Tuple] = []
    qf = q**f
    c_values = [c for c in range(2, bounds.c_max + 1) if (qf - 1) % c == 0]
    for m in range(1, n):
        for r in range(bounds.r_max + 1):
            for u in range(bounds.u_max + 1):
                for c in c_values:
                    scanned += 1
                    # k_z:  q^u b (c-1) = p^r a (p^m - 1)
                    num1, den1 = p**r * (p**m - 1), q**u * (c - 1)
                    # h_k:  q^u b c (q^f-1) = p^(m+r) a (p^(n-m) - 1)
                    num2, den2 = p**(m + r) * (p**(n - m) - 1), q**u * c * (qf - 1)
                    if num1 * den2 != num2 * den1:
                        continue
                    g = math.gcd(num1, den1)
                    b_unit, a_unit = num1 // g, den1 // g
                    if b_unit % q == 0 or a_unit % p == 0:
                        continue  # no multiple can satisfy the gcd conditions
                    fam_candidates = []
                    pr_q = p**r * a_unit  # p^r * a and q^u * b scale together
                    qu_b = q**u * b_unit
                    for t_exp in range(1, f + 1):
                        # x_z: q^u b (q^t - 1) = p^r a (p^s - 1)
                        lhs = qu_b * (q**t_exp - 1)
                        quot, rem = divmod(lhs, pr_q)
                        if rem:
                            continue
                        s_exp = _is_power_of(quot + 1, p)
                        if s_exp is None or not 1 <= s_exp <= n - 1 or s_exp == m:
                            continue
                        fam_candidates.append((t_exp, s_exp))
                    if not fam_candidates:
                        continue
                    k = 1
                    while k * a_unit <= bounds.a_max and k * b_unit <= bounds.b_max:
                        a_val, b_val = k * a_unit, k * b_unit
                        k += 1
                        if math.gcd(a_val, p) != 1 or math.gcd(b_val, q) != 1:
                            continue
                        for size in range(1, min(bounds.v_max, len(fam_candidates)) + 1):
                            from itertools import combinations

                            for fam in combinations(fam_candidates, size):
                                candidate = Type3Tuple(
                                    p=p, q=q, n=n, r=r, a=a_val, f=f, u=u,
                                    b=b_val, c=c, m=m, families=fam,
                                )
                                if check_type3(candidate).feasible:
                                    found.append(candidate)
    return found, scanned


def enumerate_type3(
    bounds: Type3Bounds,
    budget: int = SEARCH_BUDGET,
    force: bool = False,
    jobs: int = 1,
) -> tuple[list[Type3Tuple], int]:
    """Exhaustively enumerate feasible tuples within bounds.

    Returns (tuples, scanned) with tuples in deterministic shard order.
    Raises BoundsTooLarge when the work estimate exceeds the budget and
    force is not set.
    """
    est = estimate_type3_work(bounds)
    if est > budget and not force:
        raise BoundsTooLarge(f"estimated work {est} exceeds budget {budget}")
    shards = type3_shards(bounds)
    out: list[Type3Tuple] = []
    scanned = 0
    for tuples, count in _run_shards(bounds, shards, jobs):
        out.extend(tuples)
        scanned += count
    return out, scanned


def _run_shards(
    bounds: Type3Bounds, shards: list[tuple[int, int, int, int]], jobs: int
) -> Iterator[tuple[list[Type3Tuple], int]]:
    """Yield per-shard results in shard order, optionally in parallel."""
    if jobs <= 1 or len(shards) < 2:
        for shard in shards:
            yield enumerate_type3_shard(bounds, shard)
        return
    from concurrent.futures import ProcessPoolExecutor
    from functools import partial

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(
            partial(enumerate_type3_shard, bounds), shards, chunksize=8
        )


# ---------------------------------------------------------------------------
# resumable searches (cursor file + appendable NDJSON results)


@dataclass
class SearchCursor:
    completed_shards: int
    offset: int
    feasible: int
    scanned: int
    fingerprint: str

    def to_json(self) -> dict:
        return {
            "completed_shards": self.completed_shards,
            "offset": self.offset,
            "feasible": self.feasible,
            "scanned": self.scanned,
            "fingerprint": self.fingerprint,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SearchCursor":
        return cls(
            completed_shards=int(data["completed_shards"]),
            offset=int(data["offset"]),
            feasible=int(data["feasible"]),
            scanned=int(data["scanned"]),
            fingerprint=str(data["fingerprint"]),
        )


def run_type3_search(
    bounds: Type3Bounds,
    out_path: str,
    cursor_path: Optional[str] = None,
    resume: bool = False,
    jobs: int = 1,
    budget: int = SEARCH_BUDGET,
    force: bool = False,
    max_shards: Optional[int] = None,
    shard_sleep: float = 0.0,
) -> tuple[int, int]:
    """Stream feasible tuples to an NDJSON file with crash-safe resume.

    After each shard the results are flushed and the cursor file is updated
    with the byte offset of the output; resuming truncates the output back
    to the last recorded offset, so a killed run plus its resumed run emit
    exactly the bytes of an uninterrupted run.  Returns (feasible, scanned).
    """
    import os
    import time

    est = estimate_type3_work(bounds)
    if est > budget and not force:
        raise BoundsTooLarge(f"estimated work {est} exceeds budget {budget}")
    shards = type3_shards(bounds)
    fingerprint = bounds.fingerprint()
    start_shard, feasible, scanned = 0, 0, 0
    if resume:
        if cursor_path is None or not os.path.exists(cursor_path):
            raise InvalidTuple("resume requested but no cursor file exists")
        with open(cursor_path) as fh:
            cursor = SearchCursor.from_json(json.load(fh))
        if cursor.fingerprint != fingerprint:
            raise InvalidTuple("cursor was written for different bounds")
        start_shard = cursor.completed_shards
        feasible, scanned = cursor.feasible, cursor.scanned
        with open(out_path, "r+b") as fh:
            fh.truncate(cursor.offset)
        mode = "ab"
    else:
        mode = "wb"

    todo = shards[start_shard:]
    if max_shards is not None:
        todo = todo[:max_shards]
    completed = start_shard
    with open(out_path, mode) as fh:
        for tuples, count in _run_shards(bounds, todo, jobs):
            for t in tuples:
                fh.write((json.dumps(t.to_json(), sort_keys=False) + "\n").encode())
            fh.flush()
            os.fsync(fh.fileno())
            completed += 1
            feasible += len(tuples)
            scanned += count
            if cursor_path is not None:
                cursor = SearchCursor(completed, fh.tell(), feasible, scanned, fingerprint)
                tmp = cursor_path + ".tmp"
                with open(tmp, "w") as cfh:
                    json.dump(cursor.to_json(), cfh)
                os.replace(tmp, cursor_path)
            if shard_sleep:
                time.sleep(shard_sleep)
    return feasible, scanned


# ---------------------------------------------------------------------------
# the prime-index-subgroup system


@dataclass(frozen=True)
class Type1Tuple:
    """Parameters pairing G = P x A against a partner H with an abelian
    normal subgroup N of prime index q.

    zh = |Z(H)|, u is the exact q-adic valuation of zh, n_index = [N:Z(H)],
    t and u2 are the centralizer exponents on the G side: the graph images
    of N and of an outside element have centralizers of index p^t and p^u2
    over Z(G).
    """

    p: int
    q: int
    r: int
    a: int
    u: int
    zh: int
    n_index: int
    t: int
    u2: int

    def validate(self) -> None:
        if not is_prime(self.p) or not is_prime(self.q):
            raise InvalidTuple(f"p={self.p} and q={self.q} must be prime")
        if self.r < 0 or self.a < 1 or self.zh < 1:
            raise InvalidTuple("need r >= 0, a >= 1, zh >= 1")
        if math.gcd(self.a, self.p) != 1:
            raise InvalidTuple("a must be coprime to p")
        if self.n_index < 2:
            raise InvalidTuple(f"[N:Z(H)] must be >= 2, got {self.n_index}")
        if self.t < 1 or self.u2 < 1:
            raise InvalidTuple("t and u2 must be >= 1")
        if p_valuation(self.zh, self.q) != self.u:
            raise InvalidTuple(f"u={self.u} is not the q-part of zh={self.zh}")

    def to_json(self) -> dict:
        return {
            "p": self.p, "q": self.q, "r": self.r, "a": self.a, "u": self.u,
            "zh": self.zh, "n_index": self.n_index, "t": self.t, "u2": self.u2,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Type1Tuple":
        return cls(**{k: int(v) for k, v in data.items()})


def check_type1(t: Type1Tuple) -> FeasibilityReport:
    """Evaluate the size equalities for the prime-index system.

    Constraints:
      n_z      |N| - |Z(H)|    = |M| - |Z(G)|
      n_ch     |N| - |C_H(h)|  = |M| - |C_G(g)|
      ch_z     |C_H(h)| - |Z(H)| = |C_G(g)| - |Z(G)|
      h_n      |H| - |N| = |G| - |M|, i.e. the gap divided by p^(r+t) a must
               be one less than a positive power of p (that power is p^(n-t));
      clique   the centralizer counts match: [N:Z(H)] + 1 must be = 1 mod p
               because the partner's count is taken mod p from its p-group
               central quotient.
    """
    t.validate()
    p, q, r, a = t.p, t.q, t.r, t.a
    zg = p**r * a
    n_abs = t.n_index * t.zh
    ch = q * t.zh
    m_abs = p**t.t * zg
    cg = p**t.u2 * zg
    results = [
        ConstraintResult("n_z", n_abs - t.zh == m_abs - zg, n_abs - t.zh, m_abs - zg),
        ConstraintResult("n_ch", n_abs - ch == m_abs - cg, n_abs - ch, m_abs - cg),
        ConstraintResult("ch_z", ch - t.zh == cg - zg, ch - t.zh, cg - zg),
    ]
    gap = n_abs * (q - 1)  # |H| - |N| with |H| = q |N|
    quot, rem = divmod(gap, p**(r + t.t) * a)
    if rem == 0 and _is_power_of(quot + 1, p) is not None:
        results.append(ConstraintResult("h_n", True, gap, gap))
    else:
        results.append(ConstraintResult("h_n", False, gap, quot * p**(r + t.t) * a))
    results.append(
        ConstraintResult("clique", t.n_index % p == 0, t.n_index % p, 0)
    )
    return FeasibilityReport(tuple(results))


def verify_claims_type1(t: Type1Tuple) -> tuple[ClaimResult, ...]:
    """Consequences that every feasible tuple must satisfy: the two primes
    coincide, the outside centralizer is minimal (u2 = 1), and the centers
    match (zh = p^r a), which is the route to |G| = |H|."""
    report = check_type1(t)
    if not report.feasible:
        raise NotFeasible(f"tuple fails constraints: {report.failing()}")
    return (
        ClaimResult("p_divides_n_index", t.n_index % t.p == 0),
        ClaimResult("zh_p_part_is_r", p_valuation(t.zh, t.p) == t.r),
        ClaimResult("same_prime", t.p == t.q),
        ClaimResult("pt_divides_n_index", t.n_index % t.p**t.t == 0),
        ClaimResult("u2_is_1", t.u2 == 1),
        ClaimResult("equal_centers", t.zh == t.p**t.r * t.a),
    )


@dataclass(frozen=True)
class Type1Bounds:
    p_max: int = 7
    q_max: int = 7
    r_max: int = 3
    a_max: int = 50
    zh_max: int = 200
    n_index_max: int = 64

    @classmethod
    def from_json(cls, data: dict) -> "Type1Bounds":
        known = {f.name for f in cls.__dataclass_fields__.values()}  # type: ignore[attr-defined]
        unknown = set(data) - known
        if unknown:
            raise InvalidTuple(f"unknown bounds fields: {sorted(unknown)}")
        return cls(**{k: int(v) for k, v in data.items()})

    def to_json(self) -> dict:
        return {
            "p_max": self.p_max, "q_max": self.q_max, "r_max": self.r_max,
            "a_max": self.a_max, "zh_max": self.zh_max,
            "n_index_max": self.n_index_max,
        }


def enumerate_type1(bounds: Type1Bounds) -> tuple[list[Type1Tuple], int]:
    """All feasible tuples within bounds, solving zh and n_index from the
    equations (ch_z fixes zh given u2, n_z fixes n_index given t)."""
    found: list[Type1Tuple] = []
    scanned = 0
    for p in _primes_upto(bounds.p_max):
        for q in _primes_upto(bounds.q_max):
            for r in range(bounds.r_max + 1):
                for a in range(1, bounds.a_max + 1):
                    if math.gcd(a, p) != 1:
                        continue
                    zg = p**r * a
                    u2 = 1
                    while True:
                        num = zg * (p**u2 - 1)
                        if num // (q - 1) > bounds.zh_max and num % (q - 1) == 0:
                            break
                        if num > bounds.zh_max * (q - 1):
                            break
                        scanned += 1
                        zh, rem = divmod(num, q - 1)
                        if rem or zh < 1 or zh > bounds.zh_max:
                            u2 += 1
                            continue
                        u = p_valuation(zh, q)
                        t_exp = 1
                        while True:
                            n_num = zg * (p**t_exp - 1)
                            n_index_q, n_rem = divmod(n_num, zh)
                            n_index = n_index_q + 1
                            if n_index > bounds.n_index_max:
                                break
                            scanned += 1
                            if n_rem == 0 and n_index >= 2:
                                cand = Type1Tuple(
                                    p=p, q=q, r=r, a=a, u=u, zh=zh,
                                    n_index=n_index, t=t_exp, u2=u2,
                                )
                                if check_type1(cand).feasible:
                                    found.append(cand)
                            t_exp += 1
                        u2 += 1
    return found, scanned
