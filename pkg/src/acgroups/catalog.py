"""Catalog generation, graph-pair search, and theorem verification.

The catalog instantiates concrete group families, analyzes each entry once
(AC property, solvability, nilpotency, graph signature, type classification,
nilpotent profile) and keeps only the analysis; groups are rebuilt from their
spec strings on demand.  Pair search buckets AC entries by signature, and the
verifier asserts the structural consequences every signature-matched pair
must satisfy, treating any violation as build-failing.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .classify import (
    classify,
    has_abelian_maximal_subgroup,
    is_solvable,
    nilpotent_ac_profile,
)
from .construct import build_group, parse_spec, spec_order
from .errors import (
    ACGroupsError,
    NotACGroup,
    OrderCapExceeded,
    TheoremViolation,
)
from .graph import (
    build_graph,
    centralizer_partition,
    graph_iso_general,
    is_ac,
    signature,
)
from .groups import DEFAULT_ORDER_CAP, FiniteGroup, is_nilpotent, is_prime

DEFAULT_MAX_ORDER = 512
FAMILY_NAMES = (
    "cyc", "dih", "dic", "sym", "alt", "heis", "exsp", "gl2", "sl2",
    "frobenius", "products",
)

VERDICT_BOTH_NILPOTENT = "BothNilpotent"
VERDICT_TRANSFERRED = "NilpotencyTransferred"
VERDICT_TYPE3 = "Type3Exception"
VERDICT_VIOLATION = "Violation"


@dataclass(frozen=True)
class CatalogEntry:
    spec: str
    order: int
    center_order: int
    element_orders: tuple[tuple[int, int], ...]
    is_abelian: bool
    is_ac: Optional[bool]
    is_solvable: bool
    is_nilpotent: bool
    signature: Optional[tuple[int, ...]]
    types: Optional[tuple[int, ...]]
    classification: Optional[dict]
    profile: Optional[dict]

    @property
    def name(self) -> str:
        return self.spec

    @property
    def vertex_count(self) -> Optional[int]:
        if self.is_abelian:
            return None
        return self.order - self.center_order

    def dedup_key(self) -> tuple:
        return (self.order, self.signature, self.element_orders)

    def build(self, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
        return build_group(self.spec, cap=cap, validate="none")

    def to_json(self) -> dict:
        return {
            "name": self.spec,
            "order": self.order,
            "center": self.center_order,
            "is_abelian": self.is_abelian,
            "is_ac": self.is_ac,
            "is_solvable": self.is_solvable,
            "is_nilpotent": self.is_nilpotent,
            "signature": list(self.signature) if self.signature is not None else None,
            "types": list(self.types) if self.types is not None else None,
        }


@dataclass
class Catalog:
    max_order: int
    entries: list[CatalogEntry]

    def ac_entries(self) -> list[CatalogEntry]:
        return [e for e in self.entries if e.is_ac]


def analyze_spec(spec_str: str, cap: int = DEFAULT_ORDER_CAP) -> CatalogEntry:
    """Build the group for one spec string and run the full analysis."""
    g = build_group(spec_str, cap=cap, validate="light")
    center_order = g.center().order
    orders = tuple(sorted(Counter(int(o) for o in g.element_orders).items()))
    if g.is_abelian:
        return CatalogEntry(
            spec=spec_str, order=g.order, center_order=center_order,
            element_orders=orders, is_abelian=True, is_ac=None,
            is_solvable=True, is_nilpotent=True, signature=None,
            types=None, classification=None, profile=None,
        )
    ac = is_ac(g)
    solvable = is_solvable(g)
    nilpotent = is_nilpotent(g)
    sig = tuple(signature(g).part_sizes) if ac else None
    types = None
    classification = None
    profile = None
    if ac and solvable:
        cls = classify(g)
        types = tuple(sorted(cls.types))
        classification = cls.to_report(spec_str)
    if ac and nilpotent:
        profile = nilpotent_ac_profile(g).to_report(spec_str)
    return CatalogEntry(
        spec=spec_str, order=g.order, center_order=center_order,
        element_orders=orders, is_abelian=False, is_ac=ac,
        is_solvable=solvable, is_nilpotent=nilpotent, signature=sig,
        types=types, classification=classification, profile=profile,
    )


def default_family_specs(
    max_order: int, families: Optional[Iterable[str]] = None
) -> list[str]:
    """The deterministic spec list for the default catalog families."""
    chosen = set(FAMILY_NAMES if families is None else families)
    unknown = chosen - set(FAMILY_NAMES)
    if unknown:
        raise ValueError(f"unknown families: {sorted(unknown)}")
    specs: list[str] = []
    seeds: list[tuple[str, int]] = []  # non-abelian seeds for products

    if "cyc" in chosen:
        specs.extend(f"Cyc({n})" for n in range(1, max_order + 1))
    if "dih" in chosen:
        seeds.extend((f"Dih({n})", 2 * n) for n in range(3, max_order // 2 + 1))
    if "dic" in chosen:
        seeds.extend((f"Dic({n})", 4 * n) for n in range(2, max_order // 4 + 1))
    if "sym" in chosen:
        seeds.extend(
            (f"Sym({n})", math.factorial(n))
            for n in (3, 4, 5)
            if math.factorial(n) <= max_order
        )
    if "alt" in chosen:
        seeds.extend(
            (f"Alt({n})", math.factorial(n) // 2)
            for n in (4, 5)
            if math.factorial(n) // 2 <= max_order
        )
    if "heis" in chosen:
        seeds.extend(
            (f"Heis({p})", p**3) for p in (2, 3, 5, 7) if p**3 <= max_order
        )
    if "exsp" in chosen:
        for p in (2, 3, 5):
            for m in (1, 2):
                if p ** (1 + 2 * m) <= max_order:
                    for sign in ("+", "-"):
                        seeds.append((f"ExSp({p}, {m}, {sign})", p ** (1 + 2 * m)))
    if "gl2" in chosen and 48 <= max_order:
        seeds.append(("GL2(3)", 48))
    if "sl2" in chosen and 24 <= max_order:
        seeds.append(("SL2(3)", 24))
    if "frobenius" in chosen:
        for p in range(3, max_order // 2 + 1):
            if not is_prime(p):
                continue
            for d in range(2, p):
                if (p - 1) % d == 0 and p * d <= max_order:
                    seeds.append((f"SemiDirect(Cyc({p}), {d}, 0)", p * d))

    specs.extend(s for s, _ in seeds)
    if "products" in chosen:
        for seed, order in seeds:
            for k in range(1, max_order // order + 1):
                specs.append(f"{seed} x Cyc({k})")
    return specs


def generate_catalog(
    max_order: int = DEFAULT_MAX_ORDER,
    families: Optional[Iterable[str]] = None,
    cap: int = DEFAULT_ORDER_CAP,
    jobs: int = 1,
) -> Catalog:
    """Instantiate the default families, analyze every group, and
    deduplicate by (order, signature, element-order multiset)."""
    if max_order > cap:
        raise OrderCapExceeded(f"max_order {max_order} exceeds the cap {cap}")
    specs = default_family_specs(max_order, families)
    if jobs > 1 and len(specs) > 8:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            analyses = list(pool.map(partial(analyze_spec, cap=cap), specs, chunksize=16))
    else:
        analyses = [analyze_spec(s, cap=cap) for s in specs]
    seen: dict[tuple, CatalogEntry] = {}
    for entry in analyses:
        seen.setdefault(entry.dedup_key(), entry)
    entries = sorted(seen.values(), key=lambda e: (e.order, e.name))
    return Catalog(max_order=max_order, entries=entries)


# ---------------------------------------------------------------------------
# pair search


@dataclass(frozen=True)
class PairRecord:
    g_spec: str
    h_spec: str
    signature: tuple[int, ...]
    same_order: bool
    verdict: Optional[str]

    def to_json(self) -> dict:
        return {
            "g": self.g_spec,
            "h": self.h_spec,
            "signature": list(self.signature),
            "same_order": self.same_order,
            "verdict": self.verdict,
        }


@dataclass
class PairReport:
    pairs: list[PairRecord]

    def violations(self) -> list[PairRecord]:
        return [p for p in self.pairs if p.verdict == VERDICT_VIOLATION]


def _pair_verdict(
    a: CatalogEntry, b: CatalogEntry, cap: int = DEFAULT_ORDER_CAP
) -> Optional[str]:
    """Verdict for one signature-matched AC pair.

    BothNilpotent: both sides nilpotent with equal orders;
    NilpotencyTransferred: both nilpotent, orders differ (the partner is
    nilpotent exactly as the dichotomy's first branch predicts);
    Type3Exception: one side nilpotent and its partner exhibits the full
    exceptional structure; Violation otherwise.  Pairs with no nilpotent
    side fall outside the dichotomy and get no verdict.
    """
    if a.is_nilpotent and b.is_nilpotent:
        return VERDICT_BOTH_NILPOTENT if a.order == b.order else VERDICT_TRANSFERRED
    if not a.is_nilpotent and not b.is_nilpotent:
        return None
    nil, other = (a, b) if a.is_nilpotent else (b, a)
    if nil.order == other.order:
        return VERDICT_VIOLATION  # equal orders force a nilpotent partner
    return _exception_verdict(nil, other, cap)


def _exception_verdict(nil: CatalogEntry, other: CatalogEntry, cap: int) -> str:
    checks = _exception_checks(nil, other, cap)
    return VERDICT_TYPE3 if all(ok for _, ok in checks) else VERDICT_VIOLATION


def _exception_checks(
    nil: CatalogEntry, other: CatalogEntry, cap: int
) -> list[tuple[str, bool]]:
    """The exceptional-partner conclusions for a nilpotent/non-nilpotent pair."""
    checks: list[tuple[str, bool]] = []
    types = set(other.types or ())
    checks.append(("partner_is_type_3", 3 in types))
    checks.append(("partner_not_type_2_or_4", not types & {2, 4}))
    checks.append(("center_growth", other.center_order > nil.center_order))
    profile = nil.profile or {}
    p = profile.get("p")
    checks.append(("central_index_above_p4", profile.get("n", 0) > 4))
    if 3 in types and p is not None:
        witness = (other.classification or {}).get("witnesses", {}).get("3", {})
        kernel_index = witness.get("kernel_order", 0) // max(1, other.center_order)
        q_part = _sole_prime(kernel_index)
        checks.append(("kernel_prime_differs", q_part is not None and q_part != p))
    g = nil.build(cap)
    checks.append(("no_abelian_maximal_subgroup", not has_abelian_maximal_subgroup(g)))
    return checks


def _sole_prime(n: int) -> Optional[int]:
    if n < 2:
        return None
    from .groups import prime_factors

    factors = prime_factors(n)
    return next(iter(factors)) if len(factors) == 1 else None


def find_graph_pairs(catalog: Catalog, cap: int = DEFAULT_ORDER_CAP) -> PairReport:
    """Bucket AC entries by signature and emit every cross pair."""
    buckets: dict[tuple[int, ...], list[CatalogEntry]] = {}
    for entry in catalog.ac_entries():
        buckets.setdefault(entry.signature, []).append(entry)
    pairs = []
    for sig in sorted(buckets):
        group = sorted(buckets[sig], key=lambda e: (e.order, e.name))
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                a, b = group[i], group[j]
                pairs.append(
                    PairRecord(
                        g_spec=a.spec,
                        h_spec=b.spec,
                        signature=sig,
                        same_order=a.order == b.order,
                        verdict=_pair_verdict(a, b, cap),
                    )
                )
    pairs.sort(key=lambda p: (sum(p.signature), p.signature, p.g_spec, p.h_spec))
    return PairReport(pairs)


# ---------------------------------------------------------------------------
# theorem verification


def verify_theorems(
    catalog: Catalog, pair_report: PairReport, cap: int = DEFAULT_ORDER_CAP
) -> dict:
    """Check every verified statement against the catalog and pair list.

    Returns a JSON-able report; any violation lands in report["violations"]
    and the caller decides whether to raise (check_theorems does).
    """
    by_spec = {e.spec: e for e in catalog.entries}
    violations: list[str] = []
    exception_pairs = 0
    vacuous_exception = True

    for pair in pair_report.pairs:
        a, b = by_spec[pair.g_spec], by_spec[pair.h_spec]
        if (a.order - a.center_order) != (b.order - b.center_order):
            violations.append(f"{pair.g_spec} / {pair.h_spec}: vertex counts differ")
        if a.signature != b.signature:
            violations.append(f"{pair.g_spec} / {pair.h_spec}: part sizes differ")
        if pair.verdict == VERDICT_VIOLATION:
            violations.append(
                f"{pair.g_spec} / {pair.h_spec}: dichotomy violated"
            )
        if pair.verdict == VERDICT_TYPE3:
            exception_pairs += 1
            vacuous_exception = False
        if a.is_nilpotent != b.is_nilpotent:
            nil, other = (a, b) if a.is_nilpotent else (b, a)
            if nil.center_order >= other.center_order and not other.is_nilpotent:
                violations.append(
                    f"{pair.g_spec} / {pair.h_spec}: non-nilpotent partner despite "
                    f"center order {nil.center_order} >= {other.center_order}"
                )

    solvable_ac = [
        e for e in catalog.entries
        if e.is_ac and e.is_solvable and not e.is_abelian
    ]
    for entry in solvable_ac:
        if not entry.types:
            violations.append(f"{entry.spec}: no structure type detected")
        elif entry.is_nilpotent and 5 not in entry.types:
            violations.append(f"{entry.spec}: nilpotent but not of type 5")
        elif not entry.is_nilpotent and 5 in entry.types:
            violations.append(f"{entry.spec}: type 5 detected on a non-nilpotent group")
        if entry.classification:
            measured = entry.classification["measured_count"]
            for t, predicted in entry.classification["predicted_counts"].items():
                if predicted != measured:
                    violations.append(
                        f"{entry.spec}: type {t} predicts {predicted}, measured {measured}"
                    )

    multi_sylow = sum(
        1 for e in catalog.entries
        if e.is_ac and e.is_nilpotent and e.profile is None
    )
    if multi_sylow:
        violations.append(f"{multi_sylow} nilpotent AC entries without a P x A profile")

    cross_checked = _cross_check_non_ac(catalog, cap, violations)

    return {
        "max_order": catalog.max_order,
        "entries": len(catalog.entries),
        "ac_entries": len(catalog.ac_entries()),
        "pairs": len(pair_report.pairs),
        "exception_pairs": exception_pairs,
        "maximal_subgroup_clause": "vacuous" if vacuous_exception else "checked",
        "two_nonabelian_sylow_hypothesis": "vacuous",
        "non_ac_cross_checks": cross_checked,
        "violations": violations,
        "passed": not violations,
    }


def _cross_check_non_ac(catalog: Catalog, cap: int, violations: list[str]) -> int:
    """Confirm no small non-AC entry is graph-isomorphic to an AC entry."""
    small_ac = [
        e for e in catalog.ac_entries()
        if e.vertex_count is not None and e.vertex_count <= 64
    ]
    ac_by_count: dict[int, list[CatalogEntry]] = {}
    for e in small_ac:
        ac_by_count.setdefault(e.vertex_count, []).append(e)
    checked = 0
    for entry in catalog.entries:
        if entry.is_abelian or entry.is_ac:
            continue
        v = entry.vertex_count
        if v is None or v > 64 or v not in ac_by_count:
            continue
        graph_h = build_graph(entry.build(cap)).to_simple_graph()
        for partner in ac_by_count[v]:
            graph_g = build_graph(partner.build(cap)).to_simple_graph()
            checked += 1
            if graph_iso_general(graph_g, graph_h):
                violations.append(
                    f"{entry.spec}: non-AC entry graph-isomorphic to AC entry {partner.spec}"
                )
    return checked


def check_theorems(
    catalog: Catalog, pair_report: PairReport, cap: int = DEFAULT_ORDER_CAP
) -> dict:
    """verify_theorems, raising TheoremViolation when anything fails."""
    report = verify_theorems(catalog, pair_report, cap)
    if not report["passed"]:
        raise TheoremViolation("; ".join(report["violations"][:10]))
    return report
