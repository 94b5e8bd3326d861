"""Exhaustive desk-scale sweeps over subsets of Z/pZ.

Three sweeps are provided: the diagonal-equality sweep (every pair of
k-subsets whose restricted sumset has size exactly 2k-2 must satisfy A = B),
the progression-structure sweep at size 2k-3, and the classical lower-bound
sweep over all nonempty pairs. Scans run on bitmasks with an early-exit
accumulator; work is sharded into contiguous outer-index ranges so reports
are byte-identical for any worker count.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from math import comb
from typing import Iterator

from .audit import AuditTrace, audit_sigma_chain
from .errors import CeilingExceeded, KTooLarge
from .field import Prime, as_prime
from .sets import (
    ApWitness,
    FpSet,
    canonical_pair,
    classify_pair,
    is_arithmetic_progression,
    restricted_sumset,
    _mask_elements,
    _rotate,
)

__all__ = [
    "PairRecord",
    "SweepReport",
    "enumerate_k_subsets",
    "verify_main_theorem",
    "verify_karolyi_inverse",
    "verify_bounds",
    "audit_all_extremal",
    "make_pair_record",
    "report_to_json",
    "DEFAULT_BOUNDS_CEILING",
    "DEFAULT_THEOREM_CEILING",
]

DEFAULT_BOUNDS_CEILING = 13
DEFAULT_THEOREM_CEILING = 17


def _unrank_combination(n: int, k: int, idx: int) -> list[int]:
    # lexicographic unranking in the combinatorial number system
    combo = []
    x = 0
    for pos in range(k):
        v = x
        while True:
            cnt = comb(n - 1 - v, k - pos - 1)
            if idx < cnt:
                break
            idx -= cnt
            v += 1
        combo.append(v)
        x = v + 1
    return combo


def enumerate_k_subsets(p: Prime | int, k: int, start: int = 0) -> Iterator[FpSet]:
    """All C(p, k) subsets in lexicographic order, restartable from an index."""
    prime = as_prime(p)
    n = prime.value
    if k < 1:
        raise ValueError(f"subset size must be positive, got {k}")
    if k > n:
        raise KTooLarge(f"no {k}-subsets of a {n}-element field")
    if start < 0:
        raise ValueError("start index must be nonnegative")
    if start >= comb(n, k):
        return
    cur = _unrank_combination(n, k, start)
    while True:
        yield FpSet(prime, tuple(cur))
        i = k - 1
        while i >= 0 and cur[i] == n - k + i:
            i -= 1
        if i < 0:
            return
        cur[i] += 1
        for t in range(i + 1, k):
            cur[t] = cur[t - 1] + 1


@dataclass(frozen=True)
class PairRecord:
    """One stored pair, canonical under the affine action."""

    a: FpSet
    b: FpSet
    k: int
    restricted_size: int
    labels: tuple[str, ...]
    sets_equal: bool
    ap_witness: ApWitness | None

    def to_dict(self) -> dict:
        witness = None
        if self.ap_witness is not None:
            witness = {
                "start": self.ap_witness.start.residue,
                "diff": self.ap_witness.diff.residue,
                "length": self.ap_witness.length,
            }
        return {
            "a": self.a.literal(),
            "b": self.b.literal(),
            "k": self.k,
            "restricted_size": self.restricted_size,
            "labels": list(self.labels),
            "sets_equal": self.sets_equal,
            "ap_witness": witness,
        }


def make_pair_record(a: FpSet, b: FpSet) -> PairRecord:
    """Classify a pair and freeze the result; reproducible from the sets alone."""
    cls = classify_pair(a, b)
    return PairRecord(
        a=a,
        b=b,
        k=len(a),
        restricted_size=cls.restricted_size,
        labels=tuple(sorted(cls.labels)),
        sets_equal=a == b,
        ap_witness=is_arithmetic_progression(a),
    )


@dataclass
class SweepReport:
    """Everything one sweep produced; serialized fields are deterministic."""

    kind: str
    p: int
    k: int | None
    target_size: int | None
    pruned: bool
    pairs_scanned: int
    extremal_pairs: list[PairRecord] = dataclass_field(default_factory=list)
    counterexamples: list[PairRecord] = dataclass_field(default_factory=list)
    violations: list[dict] = dataclass_field(default_factory=list)
    hypothesis_flags: dict = dataclass_field(default_factory=dict)
    expectation_checked: bool = True
    wall_time: float = 0.0
    workers: int = 1

    @property
    def extremal_count(self) -> int:
        return len(self.extremal_pairs)

    @property
    def failure_count(self) -> int:
        return len(self.counterexamples) + len(self.violations)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0 or not self.expectation_checked


def report_to_json(report: SweepReport) -> str:
    """Stable machine-readable document; volatile fields (wall time, worker
    count) are deliberately excluded so identical sweeps diff clean."""
    doc = {
        "kind": report.kind,
        "p": report.p,
        "k": report.k,
        "target_size": report.target_size,
        "pruned": report.pruned,
        "pairs_scanned": report.pairs_scanned,
        "hypothesis_flags": {k: report.hypothesis_flags[k] for k in sorted(report.hypothesis_flags)},
        "expectation_checked": report.expectation_checked,
        "extremal_pair_count": len(report.extremal_pairs),
        "extremal_pairs": [r.to_dict() for r in report.extremal_pairs],
        "counterexample_count": len(report.counterexamples),
        "counterexamples": [r.to_dict() for r in report.counterexamples],
        "violation_count": len(report.violations),
        "violations": report.violations,
    }
    return json.dumps(doc, indent=2) + "\n"


def _subset_masks(n: int, k: int) -> list[int]:
    masks = []
    for combo in itertools.combinations(range(n), k):
        m = 0
        for e in combo:
            m |= 1 << e
        masks.append(m)
    return masks


def _canonical_elements(elems: tuple[int, ...], p: int) -> tuple[int, ...]:
    # least sorted image under x -> lam*x + mu; the winner always contains 0
    best = None
    for lam in range(1, p):
        mapped = sorted(lam * e % p for e in elems)
        for t in mapped:
            cand = tuple(sorted((x - t) % p for x in mapped))
            if best is None or cand < best:
                best = cand
    return best


def _canonical_unordered(a: FpSet, b: FpSet) -> tuple[FpSet, FpSet]:
    c1 = canonical_pair(a, b)
    c2 = canonical_pair(b, a)
    key1 = (c1.a.elements, c1.b.elements)
    key2 = (c2.a.elements, c2.b.elements)
    return c1.sets if key1 <= key2 else c2.sets


def _shard_ranges(total: int, shards: int) -> list[tuple[int, int]]:
    shards = max(1, min(shards, total)) if total else 1
    step, extra = divmod(total, shards)
    ranges = []
    lo = 0
    for s in range(shards):
        hi = lo + step + (1 if s < extra else 0)
        ranges.append((lo, hi))
        lo = hi
    return ranges


def _triangle_ranges(total: int, shards: int) -> list[tuple[int, int]]:
    # balance contiguous outer ranges by the triangular inner-loop weight
    shards = max(1, min(shards, total)) if total else 1
    weights = [total - i for i in range(total)]
    goal = sum(weights) / shards if shards else 1
    ranges = []
    lo = 0
    acc = 0.0
    for i, w in enumerate(weights):
        acc += w
        if acc >= goal and len(ranges) < shards - 1:
            ranges.append((lo, i + 1))
            lo = i + 1
            acc = 0.0
    ranges.append((lo, total))
    return ranges


def _extremal_shard(args) -> tuple[int, list[tuple[int, int]]]:
    p, target, a_masks, all_masks, lo, hi, prune = args
    full = (1 << p) - 1
    hits = []
    scanned = 0
    if prune:
        for ai in range(lo, hi):
            a_mask = a_masks[ai]
            a_elems = _mask_elements(a_mask)
            for b_mask in all_masks:
                scanned += 1
                acc = 0
                for e in a_elems:
                    acc |= _rotate(b_mask & ~(1 << e), e, p, full)
                    if acc.bit_count() > target:
                        acc = -1
                        break
                if acc != -1 and acc.bit_count() == target:
                    hits.append((a_mask, b_mask))
    else:
        n = len(all_masks)
        for ai in range(lo, hi):
            a_mask = all_masks[ai]
            a_elems = _mask_elements(a_mask)
            for bi in range(ai, n):
                b_mask = all_masks[bi]
                scanned += 1 if bi == ai else 2
                acc = 0
                for e in a_elems:
                    acc |= _rotate(b_mask & ~(1 << e), e, p, full)
                    if acc.bit_count() > target:
                        acc = -1
                        break
                if acc != -1 and acc.bit_count() == target:
                    hits.append((a_mask, b_mask))
    return scanned, hits


def _run_shards(worker, arg_list, workers: int):
    if workers <= 1 or len(arg_list) <= 1:
        return [worker(args) for args in arg_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, arg_list))


def _scan_extremal_pairs(
    prime: Prime, k: int, target: int, prune: bool, workers: int
) -> tuple[int, list[PairRecord]]:
    p = prime.value
    all_masks = _subset_masks(p, k)
    if prune:
        a_masks = [
            m
            for m in all_masks
            if _canonical_elements(_mask_elements(m), p) == _mask_elements(m)
        ]
    else:
        a_masks = all_masks
    ranges = _shard_ranges(len(a_masks), workers) if prune else _triangle_ranges(
        len(all_masks), workers
    )
    arg_list = [(p, target, a_masks, all_masks, lo, hi, prune) for lo, hi in ranges]
    results = _run_shards(_extremal_shard, arg_list, workers)

    scanned = sum(r[0] for r in results)
    seen = {}
    for _, hits in results:
        for a_mask, b_mask in hits:
            a = FpSet.from_mask(prime, a_mask)
            b = FpSet.from_mask(prime, b_mask)
            ca, cb = _canonical_unordered(a, b)
            seen[(ca.elements, cb.elements)] = (ca, cb)
    records = [make_pair_record(a, b) for _, (a, b) in sorted(seen.items())]
    return scanned, records


def _check_theorem_args(prime: Prime, k: int):
    if k < 1:
        raise ValueError(f"subset size must be positive, got {k}")
    if k > prime.value:
        raise KTooLarge(f"no {k}-subsets of a {prime.value}-element field")


def verify_main_theorem(
    p: Prime | int,
    k: int,
    *,
    workers: int = 1,
    prune: bool = True,
    target: int | None = None,
) -> SweepReport:
    """Scan every pair of k-subsets attaining restricted size 2k-2.

    A counterexample is an attaining pair with A != B; for k >= 5 and
    p > 2k-1 the counterexample list must come back empty. At p = 2k-1
    attaining pairs with A != B do exist (e.g. p=11, k=6), so the report
    records them without asserting emptiness; both modulus flags are kept
    so the boundary is visible. Found pairs are stored canonically
    (deduplicated up to simultaneous affine maps and swap), so pruned and
    unpruned scans produce identical lists.
    """
    prime = as_prime(p)
    _check_theorem_args(prime, k)
    if target is None:
        target = 2 * k - 2
    started = time.perf_counter()
    scanned, records = _scan_extremal_pairs(prime, k, target, prune, workers)
    flags = {
        "k_ge_5": k >= 5,
        "p_gt_2k_minus_2": prime.value > 2 * k - 2,
        "p_gt_2k_minus_1": prime.value > 2 * k - 1,
    }
    return SweepReport(
        kind="main",
        p=prime.value,
        k=k,
        target_size=target,
        pruned=prune,
        pairs_scanned=scanned,
        extremal_pairs=records,
        counterexamples=[r for r in records if not r.sets_equal],
        hypothesis_flags=flags,
        expectation_checked=flags["k_ge_5"] and flags["p_gt_2k_minus_1"],
        wall_time=time.perf_counter() - started,
        workers=workers,
    )


def _ap_sets_of_size(prime: Prime, k: int) -> list[FpSet]:
    p = prime.value
    seen = {
        tuple(sorted((s + t * d) % p for t in range(k)))
        for s in range(p)
        for d in range(1, p)
    }
    return [FpSet(prime, elems) for elems in sorted(seen)]


def verify_karolyi_inverse(
    p: Prime | int,
    k: int,
    *,
    workers: int = 1,
    prune: bool = True,
    target: int | None = None,
) -> SweepReport:
    """Scan pairs attaining restricted size 2k-3 and check both directions.

    Forward: every attaining pair must be a diagonal progression (A = B and
    A an arithmetic progression) when k >= 5 and p > 2k-3. Converse: every
    size-k progression A must attain |A+.A| = min(p, 2k-3). Exceptions in
    either direction land in the counterexample list.
    """
    prime = as_prime(p)
    _check_theorem_args(prime, k)
    if target is None:
        target = 2 * k - 3
    started = time.perf_counter()
    scanned, records = _scan_extremal_pairs(prime, k, target, prune, workers)
    exceptions = [
        r for r in records if not (r.sets_equal and r.ap_witness is not None)
    ]
    required = min(prime.value, 2 * k - 3)
    converse = {}
    for ap_set in _ap_sets_of_size(prime, k):
        if len(restricted_sumset(ap_set, ap_set)) != required:
            ca, cb = _canonical_unordered(ap_set, ap_set)
            converse[(ca.elements, cb.elements)] = (ca, cb)
    exceptions.extend(make_pair_record(a, b) for _, (a, b) in sorted(converse.items()))
    flags = {
        "k_ge_5": k >= 5,
        "p_gt_2k_minus_3": prime.value > 2 * k - 3,
    }
    return SweepReport(
        kind="karolyi",
        p=prime.value,
        k=k,
        target_size=target,
        pruned=prune,
        pairs_scanned=scanned,
        extremal_pairs=records,
        counterexamples=exceptions,
        hypothesis_flags=flags,
        expectation_checked=flags["k_ge_5"] and flags["p_gt_2k_minus_3"],
        wall_time=time.perf_counter() - started,
        workers=workers,
    )


def _bounds_shard(args) -> tuple[int, list[tuple[int, int, str, int, int]]]:
    p, lo, hi = args
    full = (1 << p) - 1
    n = full  # masks 1..full, index i holds mask i+1
    violations = []
    scanned = 0
    for i in range(lo, hi):
        a_mask = i + 1
        a_elems = _mask_elements(a_mask)
        ka = len(a_elems)
        for b_mask in range(a_mask, full + 1):
            scanned += 1 if b_mask == a_mask else 2
            kb = b_mask.bit_count()
            need = ka + kb - 1
            if need > p:
                need = p
            acc = 0
            for e in a_elems:
                acc |= _rotate(b_mask, e, p, full)
                if acc.bit_count() >= need:
                    break
            size = acc.bit_count()
            if size < need:
                violations.append((a_mask, b_mask, "sumset", size, need))
            need = ka + kb - 3
            if need > p:
                need = p
            if need > 0:
                acc = 0
                for e in a_elems:
                    acc |= _rotate(b_mask & ~(1 << e), e, p, full)
                    if acc.bit_count() >= need:
                        break
                size = acc.bit_count()
                if size < need:
                    violations.append((a_mask, b_mask, "restricted", size, need))
    return scanned, violations


def verify_bounds(
    p: Prime | int, *, workers: int = 1, ceiling: int = DEFAULT_BOUNDS_CEILING
) -> SweepReport:
    """Check the classical lower bounds over all nonempty pairs of subsets.

    For every (A, B): |A+B| >= min(p, |A|+|B|-1) and the restricted sumset
    size is >= min(p, |A|+|B|-3); the diagonal pairs of the second check
    cover the restricted bound min(p, 2|A|-3) for A = B. Zero violations
    expected at any prime; guarded by an exhaustive ceiling.
    """
    prime = as_prime(p)
    if prime.value > ceiling:
        raise CeilingExceeded(
            f"p = {prime.value} above the exhaustive ceiling {ceiling}"
        )
    started = time.perf_counter()
    total = (1 << prime.value) - 1
    ranges = _triangle_ranges(total, workers)
    arg_list = [(prime.value, lo, hi) for lo, hi in ranges]
    results = _run_shards(_bounds_shard, arg_list, workers)
    scanned = sum(r[0] for r in results)
    violations = []
    for _, shard_violations in results:
        for a_mask, b_mask, bound, size, need in shard_violations:
            violations.append(
                {
                    "a": FpSet.from_mask(prime, a_mask).literal(),
                    "b": FpSet.from_mask(prime, b_mask).literal(),
                    "bound": bound,
                    "size": size,
                    "required": need,
                }
            )
    violations.sort(key=lambda v: (v["a"], v["b"], v["bound"]))
    return SweepReport(
        kind="bounds",
        p=prime.value,
        k=None,
        target_size=None,
        pruned=False,
        pairs_scanned=scanned,
        violations=violations,
        hypothesis_flags={},
        expectation_checked=True,
        wall_time=time.perf_counter() - started,
        workers=workers,
    )


def audit_all_extremal(
    p: Prime | int, k: int, *, workers: int = 1, prune: bool = True
) -> Iterator[AuditTrace]:
    """Replay the coefficient-identity chain on every extremal pair found.

    Pairs come from the diagonal-equality sweep in canonical sorted order;
    each trace must be clean when k >= 5 and p > 2k-1.
    """
    report = verify_main_theorem(p, k, workers=workers, prune=prune)
    for record in report.extremal_pairs:
        yield audit_sigma_chain(record.a, record.b)
