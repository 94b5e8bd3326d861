import itertools
import json
from math import comb

import pytest

from sumsetlab import (
    CeilingExceeded,
    FpSet,
    KTooLarge,
    Prime,
    audit_all_extremal,
    classify_pair,
    enumerate_k_subsets,
    make_pair_record,
    report_to_json,
    restricted_sumset,
    verify_bounds,
    verify_karolyi_inverse,
    verify_main_theorem,
)
from sumsetlab.sets import canonical_pair

from oracles import brute_restricted, brute_sumset


def test_enumerate_counts_and_order():
    only = list(enumerate_k_subsets(5, 5))
    assert len(only) == 1 and only[0].elements == (0, 1, 2, 3, 4)
    sets7 = list(enumerate_k_subsets(7, 2))
    assert len(sets7) == 21 == comb(7, 2)
    assert [s.elements for s in sets7] == list(itertools.combinations(range(7), 2))
    assert sum(1 for _ in enumerate_k_subsets(11, 5)) == 462


def test_enumerate_restart_index():
    full = [s.elements for s in enumerate_k_subsets(11, 3)]
    for start in (0, 1, 17, 100, len(full) - 1, len(full), len(full) + 5):
        tail = [s.elements for s in enumerate_k_subsets(11, 3, start=start)]
        assert tail == full[start:]


def test_enumerate_guards():
    with pytest.raises(KTooLarge):
        list(enumerate_k_subsets(5, 6))
    with pytest.raises(ValueError):
        list(enumerate_k_subsets(5, 0))


def test_main_theorem_small_sweep():
    report = verify_main_theorem(11, 5)
    assert report.counterexamples == []
    assert report.extremal_count > 0
    assert report.passed
    extremal_keys = {(r.a.elements, r.b.elements) for r in report.extremal_pairs}
    # the reference extremal instance appears as its own canonical form
    c = canonical_pair(FpSet.of(Prime(11), [0, 1, 2, 3, 5]), FpSet.of(Prime(11), [0, 1, 2, 3, 5]))
    assert (c.a.elements, c.b.elements) in extremal_keys
    assert all(r.sets_equal for r in report.extremal_pairs)
    assert report.hypothesis_flags == {
        "k_ge_5": True,
        "p_gt_2k_minus_2": True,
        "p_gt_2k_minus_1": True,
    }


def test_main_theorem_below_threshold_records_flags():
    report = verify_main_theorem(7, 3)
    assert report.hypothesis_flags["k_ge_5"] is False
    assert not report.expectation_checked
    assert report.passed  # exceptions recorded, nothing asserted


def test_main_theorem_boundary_prime_has_recorded_counterexamples():
    # p = 2k-1 = 11, k = 6: attaining pairs with A != B exist, so the
    # stronger modulus hypothesis is the one under which emptiness holds
    report = verify_main_theorem(11, 6)
    assert report.hypothesis_flags["p_gt_2k_minus_2"] is True
    assert report.hypothesis_flags["p_gt_2k_minus_1"] is False
    assert not report.expectation_checked
    assert len(report.counterexamples) > 0
    for rec in report.counterexamples:
        assert not rec.sets_equal
        assert len(restricted_sumset(rec.a, rec.b)) == 10


def test_pruning_soundness():
    pruned = verify_main_theorem(11, 4, prune=True)
    unpruned = verify_main_theorem(11, 4, prune=False)

    def keys(records):
        return [(r.a.elements, r.b.elements) for r in records]

    assert keys(pruned.extremal_pairs) == keys(unpruned.extremal_pairs)
    assert keys(pruned.counterexamples) == keys(unpruned.counterexamples)


def test_unpruned_scan_counts_ordered_pairs():
    report = verify_main_theorem(7, 3, prune=False)
    assert report.pairs_scanned == comb(7, 3) ** 2


def test_reports_deterministic_across_workers():
    base = report_to_json(verify_main_theorem(11, 4, workers=1))
    assert report_to_json(verify_main_theorem(11, 4, workers=3)) == base
    assert report_to_json(verify_main_theorem(11, 4, workers=8)) == base


def test_extremal_scan_matches_brute_force():
    # p = 7, k = 3, target 2k-2 = 4: cross-check the full list of attaining
    # unordered pairs against a naive double loop
    target = 4
    brute_hits = set()
    subsets = list(itertools.combinations(range(7), 3))
    for i, a in enumerate(subsets):
        for b in subsets[i:]:
            if len(brute_restricted(a, b, 7)) == target:
                ca, cb = canonical_pair(FpSet.of(7, a), FpSet.of(7, b)).sets
                cb2, ca2 = canonical_pair(FpSet.of(7, b), FpSet.of(7, a)).sets
                brute_hits.add(
                    min((ca.elements, cb.elements), (cb2.elements, ca2.elements))
                )
    report = verify_main_theorem(7, 3)
    got = {(r.a.elements, r.b.elements) for r in report.extremal_pairs}
    assert got == brute_hits


def test_pair_records_reproducible():
    report = verify_main_theorem(11, 5)
    for rec in report.extremal_pairs:
        again = make_pair_record(rec.a, rec.b)
        assert again == rec
        cls = classify_pair(rec.a, rec.b)
        assert tuple(sorted(cls.labels)) == rec.labels
        assert cls.restricted_size == rec.restricted_size


def test_karolyi_sweep_both_directions():
    report = verify_karolyi_inverse(11, 5)
    assert report.counterexamples == []
    assert report.extremal_count > 0
    for rec in report.extremal_pairs:
        assert rec.sets_equal
        assert rec.ap_witness is not None
    # forward direction example: the base progression attains 2k-3
    base = FpSet.of(Prime(11), range(5))
    assert len(restricted_sumset(base, base)) == 7
    # below the size threshold exceptions are recorded, not asserted
    small = verify_karolyi_inverse(11, 3)
    assert not small.expectation_checked
    assert small.passed


def test_bounds_sweep_small_primes():
    for pv in (5, 7):
        report = verify_bounds(pv)
        assert report.violations == []
        n = 2 ** pv - 1
        assert report.pairs_scanned == n * n
    # spot-check against naive evaluation for p = 5
    for a in itertools.combinations(range(5), 2):
        for b in itertools.combinations(range(5), 3):
            assert len(brute_sumset(a, b, 5)) >= min(5, len(a) + len(b) - 1)
            assert len(brute_restricted(a, b, 5)) >= min(5, len(a) + len(b) - 3)


def test_bounds_ceiling_guard():
    with pytest.raises(CeilingExceeded):
        verify_bounds(17)
    report = verify_bounds(5, ceiling=5)
    assert report.violations == []


def test_audit_all_extremal_clean_at_p11_k5():
    traces = list(audit_all_extremal(11, 5))
    assert traces
    assert all(t.clean for t in traces)
    assert all(t.sets_equal for t in traces)


def test_audit_all_extremal_flags_boundary():
    traces = list(audit_all_extremal(11, 6))
    assert traces
    diagonal = [t for t in traces if t.sets_equal]
    nondiagonal = [t for t in traces if not t.sets_equal]
    assert nondiagonal, "attaining pairs with A != B exist at p = 2k-1"
    assert all(not t.clean for t in traces)
    assert all(t.warning is not None for t in traces)
    # diagonal traces fail only on the vanishing denominators
    for t in diagonal:
        assert {r.label for r in t.failed_records()} == {"even_denominator_nonzero"}


def test_report_json_shape():
    report = verify_main_theorem(7, 3)
    doc = json.loads(report_to_json(report))
    assert doc["kind"] == "main"
    assert doc["p"] == 7 and doc["k"] == 3
    assert doc["target_size"] == 4
    assert doc["extremal_pair_count"] == len(doc["extremal_pairs"])
    for rec in doc["extremal_pairs"]:
        assert set(rec) == {
            "a", "b", "k", "restricted_size", "labels", "sets_equal", "ap_witness",
        }
    assert "wall_time" not in doc and "workers" not in doc
