"""Finite subsets of Z/pZ and their additive structure.

Provides sumsets, restricted sumsets (sums a+b with a != b), arithmetic
progression detection, affine canonicalization of set pairs, and the
classical tightness/structure labels for a pair. Sets are immutable and
stored as sorted residue tuples; the additive kernels run on bitmasks.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import EmptySet, ModulusMismatch, ZeroDilation
from .field import FieldElement, Prime, as_prime

__all__ = [
    "FpSet",
    "ApWitness",
    "CanonicalPair",
    "PairClassification",
    "sumset",
    "restricted_sumset",
    "is_arithmetic_progression",
    "affine_image",
    "canonical_pair",
    "classify_pair",
    "CAUCHY_DAVENPORT_TIGHT",
    "VOSPER_SINGLETON",
    "VOSPER_COMPLEMENT",
    "VOSPER_AP",
    "HAMIDOUNE_RODSETH",
    "EH_TIGHT",
    "EH_PLUS_ONE",
    "DIAGONAL",
]

CAUCHY_DAVENPORT_TIGHT = "cauchy_davenport_tight"
VOSPER_SINGLETON = "vosper_case_singleton"
VOSPER_COMPLEMENT = "vosper_case_complement"
VOSPER_AP = "vosper_case_ap"
HAMIDOUNE_RODSETH = "hamidoune_rodseth_applicable"
EH_TIGHT = "eh_tight"
EH_PLUS_ONE = "eh_plus_one"
DIAGONAL = "diagonal"


def _rotate(mask: int, shift: int, p: int, full: int) -> int:
    # cyclic left rotation of a p-bit mask: bit e moves to bit (e + shift) % p
    if shift == 0:
        return mask
    return ((mask << shift) | (mask >> (p - shift))) & full


def _mask_elements(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class FpSet:
    """A set of residues mod p, stored strictly increasing."""

    modulus: Prime
    elements: tuple[int, ...]

    def __post_init__(self):
        p = self.modulus.value
        prev = -1
        for e in self.elements:
            if not 0 <= e < p:
                raise ValueError(f"residue {e} out of range for modulus {p}")
            if e <= prev:
                raise ValueError("elements must be strictly increasing")
            prev = e

    @classmethod
    def of(cls, p: Prime | int, elems: Iterable[int]) -> "FpSet":
        """Build a set, reducing mod p and deduplicating."""
        prime = as_prime(p)
        return cls(prime, tuple(sorted({e % prime.value for e in elems})))

    @classmethod
    def from_mask(cls, p: Prime, mask: int) -> "FpSet":
        return cls(p, _mask_elements(mask))

    @functools.cached_property
    def mask(self) -> int:
        m = 0
        for e in self.elements:
            m |= 1 << e
        return m

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, residue: int) -> bool:
        return residue in self.elements

    def literal(self) -> str:
        """The comma-separated residue form used by the CLI and report files."""
        return ",".join(str(e) for e in self.elements)

    def __repr__(self) -> str:
        return f"FpSet(p={self.modulus.value}, {{{self.literal()}}})"


def _require_same_modulus(a: FpSet, b: FpSet) -> Prime:
    if a.modulus != b.modulus:
        raise ModulusMismatch(
            f"sets over different moduli: {a.modulus.value} vs {b.modulus.value}"
        )
    return a.modulus


def sumset(a: FpSet, b: FpSet) -> FpSet:
    """All sums x+y with x in a, y in b."""
    prime = _require_same_modulus(a, b)
    p = prime.value
    full = (1 << p) - 1
    acc = 0
    bm = b.mask
    for e in a.elements:
        acc |= _rotate(bm, e, p, full)
    return FpSet.from_mask(prime, acc)


def restricted_sumset(a: FpSet, b: FpSet) -> FpSet:
    """All sums x+y with x in a, y in b and x != y."""
    prime = _require_same_modulus(a, b)
    p = prime.value
    full = (1 << p) - 1
    acc = 0
    bm = b.mask
    for e in a.elements:
        acc |= _rotate(bm & ~(1 << e), e, p, full)
    return FpSet.from_mask(prime, acc)


@dataclass(frozen=True)
class ApWitness:
    """A progression {start + t*diff : 0 <= t < length} reproducing a set."""

    start: FieldElement
    diff: FieldElement
    length: int

    def expand(self) -> FpSet:
        p = self.start.modulus
        s, d = self.start.residue, self.diff.residue
        return FpSet.of(p, ((s + t * d) % p.value for t in range(self.length)))


def _ap_candidates(s: FpSet) -> list[tuple[int, int]]:
    # all (start, diff) with diff != 0 generating s; only called for len >= 3
    p = s.modulus.value
    m = len(s)
    members = set(s.elements)
    if m == p:
        return [(a, d) for d in range(1, p) for a in range(p)]
    found = []
    for d in range(1, p):
        starts = [e for e in s.elements if (e - d) % p not in members]
        if len(starts) != 1:
            continue
        e = starts[0]
        ok = True
        for _ in range(m - 1):
            e = (e + d) % p
            if e not in members:
                ok = False
                break
        if ok:
            found.append((starts[0], d))
    return found


def is_arithmetic_progression(s: FpSet) -> ApWitness | None:
    """Detect progression structure under any ordering of the elements.

    Sets of size 1 and 2 are progressions by convention (diff 1 for a
    singleton, second minus first for a pair). For larger sets every
    nonzero difference is tried; the witness returned is the one with
    lexicographically least (start, diff).
    """
    if not s.elements:
        raise EmptySet("empty set has no progression structure")
    prime = s.modulus
    m = len(s)
    if m == 1:
        return ApWitness(prime.element(s.elements[0]), prime.element(1), 1)
    if m == 2:
        lo, hi = s.elements
        return ApWitness(prime.element(lo), prime.element(hi - lo), 2)
    candidates = _ap_candidates(s)
    if not candidates:
        return None
    start, diff = min(candidates)
    return ApWitness(prime.element(start), prime.element(diff), m)


def affine_image(s: FpSet, lam: FieldElement | int, mu: FieldElement | int) -> FpSet:
    """The image {lam*x + mu : x in s}; lam must be nonzero."""
    prime = s.modulus
    lam_r = lam.residue if isinstance(lam, FieldElement) else lam % prime.value
    mu_r = mu.residue if isinstance(mu, FieldElement) else mu % prime.value
    if isinstance(lam, FieldElement) and lam.modulus != prime:
        raise ModulusMismatch("dilation factor over a different modulus")
    if isinstance(mu, FieldElement) and mu.modulus != prime:
        raise ModulusMismatch("offset over a different modulus")
    if lam_r == 0:
        raise ZeroDilation("affine dilation factor must be nonzero")
    return FpSet.of(prime, ((lam_r * e + mu_r) % prime.value for e in s.elements))


@dataclass(frozen=True)
class CanonicalPair:
    a: FpSet
    b: FpSet
    lam: FieldElement
    mu: FieldElement

    @property
    def sets(self) -> tuple[FpSet, FpSet]:
        return (self.a, self.b)


def canonical_pair(a: FpSet, b: FpSet) -> CanonicalPair:
    """Lexicographically least simultaneous affine image of the pair.

    Minimizes (sorted(lam*a+mu), sorted(lam*b+mu)) over all lam != 0 and mu,
    breaking ties by least (lam, mu). The least first component always
    contains 0, so only offsets sending an element of lam*a to 0 compete.
    Idempotent: a canonical pair maps to itself under (lam, mu) = (1, 0).
    """
    prime = _require_same_modulus(a, b)
    if not a.elements:
        raise EmptySet("first set must be nonempty for canonicalization")
    p = prime.value
    best = None
    for lam in range(1, p):
        la = sorted(lam * e % p for e in a.elements)
        lb = sorted(lam * e % p for e in b.elements)
        for t in la:
            mu = -t % p
            at = tuple(sorted((x + mu) % p for x in la))
            bt = tuple(sorted((x + mu) % p for x in lb))
            key = (at, bt, lam, mu)
            if best is None or key < best:
                best = key
    at, bt, lam, mu = best
    return CanonicalPair(
        FpSet(prime, at), FpSet(prime, bt), prime.element(lam), prime.element(mu)
    )


@dataclass(frozen=True)
class PairClassification:
    """Sizes of both sumsets plus every structural label that applies."""

    size_a: int
    size_b: int
    sumset_size: int
    restricted_size: int
    labels: frozenset[str]


def _ap_differences(s: FpSet) -> set[int]:
    # nonzero differences d for which s is a progression with difference d;
    # a singleton is compatible with every difference
    p = s.modulus.value
    m = len(s)
    if m == 1:
        return set(range(1, p))
    if m == 2:
        lo, hi = s.elements
        return {(hi - lo) % p, (lo - hi) % p}
    return {d for _, d in _ap_candidates(s)}


def classify_pair(a: FpSet, b: FpSet) -> PairClassification:
    """Compute both sumset sizes and every applicable structural label.

    Labels cover tight sumset growth (|A+B| = |A|+|B|-1), the three ways a
    pair can be tight (a singleton side, a complement pair when |A+B| = p-1,
    or two progressions sharing a difference), near-tight growth
    (|A+B| = |A|+|B| <= p-4 with |A| >= 3, |B| >= 4), tight and almost-tight
    restricted sumsets, and equality of the two sets.
    """
    prime = _require_same_modulus(a, b)
    if not a.elements or not b.elements:
        raise EmptySet("classification requires nonempty sets")
    p = prime.value
    k, ell = len(a), len(b)
    s = sumset(a, b)
    r = restricted_sumset(a, b)
    labels: set[str] = set()
    if len(s) == k + ell - 1:
        labels.add(CAUCHY_DAVENPORT_TIGHT)
    if min(k, ell) == 1:
        labels.add(VOSPER_SINGLETON)
    if len(s) == p - 1:
        # the single missing element c determines the complement candidate
        c = (((1 << p) - 1) ^ s.mask).bit_length() - 1
        image = {(c - x) % p for x in a.elements}
        if set(b.elements) == set(range(p)) - image:
            labels.add(VOSPER_COMPLEMENT)
    if _ap_differences(a) & _ap_differences(b):
        labels.add(VOSPER_AP)
    if k >= 3 and ell >= 4 and len(s) == k + ell and len(s) <= p - 4:
        labels.add(HAMIDOUNE_RODSETH)
    if len(r) == k + ell - 3:
        labels.add(EH_TIGHT)
    if len(r) == k + ell - 2:
        labels.add(EH_PLUS_ONE)
    if a == b:
        labels.add(DIAGONAL)
    return PairClassification(k, ell, len(s), len(r), frozenset(labels))
