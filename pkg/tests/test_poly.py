import random
from fractions import Fraction

import pytest

from sumsetlab import (
    BiPoly,
    EmptySet,
    FpSet,
    IndexOutOfRange,
    OddSize,
    Prime,
    UniPoly,
    ZeroPolynomial,
    build_locus_poly,
    cij,
    cij_exact,
    elementary_symmetric,
    homogeneous_components,
    pi_poly,
    restricted_sumset,
    roots_over_fp,
    sigma_expansion,
    splits_with_distinct_roots,
    vanishing_polynomial,
)

from oracles import antisym_row, brute_locus_coefficients, pascal_rows

P7 = Prime(7)
P11 = Prime(11)


def _random_set(rng, p, size):
    return FpSet.of(p, rng.sample(range(p.value), size))


def test_unipoly_normalization_and_degree():
    q = UniPoly.of(P7, [1, 2, 0, 0])
    assert q.coeffs == (1, 2)
    assert q.degree == 1
    zero = UniPoly.of(P7, [0, 0])
    assert zero.is_zero and zero.degree == -1
    with pytest.raises(ValueError):
        UniPoly(P7, (1, 0))


def test_unipoly_ring_laws_random():
    rng = random.Random(5)
    for _ in range(50):
        a = UniPoly.of(P11, [rng.randrange(11) for _ in range(rng.randint(0, 5))])
        b = UniPoly.of(P11, [rng.randrange(11) for _ in range(rng.randint(0, 5))])
        c = UniPoly.of(P11, [rng.randrange(11) for _ in range(rng.randint(0, 5))])
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        x = rng.randrange(11)
        assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x) % 11


def test_bipoly_ring_laws_random():
    rng = random.Random(6)

    def rand_poly():
        rows = [
            [rng.randrange(11) for _ in range(rng.randint(1, 4))]
            for _ in range(rng.randint(1, 4))
        ]
        return BiPoly.of(P11, rows)

    for _ in range(40):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        x, y = rng.randrange(11), rng.randrange(11)
        assert (a * b).evaluate(x, y) == a.evaluate(x, y) * b.evaluate(x, y) % 11


def test_bipoly_text_round_trip():
    f = BiPoly.of(P11, [[3, 0, 1], [0, 5, 0], [7, 0, 0]])
    text = f.to_text()
    assert BiPoly.from_text(P11, text) == f
    # lines sorted by (total degree, x-exponent)
    keys = [(i + j, i) for line in text.splitlines()
            for i, j in [tuple(map(int, line.split(":")[1].split(",")))]]
    assert keys == sorted(keys)
    with pytest.raises(ValueError):
        BiPoly.from_text(P11, "1:2")


def test_elementary_symmetric_examples():
    assert elementary_symmetric(FpSet.of(P11, [])).values == (1,)
    prof = elementary_symmetric(FpSet.of(P11, [0, 1, 2, 3, 5]))
    assert prof.values[0] == 1
    assert prof.values[1] == (0 + 1 + 2 + 3 + 5) % 11 == 0
    assert prof.values[5] == 0  # product includes 0
    assert len(prof.values) == 6


def test_elementary_symmetric_against_brute_products():
    import itertools
    import math

    rng = random.Random(9)
    for _ in range(30):
        s = _random_set(rng, P11, rng.randint(0, 6))
        prof = elementary_symmetric(s)
        for i in range(len(s) + 1):
            expected = sum(
                math.prod(combo) for combo in itertools.combinations(s.elements, i)
            ) % 11
            assert prof.values[i] == expected


def test_vanishing_polynomial_examples():
    assert vanishing_polynomial(FpSet.of(P7, [0])).coeffs == (0, 1)
    q = vanishing_polynomial(FpSet.of(P7, [1, 2]))
    assert q.coeffs == (2, 4, 1)  # z^2 - 3z + 2
    with pytest.raises(EmptySet):
        vanishing_polynomial(FpSet.of(P7, []))
    rng = random.Random(10)
    for _ in range(30):
        s = _random_set(rng, P11, rng.randint(1, 8))
        q = vanishing_polynomial(s)
        assert q.degree == len(s)
        assert q.coeffs[-1] == 1
        assert all(q.evaluate(e) == 0 for e in s.elements)
        # signed symmetric values appear as coefficients
        prof = elementary_symmetric(s).values
        k = len(s)
        for i in range(k + 1):
            assert q.coefficient(k - i) == (-1) ** i * prof[i] % 11


def test_build_locus_poly_shape():
    assert build_locus_poly(FpSet.of(P11, [])) == BiPoly.of(P11, [[0, 10], [1, 0]])
    c = FpSet.of(P11, range(1, 9))
    f = build_locus_poly(c)
    assert f.total_degree == 9
    assert f.get(9, 0) == 1
    got = {(i, j): v for v, i, j in f.terms()}
    assert got == brute_locus_coefficients(c.elements, 11)


def test_locus_poly_vanishes_on_grid():
    rng = random.Random(12)
    for _ in range(20):
        a = _random_set(rng, P11, rng.randint(1, 5))
        b = _random_set(rng, P11, rng.randint(1, 5))
        f = build_locus_poly(restricted_sumset(a, b))
        assert all(f.evaluate(x, y) == 0 for x in a.elements for y in b.elements)


def test_homogeneous_components_reassemble():
    rng = random.Random(14)
    for _ in range(20):
        rows = [
            [rng.randrange(11) for _ in range(rng.randint(1, 5))]
            for _ in range(rng.randint(1, 5))
        ]
        f = BiPoly.of(P11, rows)
        comps = homogeneous_components(f)
        assert len(comps) == f.total_degree + 1 if not f.is_zero else not comps
        total = BiPoly.zero(P11)
        for d, comp in enumerate(comps):
            for _, i, j in comp.terms():
                assert i + j == d
            total = total + comp
        assert total == f
    hom = pi_poly(4, P11)
    comps = homogeneous_components(hom)
    assert sum(1 for c in comps if not c.is_zero) == 1


def test_homogeneous_top_of_locus_is_antisymmetric_kernel():
    c = FpSet.of(P11, range(1, 9))
    f = build_locus_poly(c)
    assert f.homogeneous_component(9) == pi_poly(9, P11)


def test_cij_examples():
    for i in range(1, 12):
        assert cij(i, i, P11).residue == 1
        assert cij(i, 0, P11).residue == 10
    assert cij(3, 2, P11).residue == 1
    assert cij(4, 2, P11).residue == 0
    assert cij(9, 5, P11).residue == 3  # 70 - 56 = 14
    with pytest.raises(IndexOutOfRange):
        cij(3, 4, P11)
    with pytest.raises(IndexOutOfRange):
        cij(0, 0, P11)
    with pytest.raises(IndexOutOfRange):
        cij(3, -1, P11)


def test_cij_against_expansion_oracle():
    # direct convolution expansion, exact integers, then reduced
    for i in range(1, 51):
        row = antisym_row(i)
        for j in range(i + 1):
            assert cij_exact(i, j) == row[j]
    for pv in (11, 13, 17):
        p = Prime(pv)
        for i in range(1, pv):
            row = antisym_row(i)
            for j in range(i + 1):
                assert cij(i, j, p).residue == row[j] % pv


def test_cij_antisymmetry_and_closed_form_agreement():
    rows = pascal_rows(60)
    for i in range(1, 51):
        for j in range(i + 1):
            assert cij_exact(i, j) == -cij_exact(i, i - j)
        for j in range(1, i):
            diff = rows[i - 1][j - 1] - rows[i - 1][j]
            ratio = Fraction(2 * j - i, j) * rows[i - 1][j - 1]
            assert Fraction(diff) == ratio
            assert cij_exact(i, j) == diff
    for pv in (11, 13, 17):
        p = Prime(pv)
        for i in range(1, pv + 1):
            for j in range(i + 1):
                assert cij(i, j, p).residue == (-cij(i, i - j, p).residue) % pv


def test_pi_poly_matches_cij_table():
    assert pi_poly(1, P11) == BiPoly.of(P11, [[0, 10], [1, 0]])
    p3 = pi_poly(3, P11)
    # x^3 + x^2 y - x y^2 - y^3
    assert [p3.get(j, 3 - j) for j in range(4)] == [10, 10, 1, 1]
    for i in range(1, 26):
        poly = pi_poly(i, Prime(29))
        assert poly.total_degree == i
        for j in range(i + 1):
            assert poly.get(j, i - j) == cij(i, j, Prime(29)).residue


def test_sigma_expansion_equals_locus_product():
    assert sigma_expansion(FpSet.of(P11, [])) == BiPoly.of(P11, [[0, 10], [1, 0]])
    c = FpSet.of(P11, range(1, 9))
    f = build_locus_poly(c)
    expanded = sigma_expansion(c)
    assert expanded == f
    # all 55 dense coefficients of the degree-9 triangle agree
    assert sum(1 for _ in f.terms()) <= 55
    rng = random.Random(21)
    for _ in range(50):
        pv = rng.choice((11, 13, 17))
        p = Prime(pv)
        size = rng.randint(2, min(12, pv - 1))
        c = _random_set(rng, p, size)
        assert sigma_expansion(c) == build_locus_poly(c)


def test_sigma_expansion_even_size_flag():
    odd = FpSet.of(P11, [1, 2, 3])
    assert sigma_expansion(odd) == build_locus_poly(odd)
    with pytest.raises(OddSize):
        sigma_expansion(odd, require_even_size=True)
    even = FpSet.of(P11, [1, 2])
    assert sigma_expansion(even, require_even_size=True) == build_locus_poly(even)


def test_roots_examples():
    assert roots_over_fp(UniPoly.of(P7, [1, 0, 1])).elements == ()
    assert roots_over_fp(UniPoly.of(Prime(13), [1, 0, 1])).elements == (5, 8)
    with pytest.raises(ZeroPolynomial):
        roots_over_fp(UniPoly.of(P7, []))
    rng = random.Random(22)
    for _ in range(50):
        s = _random_set(rng, P11, rng.randint(1, 8))
        assert roots_over_fp(vanishing_polynomial(s)) == s
        assert splits_with_distinct_roots(vanishing_polynomial(s))
    assert not splits_with_distinct_roots(UniPoly.of(P7, [1, 0, 1]))
