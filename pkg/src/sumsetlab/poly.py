"""Dense polynomial algebra over Z/pZ, univariate and bivariate.

Univariate polynomials are ascending coefficient tuples; bivariate ones are
rectangular tables indexed by (x-exponent, y-exponent). Degrees stay small
(a few dozen), so everything is plain dense arithmetic on ints.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    EmptySet,
    IndexOutOfRange,
    ModulusMismatch,
    OddSize,
    ZeroPolynomial,
)
from .field import FieldElement, Prime, as_prime, binomial_mod
from .sets import FpSet

__all__ = [
    "UniPoly",
    "BiPoly",
    "SymmetricProfile",
    "elementary_symmetric",
    "vanishing_polynomial",
    "build_locus_poly",
    "homogeneous_components",
    "cij",
    "cij_exact",
    "pi_poly",
    "sigma_expansion",
    "roots_over_fp",
    "splits_with_distinct_roots",
]


@dataclass(frozen=True)
class UniPoly:
    """Polynomial in one variable; coeffs[i] multiplies z**i.

    The zero polynomial is the empty tuple and reports degree -1; nonzero
    polynomials always carry a nonzero leading coefficient.
    """

    modulus: Prime
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p = self.modulus.value
        for c in self.coeffs:
            if not 0 <= c < p:
                raise ValueError(f"coefficient {c} not reduced mod {p}")
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def of(cls, p: Prime | int, coeffs: Iterable[int]) -> "UniPoly":
        prime = as_prime(p)
        reduced = [c % prime.value for c in coeffs]
        while reduced and reduced[-1] == 0:
            reduced.pop()
        return cls(prime, tuple(reduced))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def evaluate(self, x: int) -> int:
        p = self.modulus.value
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % p
        return acc

    def _check(self, other: "UniPoly"):
        if self.modulus != other.modulus:
            raise ModulusMismatch("polynomials over different moduli")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly.of(
            self.modulus,
            [self.coefficient(i) + other.coefficient(i) for i in range(n)],
        )

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly.of(
            self.modulus,
            [self.coefficient(i) - other.coefficient(i) for i in range(n)],
        )

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        if self.is_zero or other.is_zero:
            return UniPoly.of(self.modulus, [])
        p = self.modulus.value
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if not ci:
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] = (out[i + j] + ci * cj) % p
        return UniPoly.of(self.modulus, out)

    def __repr__(self) -> str:
        return f"UniPoly(p={self.modulus.value}, coeffs={self.coeffs})"


@dataclass(frozen=True)
class BiPoly:
    """Polynomial in x and y as a dense (dx+1) x (dy+1) coefficient table.

    table[i][j] is the coefficient of x**i y**j. The table is trimmed: no
    trailing all-zero rows or columns; the zero polynomial has an empty table.
    """

    modulus: Prime
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p = self.modulus.value
        widths = {len(row) for row in self.table}
        if len(widths) > 1:
            raise ValueError("coefficient table must be rectangular")
        for row in self.table:
            for c in row:
                if not 0 <= c < p:
                    raise ValueError(f"coefficient {c} not reduced mod {p}")

    @classmethod
    def of(cls, p: Prime | int, rows: Iterable[Iterable[int]]) -> "BiPoly":
        prime = as_prime(p)
        data = [[c % prime.value for c in row] for row in rows]
        width = max((len(r) for r in data), default=0)
        for r in data:
            r.extend([0] * (width - len(r)))
        while data and not any(data[-1]):
            data.pop()
        while data and width and not any(row[width - 1] for row in data):
            width -= 1
            data = [row[:width] for row in data]
        return cls(prime, tuple(tuple(row) for row in data))

    @classmethod
    def zero(cls, p: Prime | int) -> "BiPoly":
        return cls.of(p, [])

    @classmethod
    def monomial(cls, p: Prime | int, c: int, i: int, j: int) -> "BiPoly":
        rows = [[0] * (j + 1) for _ in range(i + 1)]
        rows[i][j] = c
        return cls.of(p, rows)

    @classmethod
    def from_unipoly_x(cls, q: UniPoly) -> "BiPoly":
        return cls.of(q.modulus, [[c] for c in q.coeffs])

    @classmethod
    def from_unipoly_y(cls, q: UniPoly) -> "BiPoly":
        return cls.of(q.modulus, [list(q.coeffs)])

    @property
    def is_zero(self) -> bool:
        return not self.table

    @property
    def x_degree(self) -> int:
        return len(self.table) - 1

    @property
    def y_degree(self) -> int:
        return len(self.table[0]) - 1 if self.table else -1

    @functools.cached_property
    def total_degree(self) -> int:
        best = -1
        for i, row in enumerate(self.table):
            for j, c in enumerate(row):
                if c and i + j > best:
                    best = i + j
        return best

    def get(self, i: int, j: int) -> int:
        if 0 <= i < len(self.table) and 0 <= j < len(self.table[i]):
            return self.table[i][j]
        return 0

    def terms(self) -> Iterator[tuple[int, int, int]]:
        """Nonzero (coefficient, i, j), sorted by (total degree, x-exponent)."""
        found = [
            (i + j, i, self.table[i][j])
            for i in range(len(self.table))
            for j in range(len(self.table[i]))
            if self.table[i][j]
        ]
        for d, i, c in sorted(found):
            yield c, i, d - i

    def _check(self, other: "BiPoly"):
        if self.modulus != other.modulus:
            raise ModulusMismatch("polynomials over different moduli")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        rows = max(len(self.table), len(other.table))
        cols = max(
            len(self.table[0]) if self.table else 0,
            len(other.table[0]) if other.table else 0,
        )
        return BiPoly.of(
            self.modulus,
            [
                [self.get(i, j) + other.get(i, j) for j in range(cols)]
                for i in range(rows)
            ],
        )

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + other.scale(-1)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        if self.is_zero or other.is_zero:
            return BiPoly.zero(self.modulus)
        p = self.modulus.value
        rows = len(self.table) + len(other.table) - 1
        cols = len(self.table[0]) + len(other.table[0]) - 1
        out = [[0] * cols for _ in range(rows)]
        for i, row in enumerate(self.table):
            for j, c in enumerate(row):
                if not c:
                    continue
                for u, orow in enumerate(other.table):
                    for v, d in enumerate(orow):
                        if d:
                            out[i + u][j + v] = (out[i + u][j + v] + c * d) % p
        return BiPoly.of(self.modulus, out)

    def scale(self, c: int) -> "BiPoly":
        c %= self.modulus.value
        if c == 0:
            return BiPoly.zero(self.modulus)
        return BiPoly.of(
            self.modulus, [[c * v for v in row] for row in self.table]
        )

    def evaluate(self, x: int, y: int) -> int:
        p = self.modulus.value
        acc = 0
        xp = 1
        for row in self.table:
            inner = 0
            for c in reversed(row):
                inner = (inner * y + c) % p
            acc = (acc + xp * inner) % p
            xp = xp * x % p
        return acc

    def homogeneous_component(self, d: int) -> "BiPoly":
        rows = [
            [c if i + j == d else 0 for j, c in enumerate(row)]
            for i, row in enumerate(self.table)
        ]
        return BiPoly.of(self.modulus, rows)

    def to_text(self) -> str:
        """One 'c:i,j' line per nonzero monomial, in (total degree, i) order."""
        return "\n".join(f"{c}:{i},{j}" for c, i, j in self.terms())

    @classmethod
    def from_text(cls, p: Prime | int, text: str) -> "BiPoly":
        prime = as_prime(p)
        entries = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                c_part, ij = line.split(":")
                i_part, j_part = ij.split(",")
                c, i, j = int(c_part), int(i_part), int(j_part)
            except ValueError as exc:
                raise ValueError(f"bad monomial line {lineno}: {raw!r}") from exc
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent on line {lineno}: {raw!r}")
            entries[(i, j)] = entries.get((i, j), 0) + c
        if not entries:
            return cls.zero(prime)
        rows = max(i for i, _ in entries) + 1
        cols = max(j for _, j in entries) + 1
        table = [[0] * cols for _ in range(rows)]
        for (i, j), c in entries.items():
            table[i][j] = c % prime.value
        return cls.of(prime, table)

    def __repr__(self) -> str:
        return f"BiPoly(p={self.modulus.value}, deg={self.total_degree})"


@dataclass(frozen=True)
class SymmetricProfile:
    """Values e_0..e_m of the elementary symmetric polynomials of a set."""

    modulus: Prime
    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values or self.values[0] != 1:
            raise ValueError("profile must start with e_0 = 1")

    def __len__(self) -> int:
        return len(self.values)


def elementary_symmetric(s: FpSet) -> SymmetricProfile:
    """e_i(s) for 0 <= i <= |s| via the incremental product (z+x_1)(z+x_2)..."""
    p = s.modulus.value
    es = [1]
    for x in s.elements:
        es.append(0)
        for i in range(len(es) - 1, 0, -1):
            es[i] = (es[i] + x * es[i - 1]) % p
    return SymmetricProfile(s.modulus, tuple(es))


def vanishing_polynomial(s: FpSet) -> UniPoly:
    """The monic product of (z - x) over x in s; degree |s|."""
    if not s.elements:
        raise EmptySet("vanishing polynomial of the empty set is not defined")
    p = s.modulus.value
    coeffs = [1]
    for x in s.elements:
        coeffs = [0] + coeffs
        minus = (-x) % p
        for i in range(len(coeffs) - 1):
            coeffs[i] = (coeffs[i] + minus * coeffs[i + 1]) % p
    return UniPoly.of(s.modulus, coeffs)


def build_locus_poly(c: FpSet) -> BiPoly:
    """(x - y) times the product of (x + y - t) over t in c; degree |c|+1."""
    prime = c.modulus
    f = BiPoly.of(prime, [[0, -1], [1, 0]])  # x - y
    for t in c.elements:
        factor = BiPoly.of(prime, [[-t, 1], [1, 0]])  # x + y - t
        f = f * factor
    return f


def homogeneous_components(f: BiPoly) -> list[BiPoly]:
    """Components by total degree 0..deg(f); they sum back to f exactly."""
    if f.is_zero:
        return []
    return [f.homogeneous_component(d) for d in range(f.total_degree + 1)]


def cij(i: int, j: int, p: Prime | int) -> FieldElement:
    """Coefficient of x**j y**(i-j) in (x - y)(x + y)**(i-1), mod p.

    Edge columns are +-1; interior columns are the binomial difference
    C(i-1, j-1) - C(i-1, j). Requires 1 <= i and 0 <= j <= i.
    """
    prime = as_prime(p)
    if i < 1 or j < 0 or j > i:
        raise IndexOutOfRange(f"no coefficient at (i, j) = ({i}, {j})")
    if j == i:
        return prime.element(1)
    if j == 0:
        return prime.element(-1)
    return binomial_mod(i - 1, j - 1, prime) - binomial_mod(i - 1, j, prime)


def cij_exact(i: int, j: int) -> int:
    """Same coefficient as an exact integer."""
    if i < 1 or j < 0 or j > i:
        raise IndexOutOfRange(f"no coefficient at (i, j) = ({i}, {j})")
    if j == i:
        return 1
    if j == 0:
        return -1
    return math.comb(i - 1, j - 1) - math.comb(i - 1, j)


def pi_poly(i: int, p: Prime | int) -> BiPoly:
    """(x - y)(x + y)**(i-1), homogeneous of degree i, by direct expansion."""
    prime = as_prime(p)
    if i < 1:
        raise IndexOutOfRange("degree must be at least 1")
    f = BiPoly.of(prime, [[0, -1], [1, 0]])  # x - y
    plus = BiPoly.of(prime, [[0, 1], [1, 0]])  # x + y
    for _ in range(i - 1):
        f = f * plus
    return f


def sigma_expansion(c: FpSet, require_even_size: bool = False) -> BiPoly:
    """Rebuild the locus polynomial of c from its symmetric function values.

    Returns sum over i of (-1)**i e_i(c) (x - y)(x + y)**(|c| - i), which
    must equal build_locus_poly(c) identically. Works for any set size;
    require_even_size enforces the |c| = 2k-2 shape of the extremal setting.
    """
    m = len(c)
    if require_even_size and m % 2 != 0:
        raise OddSize(f"set size {m} is odd")
    sig = elementary_symmetric(c).values
    total = BiPoly.zero(c.modulus)
    for i in range(m + 1):
        sign = 1 if i % 2 == 0 else -1
        total = total + pi_poly(m + 1 - i, c.modulus).scale(sign * sig[i])
    return total


def roots_over_fp(q: UniPoly) -> FpSet:
    """All r with q(r) = 0, by trial evaluation; multiplicity ignored."""
    if q.is_zero:
        raise ZeroPolynomial("every residue is a root of the zero polynomial")
    p = q.modulus.value
    return FpSet.of(q.modulus, (r for r in range(p) if q.evaluate(r) == 0))


def splits_with_distinct_roots(q: UniPoly) -> bool:
    """True iff q has deg(q) distinct roots in the field."""
    return not q.is_zero and len(roots_over_fp(q)) == q.degree
