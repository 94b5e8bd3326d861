"""Exact arithmetic in the prime field Z/pZ.

Residues are plain ints in [0, p). ``FieldElement`` pairs one residue with
its modulus and overloads the arithmetic operators; mixing moduli raises
``ModulusMismatch``. Factorial tables are cached per prime so binomial
coefficients cost O(1) after first use.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import CompositeModulus, ModulusMismatch, ModulusTooSmall, ZeroInverse

__all__ = [
    "Prime",
    "FieldElement",
    "as_prime",
    "is_prime",
    "inverse",
    "inverse_mod",
    "binomial_mod",
]


def is_prime(n: int) -> bool:
    """Deterministic trial division; all target moduli are desk-scale."""
    if n < 2:
        return False
    if n in (2, 3):
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, order=True)
class Prime:
    """A modulus checked prime at construction."""

    value: int

    def __post_init__(self):
        if not is_prime(self.value):
            raise CompositeModulus(f"modulus {self.value} is not prime")

    def element(self, value: int) -> "FieldElement":
        """Reduce an arbitrary integer into this field."""
        return FieldElement(value % self.value, self)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Prime({self.value})"


def as_prime(p: Prime | int) -> Prime:
    """Coerce an int to a checked Prime; pass Primes through."""
    return p if isinstance(p, Prime) else Prime(p)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (g, s, t) with s*a + t*b == g
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def inverse_mod(a: int, p: int) -> int:
    """Multiplicative inverse of ``a`` mod ``p`` by extended Euclid."""
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    _, s, _ = _xgcd(a, p)
    return s % p


@dataclass(frozen=True)
class FieldElement:
    """A fully reduced residue together with its prime modulus."""

    residue: int
    modulus: Prime

    def __post_init__(self):
        if not 0 <= self.residue < self.modulus.value:
            raise ValueError(
                f"residue {self.residue} not reduced mod {self.modulus.value}"
            )

    def _coerce(self, other: "FieldElement | int") -> "FieldElement":
        if isinstance(other, int):
            return self.modulus.element(other)
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ModulusMismatch(
                f"mixed moduli {self.modulus.value} and {other.modulus.value}"
            )
        return other

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement((self.residue + o.residue) % self.modulus.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement((self.residue - o.residue) % self.modulus.value, self.modulus)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement((self.residue * o.residue) % self.modulus.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement((-self.residue) % self.modulus.value, self.modulus)

    def __truediv__(self, other):
        return self * inverse(self._coerce(other))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, exponent: int):
        base = self if exponent >= 0 else inverse(self)
        return self.modulus.element(pow(base.residue, abs(exponent), self.modulus.value))

    def __int__(self) -> int:
        return self.residue

    def __bool__(self) -> bool:
        return self.residue != 0

    def __repr__(self) -> str:
        return f"{self.residue} (mod {self.modulus.value})"


def inverse(a: FieldElement) -> FieldElement:
    """The x with a*x == 1; raises ZeroInverse on a == 0."""
    return FieldElement(inverse_mod(a.residue, a.modulus.value), a.modulus)


@functools.lru_cache(maxsize=None)
def _factorial_table(p: int) -> tuple[int, ...]:
    # n! mod p for 0 <= n <= p-1; every closed form we evaluate stays below p
    fact = [1] * p
    for n in range(1, p):
        fact[n] = fact[n - 1] * n % p
    return tuple(fact)


def binomial_mod(n: int, r: int, p: Prime | int) -> FieldElement:
    """C(n, r) mod p via factorial tables; requires n < p, returns 0 for r > n."""
    prime = as_prime(p)
    if n < 0 or r < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if n >= prime.value:
        raise ModulusTooSmall(f"C({n}, {r}) mod {prime.value} needs n < p")
    if r > n:
        return prime.element(0)
    fact = _factorial_table(prime.value)
    den = fact[r] * fact[n - r] % prime.value
    return prime.element(fact[n] * inverse_mod(den, prime.value))
