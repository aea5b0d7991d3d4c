"""Integer, factorization, and Dirichlet-character primitives.

Exact rationals are represented by :class:`fractions.Fraction` throughout the
package (always reduced, positive denominator).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import DomainError

_TRIAL_LIMIT = 10**6
_SMALL_PRIMES: list[int] = []


def _small_primes() -> list[int]:
    # primes below 10^6, sieved once on first use
    if not _SMALL_PRIMES:
        limit = _TRIAL_LIMIT
        sieve = bytearray([1]) * (limit + 1)
        sieve[0] = sieve[1] = 0
        for i in range(2, math.isqrt(limit) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
        _SMALL_PRIMES.extend(i for i in range(limit + 1) if sieve[i])
    return _SMALL_PRIMES


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for all integers a, n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    if e:
        if a % 2 == 0:
            return 0
        if e % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a|n) with n odd positive
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24, BPSW-strength beyond."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1

    def witness(a: int) -> bool:
        x = pow(a, d, n)
        if x in (1, n - 1):
            return False
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                return False
        return True

    bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    if any(witness(a) for a in bases):
        return False
    if n < 3_317_044_064_679_887_385_961_981:
        return True
    rng = random.Random(n)
    return not any(witness(rng.randrange(2, n - 1)) for _ in range(24))


def _pollard_brent(n: int) -> int:
    # returns a nontrivial factor of composite n
    if n % 2 == 0:
        return 2
    rng = random.Random(n ^ 0x5EED)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class Factorization:
    """Prime-exponent pairs, sorted by prime; product recovers the input."""

    factors: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)

    def squarefree_part(self) -> int:
        out = 1
        for p, e in self.factors:
            if e % 2:
                out *= p
        return out

    def square_root_part(self) -> int:
        """Largest f with f^2 dividing the value."""
        out = 1
        for p, e in self.factors:
            out *= p ** (e // 2)
        return out

    def sigma1(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= (p ** (e + 1) - 1) // (p - 1)
        return out

    def mobius(self) -> int:
        if any(e > 1 for _, e in self.factors):
            return 0
        return -1 if len(self.factors) % 2 else 1


def factorize(n: int) -> Factorization:
    """Exact factorization of n >= 1.

    Trial division by primes below 10^6, then probabilistic splitting with
    verified prime factors for larger cofactors.
    """
    if n < 1:
        raise DomainError(f"factorize requires n >= 1, got {n}")
    factors: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors[p] = e
    if m > 1:
        stack = [m]
        while stack:
            v = stack.pop()
            if v == 1:
                continue
            if is_probable_prime(v):
                factors[v] = factors.get(v, 0) + 1
                continue
            r = math.isqrt(v)
            if r * r == v:
                stack.extend((r, r))
                continue
            g = _pollard_brent(v)
            stack.extend((g, v // g))
    return Factorization(tuple(sorted(factors.items())))


def is_discriminant(d: int) -> bool:
    """True iff d is a nonzero integer congruent to 0 or 1 mod 4."""
    return d != 0 and d % 4 in (0, 1)


def sqrt_if_square(h: int) -> Optional[int]:
    """Exact integer square root of h >= 1, or None if h is not a square."""
    if h < 1:
        raise DomainError(f"sqrt_if_square requires h >= 1, got {h}")
    r = math.isqrt(h)
    return r if r * r == h else None


def is_fundamental_discriminant(d: int) -> bool:
    if not is_discriminant(d):
        return False
    if d % 4 == 1:
        return factorize(abs(d)).squarefree_part() == abs(d)
    q = d // 4
    return q % 4 in (2, 3) and factorize(abs(q)).squarefree_part() == abs(q)


def fundamental_decomposition(D: int) -> tuple[int, int]:
    """Write a discriminant D as D0 * f^2 with D0 fundamental; returns (D0, f)."""
    if not is_discriminant(D):
        raise DomainError(f"{D} is not a discriminant")
    fac = factorize(abs(D))
    s = fac.squarefree_part()
    if D < 0:
        s = -s
    if s % 4 == 1:
        d0 = s
    else:
        d0 = 4 * s
    f2 = D // d0
    f = math.isqrt(f2)
    assert d0 * f * f == D
    return d0, f


def square_divisors(d: int) -> list[int]:
    """Ascending list of all l >= 1 with l^2 | d."""
    if d < 1:
        raise DomainError(f"square_divisors requires d >= 1, got {d}")
    fac = factorize(d)
    root = Factorization(tuple((p, e // 2) for p, e in fac.factors if e >= 2))
    return root.divisors()


@dataclass(frozen=True)
class DirichletCharacter:
    """Dirichlet character stored as a full value table on residues 0..m-1.

    values[r] must vanish exactly when gcd(r, m) > 1, have modulus 1
    otherwise, and be completely multiplicative on residues.
    """

    modulus: int
    values: tuple

    def __post_init__(self):
        m = self.modulus
        if m < 1 or len(self.values) != m:
            raise DomainError("value table length must equal the modulus")
        for r, v in enumerate(self.values):
            coprime = math.gcd(r, m) == 1
            if coprime != (v != 0):
                raise DomainError(f"values[{r}] zero-pattern violates gcd rule")
            if v != 0 and abs(abs(v) - 1.0) > 1e-12:
                raise DomainError(f"|values[{r}]| must be 1, got {v!r}")
        for a in range(m):
            for b in range(a, m):
                lhs = self.values[a * b % m]
                rhs = self.values[a] * self.values[b]
                if abs(lhs - rhs) > 1e-9:
                    raise DomainError(f"not multiplicative at ({a},{b}) mod {m}")

    @classmethod
    def from_kronecker(cls, D: int) -> "DirichletCharacter":
        """The real character r -> kronecker(D, r), modulus |D|."""
        if not is_discriminant(D):
            raise DomainError(f"kronecker character needs a discriminant, got {D}")
        m = abs(D)
        return cls(m, tuple(kronecker(D, r) for r in range(m)))

    @classmethod
    def trivial(cls) -> "DirichletCharacter":
        return cls(1, (1,))

    def __call__(self, n: int):
        return self.values[n % self.modulus]

    @property
    def nu(self) -> int:
        """Parity: 0 for even characters, 1 for odd."""
        return 0 if self.values[-1 % self.modulus] == 1 else 1

    @property
    def is_odd(self) -> bool:
        return self.nu == 1

    @property
    def is_integer_valued(self) -> bool:
        return all(isinstance(v, int) or (isinstance(v, float) and v.is_integer())
                   for v in self.values)

    @property
    def is_real(self) -> bool:
        return all(not isinstance(v, complex) or v.imag == 0 for v in self.values)


def chi4() -> DirichletCharacter:
    """The odd character mod 4."""
    return DirichletCharacter.from_kronecker(-4)


def divisors(n: int) -> list[int]:
    return factorize(n).divisors()


def euler_phi(n: int) -> int:
    out = n
    for p, _ in factorize(n).factors:
        out -= out // p
    return out
