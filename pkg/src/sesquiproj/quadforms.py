"""Class-number arithmetic.

Hurwitz class numbers H(n) with two backends (reduced-form enumeration and
the analytic class-number formula through the Hurwitz-Kronecker identity),
narrow class numbers h+(d), regulators R(d), and the regulator-weighted
class-number sum hstar(d) for positive d.
"""
from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .arith import (
    Factorization,
    factorize,
    fundamental_decomposition,
    is_discriminant,
    is_fundamental_discriminant,
    kronecker,
    sqrt_if_square,
)
from .errors import ConvergenceError, DomainError

try:
    from ._fastclassno import HAVE_NUMBA, FastHurwitzBackend
except Exception:  # pragma: no cover
    HAVE_NUMBA = False
    FastHurwitzBackend = None  # type: ignore

_DIRECT_LIMIT = 10**8
CACHE_DIR_ENV = "SESQUIPROJ_CACHE_DIR"


@dataclass(frozen=True)
class BQF:
    """Integer binary quadratic form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return math.gcd(math.gcd(abs(self.a), abs(self.b)), abs(self.c))

    @property
    def is_primitive(self) -> bool:
        return self.content == 1


@dataclass(frozen=True)
class PellSolution:
    """Minimal t, u > 0 with t^2 - d u^2 = 4."""

    t: int
    u: int
    d: int

    def __post_init__(self):
        if self.t * self.t - self.d * self.u * self.u != 4:
            raise DomainError("not a solution of t^2 - d u^2 = 4")


# ---------------------------------------------------------------------------
# Hurwitz class numbers, enumeration backend


def _hurwitz12_direct(n: int) -> int:
    # 12*H(n) by enumerating reduced definite forms of discriminant -n
    if n % 4 in (1, 2):
        return 0
    total = 0
    b = n % 2
    while b * b <= n:
        m4 = b * b + n
        if m4 % 4 == 0:
            m = m4 // 4
            a = max(b, 1)
            while a * a <= m:
                if m % a == 0:
                    c = m // a
                    unique = b == 0 or b == a or a == c
                    if a == b == c:
                        w = 4  # stabilizer of order 6
                    elif b == 0 and a == c:
                        w = 6  # stabilizer of order 4
                    else:
                        w = 12
                    total += w if unique else 2 * w
                a += 1
        b += 2
    return total


def hurwitz_direct(n: int) -> Fraction:
    """H(n) by reduced-form enumeration; the trusted oracle backend."""
    if n < 0:
        raise DomainError(f"hurwitz_direct requires n >= 0, got {n}")
    if n == 0:
        return Fraction(-1, 12)
    if n > _DIRECT_LIMIT:
        raise DomainError(f"n = {n} exceeds the enumeration guard; use hurwitz_fast")
    return Fraction(_hurwitz12_direct(n), 12)


def hurwitz_direct_table(nmax: int) -> list[int]:
    """12*H(n) for all 0 <= n <= nmax in one sweep over reduced forms."""
    table = [0] * (nmax + 1)
    table[0] = -1
    amax = math.isqrt(nmax // 3) + 1
    for a in range(1, amax + 1):
        for b in range(0, a + 1):
            if 4 * a * a - b * b > nmax:
                continue
            for c in range(a, (nmax + b * b) // (4 * a) + 1):
                n = 4 * a * c - b * b
                if n <= 0 or n > nmax:
                    continue
                unique = b == 0 or b == a or a == c
                if a == b == c:
                    w = 4
                elif b == 0 and a == c:
                    w = 6
                else:
                    w = 12
                table[n] += w if unique else 2 * w
    return table


# ---------------------------------------------------------------------------
# Analytic backend

_backend_lock = threading.Lock()
_fast_backend: Optional["FastHurwitzBackend"] = None


def _get_backend() -> Optional["FastHurwitzBackend"]:
    global _fast_backend
    if not HAVE_NUMBA:
        return None
    with _backend_lock:
        if _fast_backend is None:
            _fast_backend = FastHurwitzBackend()
        return _fast_backend


def _classno_fund_python(D: int) -> int:
    # Pure-python mirror of the kernel in _fastclassno.
    q = -D
    sq = math.sqrt(q)
    target = math.pi / (16.0 * sq)
    N = int(1.3 * sq) + 1
    while q * math.exp(-math.pi * N * N / q) / (math.pi * N * N) > target:
        N += max(4, N // 16)
    chi = [0] * (N + 1)
    chi[1] = 1
    spf = [0] * (N + 1)
    for i in range(2, N + 1):
        if spf[i] == 0:
            for j in range(i, N + 1, i):
                if spf[j] == 0:
                    spf[j] = i
    for n in range(2, N + 1):
        p = spf[n]
        m = n // p
        chi[n] = kronecker(D, p) if m == 1 else chi[m] * chi[p]
    c1 = math.pi / q
    c2 = math.sqrt(math.pi / q)
    pref = math.pi / sq
    terms = [
        cv * (math.exp(-c1 * n * n) / n + pref * math.erfc(c2 * n))
        for n, cv in enumerate(chi)
        if cv
    ]
    hval = sq * math.fsum(terms) / math.pi
    h = round(hval)
    if abs(hval - h) > 0.25 or h <= 0:
        raise ConvergenceError(f"class number rounding not certified for D={D}")
    return h


def class_number_fundamental(D: int) -> int:
    """h(D) for fundamental D < 0, by certified rounding of sqrt|D| L(1,chi_D)/pi."""
    if D >= 0 or not is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not a negative fundamental discriminant")
    if D == -3 or D == -4:
        return 1
    backend = _get_backend()
    if backend is not None:
        h = backend.classno_fund(D)
        if h == -2:
            raise ConvergenceError(f"class number rounding not certified for D={D}")
        if h > 0:
            return h
    return _classno_fund_python(D)


class HurwitzCache:
    """Thread-safe map n -> H(n), optionally persisted as 'n,num,den' lines."""

    def __init__(self, path: Optional[str] = None):
        self._data: dict[int, Fraction] = {}
        self._lock = threading.Lock()
        self.path = path
        if path and os.path.exists(path):
            self.load(path)

    def __len__(self) -> int:
        return len(self._data)

    def get(self, n: int) -> Optional[Fraction]:
        return self._data.get(n)

    def put(self, n: int, value: Fraction) -> None:
        with self._lock:
            self._data[n] = value

    def load(self, path: str) -> None:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                n, num, den = line.split(",")
                self._data[int(n)] = Fraction(int(num), int(den))

    def save(self, path: Optional[str] = None) -> None:
        path = path or self.path
        if not path:
            raise ValueError("no cache path configured")
        with self._lock:
            items = sorted(self._data.items())
        with open(path, "w") as fh:
            for n, v in items:
                fh.write(f"{n},{v.numerator},{v.denominator}\n")


def _default_cache() -> HurwitzCache:
    directory = os.environ.get(CACHE_DIR_ENV)
    if directory:
        os.makedirs(directory, exist_ok=True)
        return HurwitzCache(os.path.join(directory, "hurwitz.csv"))
    return HurwitzCache()


_global_cache = _default_cache()


def hurwitz_fast(n: int, cache: Optional[HurwitzCache] = None) -> Fraction:
    """H(n) through the Hurwitz-Kronecker identity with the analytic backend.

    Writes -n = D0 f^2 and returns (2 h(D0)/w(D0)) sum_{d|f} mu(d) (D0|d) sigma1(f/d).
    """
    if n < 0:
        raise DomainError(f"hurwitz_fast requires n >= 0, got {n}")
    if n == 0:
        return Fraction(-1, 12)
    if n % 4 in (1, 2):
        return Fraction(0)
    cache = cache if cache is not None else _global_cache
    hit = cache.get(n)
    if hit is not None:
        return hit
    backend = _get_backend()
    if backend is not None:
        h12 = backend.hurwitz12(n)
        if h12 == -3:
            raise DomainError(f"n = {n} exceeds the fast-backend guard")
        if h12 < 0:
            raise ConvergenceError(f"class number rounding not certified for n={n}")
        value = Fraction(h12, 12)
    else:
        d0, f = fundamental_decomposition(-n)
        w = 6 if d0 == -3 else 4 if d0 == -4 else 2
        h = class_number_fundamental(d0)
        fac = factorize(f)
        T = 0
        for d in fac.divisors():
            mu = factorize(d).mobius()
            if mu == 0:
                continue
            T += mu * kronecker(d0, d) * factorize(f // d).sigma1()
        value = Fraction(2 * h * T, w)
    cache.put(n, value)
    return value


def hurwitz_batch(ns: Iterable[int], cache: Optional[HurwitzCache] = None) -> list[Fraction]:
    return [hurwitz_fast(n, cache) for n in ns]


# ---------------------------------------------------------------------------
# Indefinite forms: Pell, regulator, narrow class number


def _is_reduced_indefinite(a: int, b: int, c: int, d: int) -> bool:
    # reduced iff 0 < b < sqrt(d) and sqrt(d) - b < 2|a| < sqrt(d) + b
    if b <= 0 or b * b >= d:
        return False
    ta = 2 * abs(a)
    if (ta + b) ** 2 <= d:
        return False
    if ta > b and (ta - b) ** 2 >= d:
        return False
    return True


def _rho(form: tuple[int, int, int], d: int, sd: int) -> tuple[tuple[int, int, int], int]:
    """Right-neighbor step; returns the new form and the shear s of the step matrix."""
    a, b, c = form
    ac = abs(c)
    two_c = 2 * ac
    if ac > sd:
        r = (-b) % two_c
        if r > ac:
            r -= two_c
    else:
        r = sd - ((sd + b) % two_c)
    s = (b + r) // (2 * c)
    return (c, r, (r * r - d) // (4 * c)), s


def pell_fundamental(d: int) -> PellSolution:
    """Fundamental automorph of the principal cycle: minimal (t, u), t^2 - d u^2 = 4."""
    if d <= 0 or d % 4 in (2, 3):
        raise DomainError(f"{d} is not a positive discriminant")
    if sqrt_if_square(d) is not None:
        raise DomainError(f"{d} is a square; no Pell solution")
    sd = math.isqrt(d)
    b0 = d % 2
    form = (1, b0, (b0 * b0 - d) // 4)
    while not _is_reduced_indefinite(*form, d):
        form, _ = _rho(form, d, sd)
    start = form
    m00, m01, m10, m11 = 1, 0, 0, 1
    while True:
        form, s = _rho(form, d, sd)
        m00, m01 = m01, -m00 + m01 * s
        m10, m11 = m11, -m10 + m11 * s
        if form == start:
            break
    t = abs(m00 + m11)
    u = abs(m10) // abs(start[0])
    return PellSolution(t, u, d)


def _log_unit(t: int, u: int, d: int) -> float:
    # log((t + u sqrt(d))/2) stable for huge integer t, u
    lt = math.log(t)
    x = math.log(u) + 0.5 * math.log(d) - lt
    return lt + math.log1p(math.exp(x)) - math.log(2)


def regulator(d: int) -> float:
    """R(d): 2 log eps_d for nonsquare d, 2 log sqrt(d) for square d."""
    if d <= 0 or d % 4 in (2, 3):
        raise DomainError(f"{d} is not a positive discriminant")
    if sqrt_if_square(d) is not None:
        return math.log(d)
    sol = pell_fundamental(d)
    return 2.0 * _log_unit(sol.t, sol.u, d)


def reduced_indefinite_forms(d: int) -> set[tuple[int, int, int]]:
    """All reduced primitive forms of nonsquare discriminant d > 0."""
    out = set()
    for b in range(1, math.isqrt(d) + 1):
        if (d - b * b) % 4:
            continue
        ac = (d - b * b) // 4
        if ac == 0:
            continue
        for a1 in range(1, math.isqrt(ac) + 1):
            if ac % a1:
                continue
            c1 = ac // a1
            for aa, cc in ((a1, -c1), (-a1, c1), (c1, -a1), (-c1, a1)):
                if _is_reduced_indefinite(aa, b, cc, d):
                    if math.gcd(math.gcd(abs(aa), b), abs(cc)) == 1:
                        out.add((aa, b, cc))
    return out


def rho_cycles(d: int) -> list[list[tuple[int, int, int]]]:
    """Partition the reduced primitive forms of nonsquare d into rho-cycles."""
    forms = reduced_indefinite_forms(d)
    sd = math.isqrt(d)
    seen: set[tuple[int, int, int]] = set()
    cycles = []
    for f in sorted(forms):
        if f in seen:
            continue
        cyc = []
        g = f
        while True:
            cyc.append(g)
            seen.add(g)
            g, _ = _rho(g, d, sd)
            if g == f:
                break
            if g not in forms:
                raise ConvergenceError(f"rho left the reduced set at {g} (d={d})")
        cycles.append(cyc)
    return cycles


def _square_disc_orbits(d: int, root: int, bound: int) -> int:
    """Components of the generator graph on primitive forms with disc d = root^2,
    coefficients bounded by `bound`."""
    nodes = set()
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            rem = b * b - d
            if a == 0:
                if rem != 0:
                    continue
                for c in range(-bound, bound + 1):
                    q = (a, b, c)
                    if math.gcd(math.gcd(abs(a), abs(b)), abs(c)) == 1:
                        nodes.add(q)
            else:
                if rem % (4 * a):
                    continue
                c = rem // (4 * a)
                if abs(c) > bound:
                    continue
                if math.gcd(math.gcd(abs(a), abs(b)), abs(c)) == 1:
                    nodes.add((a, b, c))
    # drop negative definite forms (none exist for d > 0, kept for clarity)
    parent: dict[tuple[int, int, int], tuple[int, int, int]] = {q: q for q in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for a, b, c in nodes:
        for img in ((c, -b, a), (a, b + 2 * a, a + b + c), (a, b - 2 * a, a - b + c)):
            if img in parent:
                union((a, b, c), img)
    return len({find(q) for q in nodes})


def hplus(d: int) -> int:
    """Narrow class number: SL2(Z)-classes of primitive forms of discriminant d > 0."""
    if d <= 0 or d % 4 in (2, 3):
        raise DomainError(f"{d} is not a positive discriminant")
    root = sqrt_if_square(d)
    if root is None:
        return len(rho_cycles(d))
    bound = 2 * root + 4
    counts = []
    for _ in range(8):
        counts.append(_square_disc_orbits(d, root, bound))
        if len(counts) >= 3 and counts[-1] == counts[-2] == counts[-3]:
            return counts[-1]
        bound *= 2
    raise ConvergenceError(f"square-discriminant orbit count did not stabilize for d={d}")


@lru_cache(maxsize=None)
def hstar(d: int) -> float:
    """(1/2pi) sum over l^2 | d with d/l^2 a discriminant of R(d/l^2) h+(d/l^2)."""
    if d < 1:
        raise DomainError(f"hstar requires d >= 1, got {d}")
    total = 0.0
    for l in range(1, math.isqrt(d) + 1):
        if d % (l * l):
            continue
        q = d // (l * l)
        if is_discriminant(q):
            total += regulator(q) * hplus(q)
    return total / (2 * math.pi)
