"""JIT-compiled kernels for the analytic class-number backend.

The workhorse is a certified evaluation of L(1, chi_D) for fundamental D < 0
by the theta-smoothed series

    L(1, chi_D) = sum_{n>=1} chi_D(n) [ e^{-pi n^2/q}/n + (pi/sqrt q) erfc(n sqrt(pi/q)) ],

q = |D|, truncated at N with tail below q e^{-pi N^2/q}/(pi N^2), which is kept
under pi/(16 sqrt q): four times inside the rounding gap of
h = sqrt(q) L / pi.  Everything here is also available through the pure-Python
fallbacks in quadforms; the kernels only make the same arithmetic fast.
"""
from __future__ import annotations

import math

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except Exception:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True, nogil=True)
def _spf_sieve(limit):
    spf = np.zeros(limit + 1, dtype=np.int32)
    for i in range(2, limit + 1):
        if spf[i] == 0:
            for j in range(i, limit + 1, i):
                if spf[j] == 0:
                    spf[j] = i
    return spf


@njit(cache=True, nogil=True)
def _jacobi(a, n):
    # Jacobi symbol, n odd positive
    a = a % n
    if a < 0:
        a += n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            r = n % 8
            if r == 3 or r == 5:
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a = a % n
    if n == 1:
        return result
    return 0


@njit(cache=True, nogil=True)
def _kron2(D):
    # Kronecker symbol (D|2)
    if D % 2 == 0:
        return 0
    r = D % 8
    if r < 0:
        r += 8
    if r == 1 or r == 7:
        return 1
    return -1


@njit(cache=True, nogil=True)
def _series_length(q):
    N = int(1.3 * math.sqrt(q)) + 1
    target = math.pi / (16.0 * math.sqrt(q))
    while q * math.exp(-math.pi * N * N / q) / (math.pi * N * N) > target:
        N += max(4, N // 16)
    return N


@njit(cache=True, nogil=True)
def _classno_fund_kernel(D, spf):
    """h(D) for fundamental D < -4.  -1: sieve too small, -2: rounding not certified."""
    q = -D
    N = _series_length(q)
    if N > spf.shape[0] - 1:
        return -1
    chi = np.zeros(N + 1, dtype=np.int8)
    chi[1] = 1
    d_even = D % 2 == 0
    for n in range(2, N + 1):
        if d_even and n % 2 == 0:
            continue
        p = spf[n]
        m = n // p
        if m == 1:
            if p == 2:
                chi[n] = _kron2(D)
            else:
                chi[n] = _jacobi(D % p, p)
        else:
            chi[n] = chi[m] * chi[p]
    c1 = math.pi / q
    c2 = math.sqrt(math.pi / q)
    pref = math.pi / math.sqrt(q)
    total = 0.0
    comp = 0.0
    for n in range(1, N + 1):
        cv = chi[n]
        if cv == 0:
            continue
        w = math.exp(-c1 * n * n) / n + pref * math.erfc(c2 * n)
        if cv == -1:
            w = -w
        # Kahan step
        y = w - comp
        t = total + y
        comp = (t - total) - y
        total = t
    hval = math.sqrt(q) * total / math.pi
    h = int(hval + 0.5) if hval > 0 else 0
    if abs(hval - h) > 0.25 or h <= 0:
        return -2
    return h


@njit(cache=True, nogil=True)
def _hurwitz12_kernel(n, spf, cube_primes):
    """12*H(n) for n >= 1.

    Returns 0 off the support n = 0,3 mod 4; -1/-2 propagate kernel failures;
    -3 flags inputs too large for the 63-bit intermediate guard.
    """
    if n % 4 == 1 or n % 4 == 2:
        return 0
    if n > 4_000_000_000_000:
        return -3
    # squarefree kernel s and square root part f of n
    f = 1
    s = 1
    m = n
    for i in range(cube_primes.shape[0]):
        p = cube_primes[i]
        if p * p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            f *= p ** (e // 2)
            if e % 2 == 1:
                s *= p
    if m > 1:
        # m has no factor <= cuberoot(m): it is 1, p, p^2 or pq
        r = int(math.sqrt(m) + 0.5)
        while r * r > m:
            r -= 1
        while (r + 1) * (r + 1) <= m:
            r += 1
        if r * r == m:
            f *= r
        else:
            s *= m
    if s % 4 == 3:
        d0 = -s
        ff = f
    else:
        d0 = -4 * s
        ff = f // 2
    if d0 == -3:
        base12 = 4  # 12 * 2/w, w = 6
    elif d0 == -4:
        base12 = 6  # w = 4
    else:
        h = _classno_fund_kernel(d0, spf)
        if h < 0:
            return h
        base12 = 12 * h
    # T = sum over squarefree d | ff of mu(d) (d0|d) sigma1(ff/d)
    pf = np.zeros(16, dtype=np.int64)
    npf = 0
    rem = ff
    p = 2
    while p * p <= rem:
        if rem % p == 0:
            pf[npf] = p
            npf += 1
            while rem % p == 0:
                rem //= p
        p += 1 if p == 2 else 2
    if rem > 1:
        pf[npf] = rem
        npf += 1
    T = 0
    for mask in range(1 << npf):
        d = 1
        mu = 1
        for i in range(npf):
            if mask & (1 << i):
                d *= pf[i]
                mu = -mu
        kr = 1
        for i in range(npf):
            if mask & (1 << i):
                p = pf[i]
                kr *= _kron2(d0) if p == 2 else _jacobi(d0 % p, p)
        if kr == 0:
            continue
        g = ff // d
        sig = 1
        gg = g
        for i in range(npf):
            p = pf[i]
            if gg % p == 0:
                e = 0
                while gg % p == 0:
                    gg //= p
                    e += 1
                sig *= (p ** (e + 1) - 1) // (p - 1)
        T += mu * kr * sig
    return base12 * T


class FastHurwitzBackend:
    """Holds the sieve state and dispatches to the JIT kernels."""

    def __init__(self):
        self._spf = _spf_sieve(64)
        self._cube_primes = np.array(
            [p for p in range(2, 1600) if all(p % r for r in range(2, int(p**0.5) + 1))],
            dtype=np.int64,
        )

    def _ensure(self, max_abs_disc: int) -> None:
        need = int(1.9 * math.sqrt(max(max_abs_disc, 100))) + 64
        if need > self._spf.shape[0] - 1:
            self._spf = _spf_sieve(int(need * 1.3))

    def classno_fund(self, D: int) -> int:
        self._ensure(-D)
        h = _classno_fund_kernel(D, self._spf)
        if h == -1:  # pragma: no cover - _ensure should prevent this
            self._ensure(-4 * D)
            h = _classno_fund_kernel(D, self._spf)
        return h

    def hurwitz12(self, n: int) -> int:
        self._ensure(n)
        v = _hurwitz12_kernel(n, self._spf, self._cube_primes)
        if v == -1:  # pragma: no cover
            self._ensure(4 * n)
            v = _hurwitz12_kernel(n, self._spf, self._cube_primes)
        return v
