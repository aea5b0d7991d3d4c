"""Truncated q-expansion algebra.

Dense power series over exact integers/rationals or floats; Dedekind eta
quotients built from the pentagonal-number expansion of prod (1 - q^n); unary
theta series; V- and Hecke operators; and the explicit weight-2 level-64
cusp-form basis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arith import DirichletCharacter
from .errors import DomainError, PrecisionError

_EXACT_TYPES = (int, Fraction)


class PowerSeries:
    """Truncated series sum_{n=0}^{prec} a_n q^n; immutable by convention.

    Reading past the precision raises PrecisionError; binary operations
    truncate to the smaller precision.
    """

    __slots__ = ("coeffs", "domain")

    def __init__(self, coeffs: Sequence, domain: str | None = None):
        self.coeffs = list(coeffs)
        if not self.coeffs:
            raise DomainError("a series needs at least the constant coefficient")
        if domain is None:
            domain = "exact" if all(isinstance(c, _EXACT_TYPES) for c in self.coeffs) else "float"
        if domain not in ("exact", "float"):
            raise DomainError(f"unknown coefficient domain {domain!r}")
        self.domain = domain

    # -- basics ------------------------------------------------------------
    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        if n < 0:
            raise IndexError(n)
        if n > self.precision:
            raise PrecisionError(f"coefficient {n} beyond precision {self.precision}")
        return self.coeffs[n]

    def get(self, n: int, default=0):
        return self.coeffs[n] if 0 <= n <= self.precision else default

    def __eq__(self, other) -> bool:
        return isinstance(other, PowerSeries) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        head = ", ".join(repr(c) for c in self.coeffs[:6])
        return f"PowerSeries([{head}{', ...' if self.precision > 5 else ''}], prec={self.precision})"

    def nonzero_indices(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def truncate(self, prec: int) -> "PowerSeries":
        if prec > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {prec}")
        return PowerSeries(self.coeffs[: prec + 1], self.domain)

    def shift(self, s: int) -> "PowerSeries":
        """Multiply by q^s (s >= 0); precision grows to precision + s."""
        if s < 0:
            raise DomainError("negative shifts would leave the Taylor domain")
        zero = 0 if self.domain == "exact" else 0.0
        return PowerSeries([zero] * s + self.coeffs, self.domain)

    def to_float(self) -> "PowerSeries":
        return PowerSeries([float(c) for c in self.coeffs], "float")

    # -- ring operations ----------------------------------------------------
    def _merged_domain(self, other: "PowerSeries") -> str:
        return "exact" if self.domain == other.domain == "exact" else "float"

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.precision, other.precision)
        return PowerSeries(
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)],
            self._merged_domain(other),
        )

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.precision, other.precision)
        return PowerSeries(
            [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)],
            self._merged_domain(other),
        )

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self.coeffs], self.domain)

    def scale(self, k) -> "PowerSeries":
        return PowerSeries([k * c for c in self.coeffs], None)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.precision, other.precision)
        domain = self._merged_domain(other)
        a, b = self.coeffs, other.coeffs
        nza = [i for i in range(min(len(a) - 1, n) + 1) if a[i]]
        nzb = [i for i in range(min(len(b) - 1, n) + 1) if b[i]]
        if len(nzb) < len(nza):
            a, b, nza, nzb = b, a, nzb, nza
        # sparse-dense path: ints only, bounded for exact int64 accumulation
        if (
            domain == "exact"
            and len(nza) <= 4096
            and n >= 2048
            and all(isinstance(c, int) for c in a)
            and all(isinstance(c, int) for c in b)
        ):
            amax = max((abs(a[i]) for i in nza), default=0)
            bmax = max((abs(c) for c in b), default=0)
            if amax and bmax and amax * bmax * len(nza) < 2**62:
                bb = np.array(b[: n + 1], dtype=np.int64)
                out = np.zeros(n + 1, dtype=np.int64)
                for i in nza:
                    out[i:] += a[i] * bb[: n + 1 - i]
                return PowerSeries([int(v) for v in out], "exact")
        if len(nza) * len(nzb) <= 4 * (n + 1) * max(8, int(math.log2(n + 2))):
            zero = 0 if domain == "exact" else 0.0
            out = [zero] * (n + 1)
            for i in nza:
                ai = a[i]
                for j in nzb:
                    k = i + j
                    if k > n:
                        break
                    out[k] += ai * b[j]
            return PowerSeries(out, domain)
        zero = 0 if domain == "exact" else 0.0
        out = [zero] * (n + 1)
        for i in range(n + 1):
            ai = a[i] if i < len(a) else 0
            if not ai:
                continue
            for k in range(i, n + 1):
                bj = b[k - i]
                if bj:
                    out[k] += ai * bj
        return PowerSeries(out, domain)

    def pow(self, e: int) -> "PowerSeries":
        if e < 0:
            return self.inverse().pow(-e)
        one = 1 if self.domain == "exact" else 1.0
        result = PowerSeries([one] + [0 if self.domain == "exact" else 0.0] * self.precision,
                             self.domain)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "PowerSeries":
        """Reciprocal series; requires an invertible leading coefficient."""
        a = self.coeffs
        if not a[0]:
            raise DomainError("series with zero constant term is not invertible")
        n = self.precision
        lead = a[0]
        if self.domain == "exact" and isinstance(lead, int) and abs(lead) != 1:
            lead = Fraction(lead)
        inv0 = 1 / lead if not isinstance(lead, int) else lead  # +-1 case stays integral
        nza = [i for i in range(1, n + 1) if a[i]]
        out = [a[0] * 0] * (n + 1)
        out[0] = inv0 if isinstance(lead, int) else 1 / lead
        for k in range(1, n + 1):
            acc = out[0] * 0
            for i in nza:
                if i > k:
                    break
                acc += a[i] * out[k - i]
            out[k] = -acc * out[0] if isinstance(lead, int) else -acc / lead
        return PowerSeries(out, self.domain)

    # -- serialization -------------------------------------------------------
    def to_csv(self) -> str:
        lines = ["n,coefficient"]
        lines += [f"{i},{c}" for i, c in enumerate(self.coeffs)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "PowerSeries":
        rows = [ln for ln in text.strip().splitlines() if ln and not ln.startswith("n,")]
        pairs = [(int(ln.split(",")[0]), ln.split(",")[1]) for ln in rows]
        prec = max(i for i, _ in pairs)
        coeffs: list = [0] * (prec + 1)
        exact = True
        for i, val in pairs:
            if "/" in val:
                coeffs[i] = Fraction(val)
            elif "." in val or "e" in val or "E" in val:
                coeffs[i] = float(val)
                exact = False
            else:
                coeffs[i] = int(val)
        return cls(coeffs, "exact" if exact else "float")


def zero_series(prec: int, domain: str = "exact") -> PowerSeries:
    zero = 0 if domain == "exact" else 0.0
    return PowerSeries([zero] * (prec + 1), domain)


def one_series(prec: int, domain: str = "exact") -> PowerSeries:
    s = zero_series(prec, domain)
    s.coeffs[0] = 1 if domain == "exact" else 1.0
    return s


def euler_product_series(prec: int) -> PowerSeries:
    """prod_{n>=1} (1 - q^n) via the pentagonal number theorem."""
    coeffs = [0] * (prec + 1)
    coeffs[0] = 1
    k = 1
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 > prec and e2 > prec:
            break
        sign = -1 if k % 2 else 1
        if e1 <= prec:
            coeffs[e1] = sign
        if e2 <= prec:
            coeffs[e2] = sign
        k += 1
    return PowerSeries(coeffs, "exact")


@dataclass(frozen=True)
class EtaQuotientSpec:
    """Product prod eta(t z)^r given as (t, r) pairs; sum t*r must be 0 mod 24."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if any(t < 1 for t, _ in self.terms):
            raise DomainError("eta scales must be positive")
        if self.weight24 % 24:
            raise DomainError(f"sum t*r = {self.weight24} is not divisible by 24")

    @property
    def weight24(self) -> int:
        return sum(t * r for t, r in self.terms)

    @property
    def q_shift(self) -> int:
        return self.weight24 // 24


def eta_quotient(spec: EtaQuotientSpec | Iterable[tuple[int, int]], prec: int) -> PowerSeries:
    """Exact q-expansion of the eta quotient, including the q^(sum t r/24) shift."""
    if not isinstance(spec, EtaQuotientSpec):
        spec = EtaQuotientSpec(tuple(spec))
    shift = spec.q_shift
    if shift < 0:
        raise DomainError("eta quotients with a pole at q=0 are not supported")
    if shift > prec:
        return zero_series(prec)
    inner = prec - shift
    acc = one_series(inner)
    for t, r in spec.terms:
        base = euler_product_series(inner // t)
        dilated = v_operator(base, t) if t > 1 else base
        if dilated.precision > inner:
            dilated = dilated.truncate(inner)
        elif dilated.precision < inner:
            # indices strictly between multiples of t vanish
            dilated = PowerSeries(dilated.coeffs + [0] * (inner - dilated.precision), "exact")
        if r < 0:
            dilated = dilated.inverse()
            r = -r
        # factor-at-a-time keeps one operand pentagonal-sparse at large precision
        for _ in range(r):
            acc = acc * dilated
    return acc.shift(shift).truncate(prec)


def theta_series(chi: DirichletCharacter, prec: int) -> PowerSeries:
    """Unary theta: sum over all integers n of chi(n) n^nu q^(n^2), nu the parity."""
    nu = chi.nu
    exact = chi.is_integer_valued
    zero = 0 if exact else 0.0
    coeffs = [zero] * (prec + 1)
    if nu == 0:
        v0 = chi(0)
        coeffs[0] = int(v0) if exact else v0  # n = 0 term, modulus 1 only
    n = 1
    while n * n <= prec:
        v = chi(n)
        if v:
            term = 2 * v * n**nu
            coeffs[n * n] = int(term) if exact else term
        n += 1
    return PowerSeries(coeffs, "exact" if exact else "float")


def v_operator(f: PowerSeries, t: int) -> PowerSeries:
    """V(t): sends a_n q^n to a_n q^(t n); precision scales to t * precision."""
    if t < 1:
        raise DomainError("V(t) needs t >= 1")
    if t == 1:
        return f
    zero = 0 if f.domain == "exact" else 0.0
    out = [zero] * (t * f.precision + 1)
    for i, c in enumerate(f.coeffs):
        out[t * i] = c
    return PowerSeries(out, f.domain)


def hecke_t_p(f: PowerSeries, p: int, weight: int = 2) -> PowerSeries:
    """T_p for odd prime p in weight 2: a_n -> a_(np) + p a_(n/p)."""
    if weight != 2:
        raise DomainError("only the weight-2 trivial-character Hecke action is provided")
    if p == 2 or p < 2:
        raise DomainError("p must be an odd prime")
    out_prec = f.precision // p
    if out_prec < 1:
        raise PrecisionError(f"precision {f.precision} too small for T_{p}")
    coeffs = []
    for n in range(out_prec + 1):
        v = f.coeffs[n * p]
        if n % p == 0:
            v = v + p * f.coeffs[n // p]
        coeffs.append(v)
    return PowerSeries(coeffs, f.domain)


F1_SPEC = EtaQuotientSpec(((8, 8), (4, -2), (16, -2)))
F2_SPEC = EtaQuotientSpec(((4, 2), (8, 2)))


def basis_s2_64(prec: int) -> tuple[PowerSeries, PowerSeries, PowerSeries]:
    """The basis (f1, f2, f3) of the weight-2 level-64 cusp space, to q^prec."""
    if prec < 5:
        raise DomainError("need precision >= 5 to see all three basis leaders")
    f1 = eta_quotient(F1_SPEC, prec)
    f2 = eta_quotient(F2_SPEC, prec)
    f3 = v_operator(eta_quotient(F2_SPEC, (prec + 1) // 2), 2)
    if f3.precision > prec:
        f3 = f3.truncate(prec)
    return f1, f2, f3
