"""Decomposition of projected series onto the level-64 basis, Hecke checks,
and the arithmetic-pattern report for the projected coefficients."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .errors import DomainError, PrecisionError
from .qseries import PowerSeries, hecke_t_p


@dataclass(frozen=True)
class BasisSolve:
    """Solution of target = sum x_i basis_i read off at the pivot indices."""

    pivots: tuple[int, ...]
    coefficients: tuple[float, ...]
    residual_max: float
    residual_index: int
    condition_estimate: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "pivots": list(self.pivots),
                "coefficients": list(self.coefficients),
                "residual_max": self.residual_max,
                "residual_index": self.residual_index,
                "condition_estimate": self.condition_estimate,
            }
        )


def _solve_dense(A: list[list[float]], rhs: list[float]) -> list[float]:
    """Gaussian elimination with partial pivoting on a small dense system."""
    n = len(A)
    M = [row[:] + [rhs[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(M[r][col]))
        if abs(M[piv][col]) < 1e-300:
            raise DomainError("pivot matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col]:
                factor = M[r][col] / M[col][col]
                for k in range(col, n + 1):
                    M[r][k] -= factor * M[col][k]
    return [M[i][n] / M[i][i] for i in range(n)]


def _condition_1norm(A: list[list[float]]) -> float:
    n = len(A)
    norm = max(sum(abs(A[r][c]) for r in range(n)) for c in range(n))
    try:
        cols = [
            _solve_dense(A, [1.0 if r == c else 0.0 for r in range(n)]) for c in range(n)
        ]
    except DomainError:
        return math.inf
    inv_norm = max(sum(abs(cols[c][r]) for c in range(n)) for r in range(n))
    return norm * inv_norm


def solve_on_basis(
    target: Mapping[int, float],
    basis: Sequence[PowerSeries],
    pivots: Sequence[int] = (1, 2, 5),
) -> BasisSolve:
    """Solve for the basis combination matching target at the pivot indices.

    The residual scan runs over every other index of the target that all
    basis series cover.
    """
    pivots = tuple(pivots)
    if len(pivots) != len(basis):
        raise DomainError("need as many pivots as basis series")
    for p in pivots:
        if p not in target:
            raise DomainError(f"target has no value at pivot {p}")
    min_prec = min(f.precision for f in basis)
    if max(pivots) > min_prec:
        raise PrecisionError("basis series do not reach the pivot indices")
    A = [[float(f[p]) for f in basis] for p in pivots]
    rhs = [float(target[p]) for p in pivots]
    coeffs = _solve_dense(A, rhs)
    cond = _condition_1norm(A)
    residual_max = 0.0
    residual_index = -1
    for idx, val in target.items():
        if idx in pivots or idx > min_prec or idx < 0:
            continue
        fit = sum(c * float(f[idx]) for c, f in zip(coeffs, basis))
        r = abs(val - fit)
        if r > residual_max:
            residual_max = r
            residual_index = idx
    return BasisSolve(pivots, tuple(coeffs), residual_max, residual_index, cond)


def verify_hecke(f: PowerSeries, p: int, expected_eigenvalue) -> int:
    """max |(T_p f - lambda f)_n| over the verifiable range (exact arithmetic)."""
    tf = hecke_t_p(f, p)
    dev = 0
    for n in range(tf.precision + 1):
        dev = max(dev, abs(tf[n] - expected_eigenvalue * f[n]))
    return dev


@dataclass(frozen=True)
class PatternCheck:
    kind: str
    h: int
    statement: str
    distance: float
    threshold: float

    @property
    def ok(self) -> bool:
        return self.distance <= self.threshold


@dataclass(frozen=True)
class PatternReport:
    checks: tuple[PatternCheck, ...]
    near_identity_ratio: Optional[float]  # r(1) / (r(5)/2), observed not asserted

    @property
    def violations(self) -> list[PatternCheck]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> str:
        return json.dumps(
            {
                "checks": [
                    {
                        "kind": c.kind,
                        "h": c.h,
                        "statement": c.statement,
                        "distance": c.distance,
                        "threshold": c.threshold,
                        "ok": c.ok,
                    }
                    for c in self.checks
                ],
                "near_identity_ratio": self.near_identity_ratio,
                "pattern_violations": [c.statement for c in self.violations],
            }
        )


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _has_exact_bad_prime(k: int) -> bool:
    # odd k with p || k for some prime p = 3 mod 4
    m = k
    p = 3
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e == 1 and p % 4 == 3:
                return True
        p += 2
    return m > 1 and m % 4 == 3


def arithmetic_patterns(
    rvalues: Mapping[int, tuple[float, float]],
    tol: float = 1e-2,
) -> PatternReport:
    """Integrality and vanishing patterns of the projected coefficients.

    rvalues maps h to (value, uncertainty).  Thresholds are tol plus the
    propagated uncertainty of the ratio, per the uncertainty-weighting design.
    Checks: r(k)/r(2) integral for k = 2 mod 4; r(k)/r(1) for k = 1 mod 8;
    r(k)/(r(5)/2) for k = 5 mod 8; r(k) = 0 for odd k exactly divisible by a
    prime 3 mod 4.
    """
    def value(h):
        return rvalues[h][0]

    def unc(h):
        return rvalues[h][1]

    checks = []
    for k in sorted(rvalues):
        v, u = rvalues[k]
        if k % 2 == 1 and _has_exact_bad_prime(k):
            checks.append(
                PatternCheck("vanishing", k, f"r({k}) = 0", abs(v), tol + u)
            )
            continue
        if k % 4 == 2 and k != 2 and 2 in rvalues:
            base, base_u = value(2), unc(2)
        elif k % 8 == 1 and k != 1 and 1 in rvalues:
            base, base_u = value(1), unc(1)
        elif k % 8 == 5 and k != 5 and 5 in rvalues:
            base, base_u = value(5) / 2, unc(5) / 2
        else:
            continue
        if base == 0:
            continue
        ratio = v / base
        nearest = round(ratio)
        spread = (u + abs(nearest) * base_u) / abs(base)
        label = {2: "r(2)", 1: "r(1)", 5: "r(5)/2"}[2 if k % 4 == 2 else k % 8]
        checks.append(
            PatternCheck(
                "integrality",
                k,
                f"r({k})/{label} near {nearest}",
                abs(ratio - nearest),
                tol + spread,
            )
        )
    near = None
    if 1 in rvalues and 5 in rvalues and value(5) != 0:
        near = value(1) / (value(5) / 2)
    return PatternReport(tuple(checks), near)
