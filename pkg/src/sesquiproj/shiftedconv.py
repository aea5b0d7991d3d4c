"""Shifted-convolution experiments.

Exact partial sums S(X) = sum_{sqrt h < m <= X} H(m^2-h) m chi(m), growth
exponent fits on their running maxima, the truncated Dirichlet series D_h(s),
and the regrouping identity check for the symmetrized series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arith import DirichletCharacter
from .errors import DomainError
from .quadforms import hurwitz_fast


@dataclass(frozen=True)
class ShiftedSumSeries:
    """Exact running sums; rows are (m, S(m)) with strictly increasing m.

    The natural growth variable is the coefficient index X = m^2 (the m-th
    term reads the coefficient at m^2 - h), and the normalized columns divide
    by powers of X: S grows visibly faster than m^(5/4) but stays well inside
    X^(5/4) = m^(5/2).
    """

    h: int
    chi: DirichletCharacter
    rows: tuple[tuple[int, Fraction], ...]

    def floats(self) -> list[tuple[int, float]]:
        return [(m, float(s)) for m, s in self.rows]

    def csv_rows(self) -> list[str]:
        out = []
        for m, s in self.rows:
            fl = float(s)
            out.append(
                f"{m},{s.numerator},{s.denominator},{fl!r},"
                f"{fl / m**2.5!r},{fl / m**3.0!r}"
            )
        return out


CSV_HEADER = "m,S_exact_num,S_exact_den,S_float,normalized_54,normalized_32"


def _integer_chi(chi: DirichletCharacter, m: int) -> int:
    v = chi(m)
    if isinstance(v, complex):
        if v.imag:
            raise DomainError("exact accumulation needs an integer-valued character")
        v = v.real
    if isinstance(v, float):
        if not v.is_integer():
            raise DomainError("exact accumulation needs an integer-valued character")
        v = int(v)
    return v


def partial_sums(h: int, chi: DirichletCharacter, m_max: int) -> ShiftedSumSeries:
    """All partial sums up to m_max, accumulated exactly over twelfths."""
    if h < 1:
        raise DomainError("partial_sums requires h >= 1")
    if m_max <= math.isqrt(h):
        return ShiftedSumSeries(h, chi, ())
    rows = []
    acc12 = 0  # 12 * S, an integer
    for m in range(math.isqrt(h) + 1, m_max + 1):
        cv = _integer_chi(chi, m)
        if cv:
            Hv = hurwitz_fast(m * m - h)
            acc12 += Hv.numerator * (12 // Hv.denominator) * m * cv
        rows.append((m, Fraction(acc12, 12)))
    return ShiftedSumSeries(h, chi, tuple(rows))


def fit_exponent(
    series: ShiftedSumSeries,
    window: Optional[int] = None,
    variable: str = "m",
) -> tuple[float, float]:
    """Least-squares slope of log(running max |S|) against the log abscissa.

    window selects the trailing number of rows (default: trailing half).
    variable "m" fits against log m; "index" fits against log(m^2), the
    coefficient-index variable in which the growth bounds are stated (the two
    slopes differ by exactly a factor 2).  Returns (slope, standard error).
    """
    if variable not in ("m", "index"):
        raise DomainError(f"unknown fit variable {variable!r}")
    rows = series.floats()
    run = []
    cur = 0.0
    for m, s in rows:
        cur = max(cur, abs(s))
        if cur > 0:
            run.append((m, cur))
    if window is None:
        window = len(run) // 2
    tail = run[-window:] if window else run
    if len(tail) < 20:
        raise DomainError("need at least 20 usable points for the fit")
    scale = 1.0 if variable == "m" else 2.0
    xs = [scale * math.log(m) for m, _ in tail]
    ys = [math.log(v) for _, v in tail]
    n = len(xs)
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    sxx = sum((x - xbar) ** 2 for x in xs)
    if sxx == 0:
        raise DomainError("degenerate fit: no spread in log m")
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    resid = sum((y - ybar - slope * (x - xbar)) ** 2 for x, y in zip(xs, ys))
    stderr = math.sqrt(resid / (n - 2) / sxx) if n > 2 else 0.0
    return slope, stderr


def _alive_terms(h: int, chi: DirichletCharacter, m_max: int):
    """(m, H(m^2-h), chi(m)) for sqrt(h) < m <= m_max with chi(m) != 0."""
    for m in range(math.isqrt(h) + 1, m_max + 1):
        cv = chi(m)
        if isinstance(cv, complex):
            cv = cv.real
        if cv:
            yield m, float(hurwitz_fast(m * m - h)), cv


@dataclass(frozen=True)
class TruncatedDSeries:
    value: float
    tail_estimate: float
    terms: int


def d_series_truncated(h: int, chi: DirichletCharacter, s: float, M: int) -> TruncatedDSeries:
    """D_h(s) = sum_{m^2 > h} H(m^2-h) chi(m) m / m^(2s+1), truncated at m <= M.

    Absolutely convergent for s > 1; the tail estimate extrapolates the
    observed term envelope |H(m^2-h)/m^2s| ~ C m^(1-2s).
    """
    if s <= 1:
        raise DomainError("d_series_truncated requires s > 1")
    terms = []
    envelope = 0.0
    for m, Hv, cv in _alive_terms(h, chi, M):
        t = Hv * cv / m ** (2 * s)
        terms.append(t)
        envelope = max(envelope, abs(Hv) / m)
    value = math.fsum(terms)
    # sum_{m>M} C m / m^{2s} <= C M^{2-2s} / (2s-2), C from the observed envelope
    tail = envelope * M ** (2 - 2 * s) / (2 * s - 2)
    return TruncatedDSeries(value, tail, len(terms))


def symmetrized_sum(
    h: int,
    chi: DirichletCharacter,
    s: float,
    M: int,
    pairing: bool = False,
) -> float:
    """sum_{sqrt h < m <= M} H(m^2-h) m chi(m) (1/(m^2-h)^s - 1/m^(2s)).

    At s = 1/2 each term equals h H(m^2-h) chi(m)/(sqrt(n)(m+sqrt(n))) with
    n = m^2 - h, the harmonic layer of the projection.
    """
    terms = []
    for m, Hv, cv in _alive_terms(h, chi, M):
        n = m * m - h
        terms.append(Hv * m * cv * (n ** (-s) - float(m) ** (-2 * s)))
    if not terms:
        return 0.0
    if pairing:
        value = math.fsum(terms if len(terms) % 2 == 0 else terms[:-1])
        if len(terms) % 2:
            value += terms[-1] / 2.0
        return value
    return math.fsum(terms)


def symmetrized_check(h: int, chi: DirichletCharacter, s: float, M: int) -> float:
    """Residual between the two groupings of the same truncated terms.

    Grouping one accumulates per-m differences; grouping two accumulates the
    two Dirichlet-type sums separately and subtracts.
    """
    if s <= 1.5:
        raise DomainError("symmetrized_check requires s > 3/2")
    route_one = symmetrized_sum(h, chi, s, M)
    plus = []
    minus = []
    for m, Hv, cv in _alive_terms(h, chi, M):
        n = m * m - h
        plus.append(Hv * m * cv * n ** (-s))
        minus.append(Hv * m * cv * float(m) ** (-2 * s))
    route_two = math.fsum(plus) - math.fsum(minus)
    return abs(route_one - route_two)
