import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sesquiproj.arith import DirichletCharacter, kronecker
from sesquiproj.errors import DomainError, PrecisionError
from sesquiproj.qseries import (
    EtaQuotientSpec,
    PowerSeries,
    basis_s2_64,
    eta_quotient,
    euler_product_series,
    hecke_t_p,
    one_series,
    theta_series,
    v_operator,
)
from sesquiproj.reference import ETA24_LEADING, F1_LEADING, F2_LEADING, F3_LEADING

int_series = st.builds(
    PowerSeries,
    st.lists(st.integers(-50, 50), min_size=1, max_size=40),
)


def naive_euler_product(prec: int) -> PowerSeries:
    acc = one_series(prec)
    for n in range(1, prec + 1):
        factor = [0] * (prec + 1)
        factor[0] = 1
        factor[n] = -1
        acc = acc * PowerSeries(factor)
    return acc


class TestPowerSeries:
    def test_precision_read_guard(self):
        s = PowerSeries([1, 2, 3])
        assert s[2] == 3
        with pytest.raises(PrecisionError):
            s[3]

    def test_product_precision_is_min(self):
        a = PowerSeries([1] * 10)
        b = PowerSeries([1] * 5)
        assert (a * b).precision == 4
        assert (a + b).precision == 4

    @given(int_series, int_series)
    def test_mul_commutative(self, a, b):
        assert a * b == b * a

    @given(int_series, int_series, int_series)
    def test_mul_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(int_series, int_series, int_series)
    def test_distributive(self, a, b, c):
        n = min(x.precision for x in (a, b, c))
        lhs = (a * (b + c)).truncate(n)
        rhs = (a * b).truncate(n) + (a * c).truncate(n)
        assert lhs == rhs

    @given(int_series)
    def test_inverse_of_unit_series(self, a):
        coeffs = list(a.coeffs)
        coeffs[0] = 1
        s = PowerSeries(coeffs)
        prod = s * s.inverse()
        assert prod.coeffs == [1] + [0] * s.precision

    def test_sparse_and_dense_paths_agree(self):
        import random

        rng = random.Random(7)
        n = 5000
        sparse = [0] * (n + 1)
        for _ in range(40):
            sparse[rng.randrange(n + 1)] = rng.randrange(-5, 6)
        dense = [rng.randrange(-9, 10) for _ in range(n + 1)]
        a, b = PowerSeries(sparse), PowerSeries(dense)
        fast = a * b
        slow_coeffs = [0] * (n + 1)
        for i, ai in enumerate(sparse):
            if ai:
                for j in range(0, n + 1 - i):
                    if dense[j]:
                        slow_coeffs[i + j] += ai * dense[j]
        assert fast.coeffs == slow_coeffs

    def test_csv_roundtrip(self):
        s = PowerSeries([1, -2, 0, Fraction(1, 3)])
        assert PowerSeries.from_csv(s.to_csv()) == s


class TestEulerProduct:
    def test_first_terms(self):
        assert euler_product_series(5).coeffs == [1, -1, -1, 0, 0, 1]

    def test_constant_term(self):
        assert euler_product_series(0).coeffs == [1]

    def test_matches_naive_product(self):
        assert euler_product_series(300) == naive_euler_product(300)


class TestEtaQuotient:
    def test_spec_validates_weight(self):
        with pytest.raises(DomainError):
            EtaQuotientSpec(((1, 1),))

    def test_f1_expansion(self):
        f1 = eta_quotient([(8, 8), (4, -2), (16, -2)], 17)
        assert {i: c for i, c in enumerate(f1.coeffs) if c} == F1_LEADING

    def test_f2_expansion(self):
        f2 = eta_quotient([(4, 2), (8, 2)], 25)
        assert {i: c for i, c in enumerate(f2.coeffs) if c} == F2_LEADING

    def test_eta24(self):
        e = eta_quotient([(1, 24)], 10)
        assert e.coeffs == ETA24_LEADING

    def test_eta24_against_naive_product(self):
        got = eta_quotient([(1, 24)], 300)
        expected = naive_euler_product(299).pow(24).shift(1).truncate(300)
        assert got == expected

    def test_rejects_pole(self):
        with pytest.raises(DomainError):
            eta_quotient([(1, -24)], 10)


class TestTheta:
    def test_chi4(self, chi4):
        s = theta_series(chi4, 25)
        assert {i: c for i, c in enumerate(s.coeffs) if c} == {1: 2, 9: -6, 25: 10}

    def test_trivial_character(self):
        s = theta_series(DirichletCharacter.trivial(), 4)
        assert s.coeffs == [1, 2, 0, 0, 2]

    def test_support_on_squares(self, chi4):
        s = theta_series(chi4, 400)
        for i, c in enumerate(s.coeffs):
            if c:
                assert math.isqrt(i) ** 2 == i

    def test_even_character_coefficients(self):
        c8 = DirichletCharacter.from_kronecker(8)
        s = theta_series(c8, 81)
        assert s[1] == 2 * kronecker(8, 1)
        assert s[9] == 2 * kronecker(8, 3)
        assert s[49] == 2 * kronecker(8, 7)
        assert s[0] == 0


class TestOperators:
    def test_v2_on_f2(self):
        f2 = eta_quotient([(4, 2), (8, 2)], 25)
        f3 = v_operator(f2, 2)
        assert f3.precision == 50
        assert {i: c for i, c in enumerate(f3.coeffs) if c} == F3_LEADING

    def test_v1_is_identity(self):
        s = PowerSeries([1, 2, 3])
        assert v_operator(s, 1) is s

    def test_v3_on_q(self):
        s = v_operator(PowerSeries([0, 1]), 3)
        assert s.coeffs == [0, 0, 0, 1]

    def test_hecke_needs_precision(self):
        with pytest.raises(PrecisionError):
            hecke_t_p(PowerSeries([0, 1]), 3)

    def test_hecke_t5_f2(self):
        f2 = eta_quotient([(4, 2), (8, 2)], 100)
        t5 = hecke_t_p(f2, 5)
        for n in range(21):
            assert t5[n] == -2 * f2[n]

    def test_hecke_t3_f1(self):
        f1 = eta_quotient([(8, 8), (4, -2), (16, -2)], 60)
        t3 = hecke_t_p(f1, 3)
        assert all(c == 0 for c in t3.coeffs)


class TestBasis:
    def test_supports(self):
        f1, f2, f3 = basis_s2_64(200)
        for i in range(201):
            if f1[i] or f2[i]:
                assert i % 4 == 1
            if f3[i]:
                assert i % 4 == 2

    def test_pivot_matrix_invertible(self):
        f1, f2, f3 = basis_s2_64(5)
        m = [[f[i] for f in (f1, f2, f3)] for i in (1, 2, 5)]
        det = (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
        assert det != 0

    def test_twist_relation(self):
        f1, f2, _ = basis_s2_64(1000)
        for n in range(1, 1001, 2):
            assert f1[n] == kronecker(8, n) * f2[n], n

    def test_f2_multiplicativity_to_1e6(self):
        f2 = eta_quotient([(4, 2), (8, 2)], 10**6)
        for m in range(1, 1001):
            am = f2[m]
            for n in range(m + 1, 1001):
                if math.gcd(m, n) == 1:
                    assert f2[m * n] == am * f2[n], (m, n)
