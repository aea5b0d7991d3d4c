import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sesquiproj.arith import DirichletCharacter
from sesquiproj.errors import DomainError, PrecisionError
from sesquiproj.projection import (
    CuspCoefficients,
    ProjectionConfig,
    SesquiCoefficients,
    alpha_nm,
    constant_term,
    harmonic_term,
    holomorphic_term,
    project_general,
    r_chi,
    r_chi_many,
    reference_table_config,
    sesqui_term,
    z_coefficients,
    zagier_coefficients,
)
from sesquiproj.quadforms import hstar, hurwitz_fast
from sesquiproj.special import EULER_GAMMA

CFG = ProjectionConfig(truncation=2000, acceleration="pairing")


class TestAlphaNM:
    def test_one_one(self):
        # (pi/2 - log 2)/(4 pi) = 0.0698411
        want = (math.pi / 2 - math.log(2)) / (4 * math.pi)
        assert alpha_nm(1, 1) == pytest.approx(want, rel=1e-15)
        assert alpha_nm(1, 1) == pytest.approx(0.0698411, abs=5e-8)

    def test_scaling_instances(self):
        assert alpha_nm(4, 2) == pytest.approx(alpha_nm(1, 1), rel=1e-14)
        assert alpha_nm(9, 3) == pytest.approx(alpha_nm(1, 1), rel=1e-14)

    @given(
        st.floats(0.1, 50),
        st.floats(0.1, 50),
        st.floats(0.5, 8),
    )
    def test_scaling_invariance(self, n, m, lam):
        assert alpha_nm(lam * lam * n, lam * m) == pytest.approx(alpha_nm(n, m), rel=1e-11)

    def test_domain(self):
        with pytest.raises(DomainError):
            alpha_nm(0, 1)


class TestHarmonicTerm:
    def test_h3_vanishes_exactly(self, chi4):
        value, unc = harmonic_term(3, chi4, CFG)
        assert value == 0.0

    def test_per_term_identity(self):
        # h/(sqrt(n)(m+sqrt n) m) = (1/sqrt n - 1/m)/m for n = m^2 - h
        for h, m in ((14, 4), (14, 9), (5, 3), (98, 11)):
            n = m * m - h
            lhs = h / (math.sqrt(n) * (m + math.sqrt(n)) * m)
            rhs = 1 / math.sqrt(n) - 1 / m
            assert lhs == pytest.approx(rhs, rel=1e-13)

    def test_truncation_stability(self, chi4):
        a = harmonic_term(14, chi4, ProjectionConfig(truncation=10_000))[0]
        b = harmonic_term(14, chi4, ProjectionConfig(truncation=20_000))[0]
        assert abs(a - b) < 5e-3

    def test_pairing_vs_plain_within_uncertainty(self, chi4):
        for h in (1, 2, 5, 14):
            cfgp = ProjectionConfig(truncation=10_000, acceleration="pairing")
            cfgn = ProjectionConfig(truncation=10_000, acceleration="none")
            vp, up = harmonic_term(h, chi4, cfgp)
            vn, un = harmonic_term(h, chi4, cfgn)
            assert abs(vp - vn) <= 10 * max(up, un)

    def test_window_modes(self, chi4):
        absolute = harmonic_term(14, chi4, ProjectionConfig(truncation=100, window="absolute"))
        offset = harmonic_term(14, chi4, ProjectionConfig(truncation=100, window="offset"))
        # offset window covers m in (3, 103], absolute m in (3, 100]
        assert absolute != offset


class TestHolomorphicTerm:
    def test_h2_zero_regulator(self, chi4):
        assert holomorphic_term(2, chi4) == 0.0

    def test_h9(self, chi4):
        want = hstar(8) / math.sqrt(8)
        assert holomorphic_term(9, chi4) == pytest.approx(want, rel=1e-13)
        assert holomorphic_term(9, chi4) == pytest.approx(0.1984, abs=5e-5)

    def test_h1_empty(self, chi4):
        assert holomorphic_term(1, chi4) == 0.0


class TestSesquiTerm:
    def test_h3_empty(self, chi4):
        assert sesqui_term(3, chi4) == 0.0

    def test_h2(self, chi4):
        # (pi/2 - log 2)/(2 pi) = 0.1396822
        want = (math.pi / 2 - math.log(2)) / (2 * math.pi)
        assert sesqui_term(2, chi4) == pytest.approx(want, rel=1e-14)
        assert sesqui_term(2, chi4) == pytest.approx(0.1396822, abs=5e-8)

    def test_matches_alpha_route(self, chi4):
        # sesqui part equals sum 2 chi(m) m alpha_{j^2, m} over j^2 + m^2 = h
        for h in (2, 5, 8, 50, 98):
            direct = sesqui_term(h, chi4)
            via_alpha = 0.0
            m = 1
            while m * m < h:
                j2 = h - m * m
                j = math.isqrt(j2)
                if j * j == j2 and chi4(m):
                    via_alpha += 2 * chi4(m) * m * alpha_nm(j2, m)
                m += 1
            assert direct == pytest.approx(via_alpha, rel=1e-12, abs=1e-15)


class TestConstantTerm:
    def test_nonsquare_zero(self, chi4):
        assert constant_term(2, chi4, CFG) == 0.0
        assert constant_term(8, chi4, CFG) == 0.0

    def test_h1_variants_coincide(self, chi4):
        a = constant_term(1, chi4, ProjectionConfig(constant_log_variant="log-h"))
        b = constant_term(1, chi4, ProjectionConfig(constant_log_variant="log-sqrt-h"))
        want = (2 * EULER_GAMMA - math.log(16 * math.pi) + math.log(4 * math.pi)) / (
            4 * math.pi
        ) + 1 / 12
        assert a == b == pytest.approx(want, rel=1e-14)

    def test_h9_variant_gap(self, chi4):
        a = constant_term(9, chi4, ProjectionConfig(constant_log_variant="log-h"))
        b = constant_term(9, chi4, ProjectionConfig(constant_log_variant="log-sqrt-h"))
        gap = (-3) * math.log(3) / (4 * math.pi)
        assert a - b == pytest.approx(gap, rel=1e-12)
        assert a - b == pytest.approx(-0.2623, abs=5e-5)

    def test_even_square_killed_by_chi4(self, chi4):
        assert constant_term(4, chi4, CFG) == 0.0
        assert constant_term(16, chi4, CFG) == 0.0


class TestRChi:
    def test_rejects_even_character(self):
        c8 = DirichletCharacter.from_kronecker(8)
        with pytest.raises(DomainError):
            r_chi(1, c8, CFG)

    def test_zero_support(self, chi4):
        for h in (3, 4, 7, 8, 11, 12, 100, 199):
            b = r_chi(h, chi4, CFG)
            assert b.constant == 0.0
            assert b.harmonic == 0.0
            assert b.holomorphic == 0.0
            assert b.sesquiharmonic == 0.0
            assert b.total == 0.0

    def test_total_is_sum_of_parts(self, chi4):
        b = r_chi(10, chi4, CFG)
        assert b.total == b.constant + b.harmonic + b.holomorphic + b.sesquiharmonic

    def test_spot_values_loose(self, chi4):
        cfg = reference_table_config()
        assert r_chi(1, chi4, cfg).total == pytest.approx(0.0289, abs=2e-3)
        assert r_chi(98, chi4, cfg).total == pytest.approx(-0.4076, abs=2e-3)

    def test_many_matches_single_and_threads(self, chi4):
        hs = [1, 2, 5, 10]
        seq = [r_chi(h, chi4, CFG).total for h in hs]
        par = [b.total for b in r_chi_many(hs, chi4, CFG, threads=4)]
        assert seq == par


class TestStreams:
    def test_z_coefficients(self):
        F = z_coefficients(10, b_callback_limit=100)
        assert F.a == {1: 2.0, 4: 2.0, 9: 2.0}
        assert F.d[2] == pytest.approx(1 / 3)
        assert F.d[1] == pytest.approx(-1 / (4 * math.pi))
        assert F.b_value(-7) == pytest.approx(1 / math.sqrt(7), rel=1e-14)
        assert F.c[5] == pytest.approx(hstar(5) / math.sqrt(5), rel=1e-14)
        assert 2 not in F.c  # hstar(2) = 0
        with pytest.raises(PrecisionError):
            F.b_value(-101)

    def test_zagier_coefficients(self):
        F = zagier_coefficients(10)
        assert F.d[0] == pytest.approx(-1 / 12)
        assert F.c[3] == pytest.approx(1 / 3)
        assert 1 not in F.c
        assert F.c[4] == pytest.approx(0.5)
        assert not F.a


class TestProjectGeneral:
    def test_purely_holomorphic_input(self, chi4):
        # b = a = d = 0: plain convolution of c against the weights
        F = SesquiCoefficients(d=(0, 0, 0, 0), c={1: 1.0, 2: -3.0}, a={})
        g = CuspCoefficients.from_character(chi4, 50)
        cfg = ProjectionConfig(truncation=30)
        s = project_general(F, g, 10, cfg)
        for h in range(1, 11):
            want = 0.0
            m = 1
            while m * m < h:
                want += F.c.get(h - m * m, 0.0) * (chi4(m) * m)
                m += 1
            assert s[h] == pytest.approx(want, abs=1e-15)

    def test_zero_input(self, chi4):
        F = SesquiCoefficients(d=(0, 0, 0, 0), c={}, a={})
        g = CuspCoefficients.from_character(chi4, 50)
        s = project_general(F, g, 8, ProjectionConfig(truncation=30))
        assert all(c == 0.0 for c in s.coeffs)

    def test_specializes_to_r_chi(self, chi4):
        cfg = ProjectionConfig(truncation=2000, acceleration="pairing")
        hmax = 20
        F = z_coefficients(hmax, b_callback_limit=(cfg.truncation + 5) ** 2)
        g = CuspCoefficients.from_character(chi4, cfg.truncation + 5)
        s = project_general(F, g, hmax, cfg)
        rows = r_chi_many(range(1, hmax + 1), chi4, cfg)
        for b in rows:
            assert abs(s[b.h] - b.total) < 1e-12, b.h

    def test_coverage_guard(self, chi4):
        F = z_coefficients(5, b_callback_limit=10**6)
        g = CuspCoefficients.from_character(chi4, 10)
        with pytest.raises(PrecisionError):
            project_general(F, g, 5, ProjectionConfig(truncation=100))


def test_reference_config_is_plain_absolute():
    cfg = reference_table_config()
    assert cfg.acceleration == "none"
    assert cfg.window == "absolute"
    assert cfg.truncation == 10_000
    assert cfg.constant_log_variant == "log-h"
