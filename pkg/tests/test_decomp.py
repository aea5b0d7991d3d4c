import json
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sesquiproj.decomp import (
    arithmetic_patterns,
    solve_on_basis,
    verify_hecke,
)
from sesquiproj.errors import DomainError
from sesquiproj.qseries import PowerSeries, basis_s2_64, eta_quotient


@pytest.fixture(scope="module")
def basis():
    return basis_s2_64(120)


class TestSolveOnBasis:
    def test_identity_on_f1(self, basis):
        f1 = basis[0]
        target = {i: float(f1[i]) for i in range(1, 100)}
        res = solve_on_basis(target, basis, (1, 2, 5))
        assert res.coefficients == pytest.approx((1.0, 0.0, 0.0), abs=1e-14)
        assert res.residual_max <= 1e-12

    @given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
    def test_recovers_random_combination(self, x1, x2, x3):
        f1, f2, f3 = basis_s2_64(120)
        target = {
            i: x1 * f1[i] + x2 * f2[i] + x3 * f3[i] for i in range(1, 121)
        }
        res = solve_on_basis(target, (f1, f2, f3), (1, 2, 5))
        assert res.coefficients == pytest.approx((x1, x2, x3), abs=1e-10)
        assert res.residual_max <= 1e-9 * (1 + abs(x1) + abs(x2) + abs(x3))

    def test_closed_form_of_pivot_solution(self, basis):
        # at pivots (1,2,5): x1 = r(1)/2 + r(5)/4, x2 = r(1)/2 - r(5)/4, x3 = r(2)
        target = {1: 0.0289, 2: 0.058, 5: 0.0577}
        res = solve_on_basis(target, basis, (1, 2, 5))
        assert res.coefficients[0] == pytest.approx(0.0289 / 2 + 0.0577 / 4, rel=1e-12)
        assert res.coefficients[1] == pytest.approx(0.0289 / 2 - 0.0577 / 4, rel=1e-12)
        assert res.coefficients[2] == pytest.approx(0.058, rel=1e-12)

    def test_singular_matrix(self, basis):
        f1 = basis[0]
        with pytest.raises(DomainError):
            solve_on_basis({1: 1.0, 5: 2.0, 9: 0.0}, (f1, f1, basis[2]), (1, 5, 9))

    def test_condition_estimate_reported(self, basis):
        res = solve_on_basis({1: 1.0, 2: 0.0, 5: 0.0}, basis, (1, 2, 5))
        assert res.condition_estimate >= 1.0

    def test_json_shape(self, basis):
        res = solve_on_basis({1: 1.0, 2: 0.0, 5: 0.0, 9: -3.0}, basis, (1, 2, 5))
        doc = json.loads(res.to_json())
        assert set(doc) >= {"pivots", "coefficients", "residual_max", "residual_index"}


class TestVerifyHecke:
    def test_t5_f2(self):
        f2 = eta_quotient([(4, 2), (8, 2)], 100)
        assert verify_hecke(f2, 5, -2) == 0

    def test_t5_f3(self):
        from sesquiproj.qseries import v_operator

        f3 = v_operator(eta_quotient([(4, 2), (8, 2)], 50), 2)
        assert verify_hecke(f3, 5, -2) == 0

    def test_t3_f1(self):
        f1 = eta_quotient([(8, 8), (4, -2), (16, -2)], 60)
        assert verify_hecke(f1, 3, 0) == 0

    def test_detects_wrong_eigenvalue(self):
        f2 = eta_quotient([(4, 2), (8, 2)], 100)
        assert verify_hecke(f2, 5, 2) > 0


class TestPatterns:
    def _exact_rvalues(self, hmax=98):
        # exact linear combination: clean integrality relations by construction
        f1, f2, f3 = basis_s2_64(hmax)
        x1, x2, x3 = 0.0286, 0.0, 0.0579
        return {
            h: (x1 * f1[h] + x2 * f2[h] + x3 * f3[h], 1e-9)
            for h in range(1, hmax + 1)
            if h % 4 in (1, 2)
        }

    def test_clean_values_pass(self):
        report = arithmetic_patterns(self._exact_rvalues(), tol=1e-2)
        assert report.violations == []
        assert report.checks

    def test_r10_relation(self):
        rv = self._exact_rvalues()
        report = arithmetic_patterns(rv, tol=1e-2)
        c10 = next(c for c in report.checks if c.h == 10)
        assert "near -2" in c10.statement and c10.ok

    def test_r9_relation(self):
        rv = self._exact_rvalues()
        report = arithmetic_patterns(rv, tol=1e-2)
        c9 = next(c for c in report.checks if c.h == 9)
        assert "near -3" in c9.statement and c9.ok

    def test_bad_prime_vanishing(self):
        rv = self._exact_rvalues()
        report = arithmetic_patterns(rv, tol=1e-2)
        c21 = next(c for c in report.checks if c.h == 21)
        assert c21.kind == "vanishing" and c21.ok

    def test_violation_detected(self):
        rv = self._exact_rvalues()
        rv[10] = (rv[10][0] + 0.03, 1e-9)  # break the k=10 integrality
        report = arithmetic_patterns(rv, tol=1e-2)
        assert any(c.h == 10 for c in report.violations)

    def test_near_identity_ratio_reported(self):
        report = arithmetic_patterns(self._exact_rvalues(), tol=1e-2)
        assert report.near_identity_ratio == pytest.approx(1.0, abs=2e-2)

    def test_uncertainty_weighting_absorbs_noise(self):
        rv = self._exact_rvalues()
        v, _ = rv[98]
        rv[98] = (v + 0.02, 0.02)  # noisy but self-aware value
        report = arithmetic_patterns(rv, tol=1e-2)
        c98 = next(c for c in report.checks if c.h == 98)
        assert c98.ok
