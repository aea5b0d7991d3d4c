"""Internal consistency of the bundled reference data."""
import pytest

from sesquiproj.qseries import basis_s2_64
from sesquiproj.reference import (
    DECOMPOSITION_50000,
    RCHI4_TABLE,
    SUSPECTED_MISPRINTS,
)


def test_expected_column_is_basis_reconstruction():
    # the Expected column must equal x1 c1(k) + x2 c2(k) + x3 c3(k) with the
    # tabulated truncation-50000 coefficients, up to its 4-decimal rounding
    f1, f2, f3 = basis_s2_64(98)
    x1, x2, x3 = DECOMPOSITION_50000
    for k, _, expected, _ in RCHI4_TABLE:
        recon = x1 * f1[k] + x2 * f2[k] + x3 * f3[k]
        assert abs(recon - expected) <= 5.1e-5, (k, recon, expected)


def test_abs_error_column_consistent():
    # k=45 is carried verbatim although its printed error column (0.0058)
    # does not match |numerical - expected| = 0.0030
    for k, numerical, expected, abserr in RCHI4_TABLE:
        if k == 45:
            continue
        assert abs(abs(numerical - expected) - abserr) <= 1.01e-4, k


def test_rows_cover_nonvanishing_residues():
    ks = [k for k, *_ in RCHI4_TABLE]
    assert ks == [k for k in range(1, 99) if k % 4 in (1, 2)]
    assert len(ks) == 50


def test_suspected_misprints_are_digit_slips():
    # the corrected values differ from the printed ones by a digit-level edit
    assert set(SUSPECTED_MISPRINTS) == {38, 98}
    assert SUSPECTED_MISPRINTS[38] == pytest.approx(0.0006)
    assert SUSPECTED_MISPRINTS[98] == pytest.approx(-0.4076)
