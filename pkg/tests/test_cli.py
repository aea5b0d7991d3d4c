import json
import os

import pytest

from sesquiproj.cli import parse_character, run
from sesquiproj.errors import DomainError


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestScalars:
    def test_hurwitz(self, capsys):
        code, out, _ = invoke(capsys, "hurwitz", "--n", "23")
        assert code == 0 and out.strip() == "3"

    def test_hurwitz_exact(self, capsys):
        code, out, _ = invoke(capsys, "hurwitz", "--n", "23", "--exact")
        assert code == 0 and out.strip() == "3/1"
        code, out, _ = invoke(capsys, "hurwitz", "--n", "12", "--exact")
        assert out.strip() == "4/3"

    def test_hurwitz_direct_backend(self, capsys):
        code, out, _ = invoke(capsys, "hurwitz", "--n", "23", "--backend", "direct")
        assert code == 0 and out.strip() == "3"

    def test_classno(self, capsys):
        code, out, _ = invoke(capsys, "classno", "--d", "-23")
        assert code == 0 and out.strip() == "3"

    def test_regulator(self, capsys):
        code, out, _ = invoke(capsys, "regulator", "--d", "5")
        assert code == 0 and abs(float(out) - 1.9248473) < 1e-6

    def test_hplus_hstar(self, capsys):
        assert invoke(capsys, "hplus", "--d", "12")[1].strip() == "2"
        code, out, _ = invoke(capsys, "hstar", "--d", "4")
        assert abs(float(out) - 0.2206356) < 1e-6


class TestExitCodes:
    def test_usage_error_is_1(self, capsys):
        assert invoke(capsys, "nonsense-subcommand")[0] == 1

    def test_missing_required_is_1(self, capsys):
        assert invoke(capsys, "hurwitz")[0] == 1

    def test_domain_error_is_2(self, capsys):
        code, _, err = invoke(capsys, "rchi", "--h", "1", "--char", "kronecker:8",
                              "--terms", "50")
        assert code == 2 and "odd" in err

    def test_negative_hurwitz_is_2(self, capsys):
        assert invoke(capsys, "hurwitz", "--n", "-3")[0] == 2


class TestCharacters:
    def test_kronecker_syntax(self):
        chi = parse_character("kronecker:-4")
        assert chi.modulus == 4 and chi.is_odd

    def test_table_syntax(self):
        chi = parse_character("table:4:0,1,0,-1")
        assert tuple(chi.values) == (0, 1, 0, -1)

    def test_bad_syntax(self):
        with pytest.raises(DomainError):
            parse_character("legendre:7")


class TestSeriesCommands:
    def test_theta_csv(self, capsys):
        code, out, _ = invoke(capsys, "theta", "--char", "kronecker:-4", "--prec", "9")
        lines = out.strip().splitlines()
        assert lines[0] == "n,coefficient"
        assert lines[2] == "1,2"
        assert lines[10] == "9,-6"

    def test_eta_csv(self, capsys):
        code, out, _ = invoke(capsys, "eta", "--spec", "4:2,8:2", "--prec", "9")
        vals = {int(l.split(",")[0]): int(l.split(",")[1])
                for l in out.strip().splitlines()[1:]}
        assert vals[1] == 1 and vals[5] == -2 and vals[9] == -3

    def test_json_format(self, capsys):
        code, out, _ = invoke(capsys, "theta", "--char", "kronecker:-4",
                              "--prec", "4", "--format", "json")
        doc = json.loads(out)
        assert doc[1] == {"n": "1", "coefficient": "2"}


class TestRchiCommand:
    def test_row_and_breakdown(self, capsys):
        code, out, _ = invoke(capsys, "rchi", "--h", "2", "--char", "kronecker:-4",
                              "--terms", "2000")
        header, row = out.strip().splitlines()
        assert header.startswith("h,constant,harmonic")
        fields = row.split(",")
        assert fields[0] == "2"
        total = float(fields[5])
        assert abs(total - 0.058) < 5e-3

    def test_manifest_and_determinism(self, capsys, tmp_path):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        invoke(capsys, "rchi", "--hmax", "6", "--terms", "500", "--out", str(out1))
        invoke(capsys, "rchi", "--hmax", "6", "--terms", "500", "--out", str(out2),
               "--threads", "4")
        assert out1.read_bytes() == out2.read_bytes()
        manifest = json.loads((tmp_path / "a.csv.manifest.json").read_text())
        assert manifest["subcommand"] == "rchi"
        assert manifest["parameters"]["terms"] == 500
        assert "wall_time_s" in manifest

    def test_plot_svg(self, capsys, tmp_path):
        out = tmp_path / "r.csv"
        invoke(capsys, "rchi", "--hmax", "6", "--terms", "200", "--out", str(out),
               "--plot", "svg")
        svg = (tmp_path / "r.csv.svg").read_text()
        assert svg.startswith("<svg") and "polyline" in svg


class TestShiftedAndDseries:
    def test_shifted_sum_csv(self, capsys):
        code, out, _ = invoke(capsys, "shifted-sum", "--h", "14", "--mmax", "30")
        lines = out.strip().splitlines()
        assert lines[0] == "m,S_exact_num,S_exact_den,S_float,normalized_54,normalized_32"
        first = lines[1].split(",")
        assert first[0] == "4" and first[1] == "0"

    def test_dseries(self, capsys):
        code, out, _ = invoke(capsys, "dseries", "--h", "14", "--s", "3.0",
                              "--terms", "500")
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert float(row[3]) >= 0  # tail estimate

    def test_project_matches_rchi(self, capsys):
        code, outp, _ = invoke(capsys, "project", "--hmax", "5", "--terms", "300")
        code, outr, _ = invoke(capsys, "rchi", "--hmax", "5", "--terms", "300")
        proj = {int(l.split(",")[0]): float(l.split(",")[1])
                for l in outp.strip().splitlines()[1:]}
        rchi = {int(l.split(",")[0]): float(l.split(",")[5])
                for l in outr.strip().splitlines()[1:]}
        for h in range(1, 6):
            assert abs(proj[h] - rchi[h]) < 1e-12


class TestDecomposeCommand:
    def test_small_decompose(self, capsys):
        code, out, _ = invoke(
            capsys, "decompose", "--terms", "2000", "--pivots", "1,2,5",
            "--indices", "1,2,5,9,10",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["pivots"] == [1, 2, 5]
        assert abs(doc["coefficients"][0] - 0.0286) < 5e-3
        assert abs(doc["coefficients"][2] - 0.0579) < 5e-3
        assert "pattern_violations" in doc
