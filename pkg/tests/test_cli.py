"""End-to-end tests of the command-line surface via cli.run (no subprocesses,
so exit codes and output are captured in-process)."""

import os

import pytest

from hurwitzcert.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTraceCoeffs:
    def test_builtin_pair_prints_both_degree_blocks(self, capsys):
        code, out, _ = invoke(capsys, "trace-coeffs", "--m", "4")
        assert code == 0
        assert "Tr[S_{4,2}] = 8*x1^2 - 12*x1*x2 + 42*x2^2 - 4*x1 + 20" in out
        assert "Tr[S_{3,2}] = 18*x2 + 9" in out

    def test_explicit_matrices_single_block(self, capsys, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        a.write_text("x, 0; 0, 1")
        b.write_text("0, 1; 1, 0")
        code, out, _ = invoke(capsys, "trace-coeffs", "--m", "2",
                              "--matrix-a", str(a), "--matrix-b", str(b),
                              "--ring", "x")
        assert code == 0
        assert "Tr[S_{2,1}]" in out
        assert "Tr[S_{1" not in out

    def test_matrix_flags_require_ring(self, capsys, tmp_path):
        a = tmp_path / "a.txt"
        a.write_text("1")
        code, _, err = invoke(capsys, "trace-coeffs", "--m", "2",
                              "--matrix-a", str(a))
        assert code == 2
        assert "usage error" in err


class TestHurwitz:
    def test_recurrence_and_bruteforce_agree(self, capsys):
        code, out1, _ = invoke(capsys, "hurwitz", "--m", "3", "--k", "2")
        code2, out2, _ = invoke(capsys, "hurwitz", "--m", "3", "--k", "2",
                                "--bruteforce")
        assert code == code2 == 0
        assert out1 == out2

    def test_s21_is_anticommutator(self, capsys, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        a.write_text("1, 0; 0, 2")
        b.write_text("0, 1; 1, 0")
        code, out, _ = invoke(capsys, "hurwitz", "--m", "2", "--k", "1",
                              "--matrix-a", str(a), "--matrix-b", str(b),
                              "--ring", "t")
        assert code == 0
        assert out.strip() == "0, 3; 3, 0"


class TestTraceIdentity:
    def test_all_small_cases_verified(self, capsys):
        code, out, _ = invoke(capsys, "trace-identity", "--max-m", "3",
                              "--n", "2")
        assert code == 0
        assert out.count("verified") == 6  # (1,0) (2,0) (2,1) (3,0..2)
        assert "FAILED" not in out

    def test_lemma1_alias(self, capsys):
        code, out, _ = invoke(capsys, "lemma1", "--m", "4", "--k", "2",
                              "--n", "2")
        assert code == 0
        assert out.strip() == "m=4 k=2: verified"

    def test_k_must_be_below_m(self, capsys):
        code, _, err = invoke(capsys, "trace-identity", "--m", "2",
                              "--k", "5")
        assert code == 2


class TestIdealCommands:
    @pytest.fixture
    def ideal_file(self, tmp_path):
        f = tmp_path / "ideal.txt"
        f.write_text("# ring: x y\nx^2 - 1\nx*y - 1\n")
        return str(f)

    def test_groebner(self, capsys, ideal_file):
        code, out, _ = invoke(capsys, "groebner", "--ideal", ideal_file)
        assert code == 0
        assert "x - y" in out and "y^2 - 1" in out

    def test_saturate_removes_component(self, capsys, ideal_file):
        code, out, _ = invoke(capsys, "saturate", "--ideal", ideal_file,
                              "--by", "x - 1")
        assert code == 0
        assert "x + 1" in out and "y + 1" in out

    def test_eliminate(self, capsys, ideal_file):
        code, out, _ = invoke(capsys, "eliminate", "--ideal", ideal_file,
                              "--keep", "y")
        assert code == 0
        assert "# ring: y" in out
        assert "y^2 - 1" in out

    def test_pair_budget_exit_code(self, capsys, tmp_path):
        f = tmp_path / "hard.txt"
        f.write_text("# ring: x y z\nx^2 + y^2 + z^2 - 1\n"
                     "x*y*z - 1\nx^3 - y^3\n")
        code, _, err = invoke(capsys, "groebner", "--ideal", str(f),
                              "--budget-pairs", "2")
        assert code == 3
        assert "budget exhausted" in err

    def test_budget_env_var(self, capsys, tmp_path, monkeypatch):
        f = tmp_path / "hard.txt"
        f.write_text("# ring: x y z\nx^2 + y^2 + z^2 - 1\n"
                     "x*y*z - 1\nx^3 - y^3\n")
        monkeypatch.setenv("HURWITZCERT_BUDGET_PAIRS", "2")
        code, _, _ = invoke(capsys, "groebner", "--ideal", str(f))
        assert code == 3

    def test_missing_file_is_usage_error(self, capsys):
        code, _, err = invoke(capsys, "groebner", "--ideal",
                              "/no/such/file.txt")
        assert code == 2


class TestSturm:
    def test_counts_root_in_unit_interval(self, capsys):
        code, out, _ = invoke(capsys, "sturm", "--poly", "2*x - 1",
                              "--interval", "0,1")
        assert code == 0
        assert "roots_in_open_interval: 1" in out

    def test_assert_none_fails_on_root(self, capsys):
        code, out, _ = invoke(capsys, "sturm", "--poly", "2*x - 1",
                              "--assert-none")
        assert code == 1

    def test_assert_none_passes_without_roots(self, capsys):
        code, out, _ = invoke(capsys, "sturm", "--poly", "x^2 + 1",
                              "--assert-none", "--verbose")
        assert code == 0
        assert "roots_in_open_interval: 0" in out
        assert "sturm chain" in out

    def test_general_interval(self, capsys):
        # "=" syntax because the lower bound starts with a dash
        code, out, _ = invoke(capsys, "sturm", "--poly",
                              "x^2 - 2", "--interval=-2,2")
        assert code == 0
        assert "roots_in_open_interval: 2" in out

    def test_malformed_poly_is_usage_error(self, capsys):
        code, _, err = invoke(capsys, "sturm", "--poly", "x^")
        assert code == 2

    def test_malformed_interval_is_usage_error(self, capsys):
        code, _, _ = invoke(capsys, "sturm", "--poly", "x", "--interval",
                            "a,b")
        assert code == 2


class TestBuildP:
    def test_prints_polynomial_and_metadata(self, capsys, tmp_path):
        out_file = tmp_path / "p.txt"
        code, out, _ = invoke(capsys, "build-p", "--out", str(out_file))
        assert code == 0
        assert "# terms: 32" in out
        assert "# p_hash: sha256:" in out
        assert "# joint degree in (x, y, z, u, b): 8" in out
        assert out_file.read_text().strip() == out.splitlines()[0]


class TestSlice:
    def test_all_ones_slice_verifies(self, capsys):
        code, out, _ = invoke(capsys, "slice", "--fix", "x,y,z,u,b")
        assert code == 0
        assert "status: verified" in out
        assert "rung 2" in out

    def test_bare_name_means_pinned_to_one(self, capsys):
        code, out, _ = invoke(capsys, "slice", "--fix",
                              "x=1,y=1,z=1,u=1,b=1")
        assert code == 0
        assert "slice x=1,y=1,z=1,u=1,b=1" in out

    def test_unknown_variable_is_usage_error(self, capsys):
        code, _, err = invoke(capsys, "slice", "--fix", "q=1")
        assert code == 2

    def test_r_cannot_be_fixed(self, capsys):
        code, _, _ = invoke(capsys, "slice", "--fix", "r=1")
        assert code == 2

    def test_budget_exceeded_exit_code(self, capsys):
        code, out, _ = invoke(capsys, "slice", "--fix", "x",
                              "--budget-pairs", "5")
        assert code == 3
        assert "status: budget-exceeded" in out


class TestCertify:
    def test_filtered_run_report_and_exit(self, capsys, tmp_path):
        out_file = tmp_path / "report.txt"
        code, out, _ = invoke(capsys, "certify", "--slices", "x,y,z,u,b",
                              "--deterministic", "--out", str(out_file))
        # the negative-term audit fails by design, so overall is incomplete
        assert code == 1
        assert "overall: incomplete" in out
        assert "[STEP] slice:x=1,y=1,z=1,u=1,b=1" in out
        text = out_file.read_text()
        assert text == out

    def test_reports_append_and_resume(self, capsys, tmp_path):
        out_file = tmp_path / "report.txt"
        invoke(capsys, "certify", "--slices", "x,y,z,u,b",
               "--deterministic", "--out", str(out_file))
        first = out_file.read_text()
        code, out, _ = invoke(capsys, "certify", "--slices", "x,y,z,u,b",
                              "--deterministic", "--resume", str(out_file),
                              "--out", str(out_file))
        assert code == 1
        combined = out_file.read_text()
        assert combined.startswith(first)
        assert combined.count("# trace-positivity certification report") == 2

    def test_deterministic_runs_are_byte_identical(self, capsys):
        _, out1, _ = invoke(capsys, "certify", "--slices", "x,y,z,u,b",
                            "--deterministic")
        _, out2, _ = invoke(capsys, "certify", "--slices", "x,y,z,u,b",
                            "--deterministic")
        assert out1 == out2

    def test_corrupt_resume_file_is_ignored(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("# trace-positivity certification report\n"
                       "overall: certified\nreport_hash: sha256:0000\n")
        code, out, err = invoke(capsys, "certify", "--slices", "x,y,z,u,b",
                                "--deterministic", "--resume", str(bad))
        assert code == 1
        assert "ignoring resume file" in err
        assert "overall: incomplete" in out


class TestNumeric:
    def test_scan_clean(self, capsys):
        code, out, _ = invoke(capsys, "scan", "--n", "2", "--m", "4",
                              "--trials", "50", "--seed", "3")
        assert code == 0
        assert "flagged: 0" in out

    def test_minimize_reproduces_known_minimum(self, capsys):
        code, out, _ = invoke(capsys, "minimize", "--m", "4", "--k", "2")
        assert code == 0
        value = float(out.splitlines()[1].split(":")[1])
        assert abs(value - 486 / 25) < 1e-6


class TestUsage:
    def test_no_command_is_usage_error(self, capsys):
        assert run([]) == 2

    def test_unknown_command_is_usage_error(self, capsys):
        assert run(["frobnicate"]) == 2

    def test_help_exits_zero(self, capsys):
        assert run(["--help"]) == 0
