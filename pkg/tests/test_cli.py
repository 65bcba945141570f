"""
Tests for the contractad-lab command line interface.
"""

import json
import os
from unittest.mock import patch

import pytest

from cli.lab import compute_series, main, parse_args
from core.config import budget


class TestParseArgs:
    """Test cases for argument parsing."""

    def test_count_arguments(self):
        """Test the count subcommand with defaults."""
        # When
        args = parse_args(["count", "--graph", "C5"])

        # Then
        assert args.command == "count"
        assert args.graph == "C5"
        assert args.what == "hp"
        assert args.format == "json"
        assert args.jobs is None
        assert args.budget == []

    def test_global_options(self):
        """Test options placed before the subcommand."""
        args = parse_args(
            ["--jobs", "3", "--budget", "koszul_vertices=7", "--pretty", "verify-identities"]
        )

        assert args.jobs == 3
        assert args.budget == ["koszul_vertices=7"]
        assert args.pretty is True
        assert args.max_n == 4

    def test_koszul_target_required(self):
        """Test that koszul-check needs --graph or --max-n."""
        with pytest.raises(SystemExit):
            parse_args(["koszul-check"])


class TestCounting:
    """Test cases for count, planeq, avoiders and multipartite."""

    def test_count_hamiltonian_paths(self, capsys):
        """Test HP(K_{2,2}) = 8."""
        # When
        exit_code = main(["count", "--graph", "K2,2", "--what", "hp"])

        # Then
        assert exit_code == 0
        assert json.loads(capsys.readouterr().out)["value"] == 8

    def test_count_json(self, capsys):
        """Test the JSON record of a count."""
        exit_code = main(["count", "--graph", "K3", "--what", "hc", "--format", "json"])

        record = json.loads(capsys.readouterr().out)
        assert exit_code == 0
        assert record["value"] == 2
        assert record["n"] == 3
        assert record["edges"] == [[0, 1], [0, 2], [1, 2]]

    def test_count_text(self, capsys):
        """Test that --format text prints the bare value."""
        assert main(["count", "--graph", "K2,2", "--format", "text"]) == 0
        assert capsys.readouterr().out.strip() == "8"

    def test_count_from_edge_list(self, capsys, edge_list_file):
        """Test a graph read from a file."""
        exit_code = main(["count", "--graph", str(edge_list_file), "--what", "acyclic"])

        assert exit_code == 0
        assert json.loads(capsys.readouterr().out)["value"] == 14

    def test_planeq_count(self, capsys):
        """Test PE(C_5) = 110."""
        assert main(["planeq", "--graph", "C5", "--count"]) == 0
        assert json.loads(capsys.readouterr().out)["count"] == 110

    def test_planeq_methods_agree(self, capsys):
        """Test the sweep and the DP give the same count on P_4."""
        main(["planeq", "--graph", "P4", "--method", "sweep"])
        sweep = json.loads(capsys.readouterr().out)["count"]
        main(["planeq", "--graph", "P4", "--method", "dp"])

        assert json.loads(capsys.readouterr().out)["count"] == sweep == 22

    def test_planeq_list(self, capsys):
        """Test listing the tuples of P_2."""
        assert main(["planeq", "--graph", "P2", "--list"]) == 0
        assert json.loads(capsys.readouterr().out)["tuples"] == [[0, 1], [1, 0]]

    def test_planeq_list_text(self, capsys):
        """Test the text listing of P_2 tuples."""
        assert main(["planeq", "--graph", "P2", "--list", "--format", "text"]) == 0
        assert sorted(capsys.readouterr().out.split()) == ["0,1", "1,0"]

    def test_cyceq_count(self, capsys):
        """Test CE(K_4) = 3!."""
        assert main(["planeq", "--graph", "K4", "--cyclic"]) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["cyclic"] is True
        assert record["count"] == 6

    def test_avoiders(self, capsys):
        """Test 90 separable permutations of length 5."""
        assert main(["avoiders", "--n", "5"]) == 0
        assert json.loads(capsys.readouterr().out)["count"] == 90

    def test_avoiders_list(self, capsys):
        """Test listing avoiders of 21."""
        assert main(["avoiders", "--n", "3", "--patterns", "21", "--list", "--format", "text"]) == 0
        assert capsys.readouterr().out.strip() == "123"

    def test_multipartite_with_check(self, capsys):
        """Test HP(K_{2,1}) by formula and by enumeration."""
        exit_code = main(
            ["multipartite", "--k", "0", "--lambda", "2,1", "--check", "--format", "text"]
        )

        assert exit_code == 0
        assert capsys.readouterr().out.strip() == "2 (enumerated 2)"

    def test_multipartite_hc_json(self, capsys):
        """Test HC of K_{1,1,2,2} in the default JSON format."""
        exit_code = main(["multipartite", "--k", "2", "--lambda", "2,2", "--what", "hc", "--check"])

        record = json.loads(capsys.readouterr().out)
        assert exit_code == 0
        assert record["value"] == record["enumerated"]
        assert record["passed"] is True

    def test_bad_lambda(self, capsys):

        """Test that a malformed partition exits with 2."""
        assert main(["multipartite", "--lambda", "2,x"]) == 2
        assert "Error:" in capsys.readouterr().err


class TestSeriesCommands:
    """Test cases for series, young-series and verify-series."""

    def test_schroder_csv(self, capsys):
        """Test the little Schröder numbers."""
        assert main(["series", "--name", "schroder", "--order", "6"]) == 0
        assert capsys.readouterr().out.strip() == "1,2,6,22,90,394"

    def test_cyclic_hertzsprung_counts(self, capsys):
        """Test CH_n with --counts."""
        assert main(["series", "--name", "cyclic-hertzsprung", "--order", "8", "--counts"]) == 0
        assert capsys.readouterr().out.strip() == "1,0,0,0,2,6,46,354"

    def test_cycle_series_fractions(self, capsys):
        """Test F_C(HP) keeps exact fractions."""
        assert main(["series", "--name", "fc-hp", "--order", "3"]) == 0
        assert capsys.readouterr().out.strip() == "1,1,2"

    def test_cycle_planeq_counts(self, capsys):
        """Test n times the F_C(PE) coefficients."""
        assert main(["series", "--name", "fc-pe", "--order", "4", "--counts"]) == 0
        assert capsys.readouterr().out.strip() == "1,2,6,24"

    def test_series_json(self, capsys):
        """Test the JSON rendering of a series."""
        main(["series", "--name", "hertzsprung", "--order", "5", "--format", "json"])

        record = json.loads(capsys.readouterr().out)
        assert record["coefficients"] == ["1", "0", "0", "2", "14"]

    def test_series_text(self, capsys):
        """Test --pretty output."""
        main(["--pretty", "series", "--name", "fp-hp", "--order", "2"])

        assert capsys.readouterr().out.splitlines() == ["t^1: 1", "t^2: 2"]

    def test_unknown_series(self, capsys):
        """Test that an unknown series name exits with 2."""
        assert main(["series", "--name", "catalan"]) == 2
        assert "Unknown series" in capsys.readouterr().err

    def test_compute_series_by_name(self):
        """Test the name dispatch of compute_series."""
        assert compute_series("fp-pe", 3).coefficients[1:] == (1, 2, 6)
        with pytest.raises(KeyError):
            compute_series("fx-hp", 3)

    def test_young_series_json(self, capsys):
        """Test the Young series rows."""
        exit_code = main(["young-series", "--f", "hp", "--max-weight", "2"])

        record = json.loads(capsys.readouterr().out)
        assert exit_code == 0
        assert record["f"] == "HP"
        assert {"n": 1, "lambda": [], "numerator": 1, "denominator": 1} in record["rows"]

    def test_verify_series(self, capsys):
        """Test series-level checks at small orders."""
        exit_code = main(
            ["verify-series", "--order", "6", "--weight", "3", "--avoider-n", "5"]
        )

        record = json.loads(capsys.readouterr().out)
        assert exit_code == 0
        assert record["passed"] is True
        assert record["counterexamples"] == []


class TestVerificationCommands:
    """Test cases for verify-identities and koszul-check."""

    def test_verify_identities(self, capsys):
        """Test the identity sweep up to three vertices."""
        # When
        exit_code = main(["verify-identities", "--max-n", "3"])

        # Then
        record = json.loads(capsys.readouterr().out)
        assert exit_code == 0
        assert record["passed"] is True
        assert record["command"] == ["verify-identities", "--max-n=3"]
        assert record["items"][-1]["graphs"] == 6

    def test_verify_identities_show_all(self, capsys):
        """Test that --show-all lists passing equations."""
        main(["verify-identities", "--max-n", "2", "--identity", "perm", "--show-all"])

        record = json.loads(capsys.readouterr().out)
        assert [item["identity"] for item in record["items"][:-1]] == ["perm", "perm"]

    def test_verify_identities_text(self, capsys):
        """Test the text report."""
        assert main(["verify-identities", "--max-n", "2", "--format", "text"]) == 0
        assert capsys.readouterr().out.strip().endswith("PASS")

    def test_verify_identities_theorem5_alias(self, capsys):
        """Test that theorem5 selects the path and cycle recurrences."""
        # When
        exit_code = main(
            ["verify-identities", "--max-n", "3", "--identity", "theorem5", "--show-all"]
        )

        # Then
        record = json.loads(capsys.readouterr().out)
        assert exit_code == 0
        assert record["passed"] is True
        assert record["command"] == ["verify-identities", "--max-n=3", "--identity=theorem5"]
        assert {item["identity"] for item in record["items"][:-1]} == {"recurrences"}


    def test_koszul_check_graph(self, capsys):
        """Test the Ham complex of P_3."""
        exit_code = main(["koszul-check", "--graph", "P3", "--module", "ham"])

        record = json.loads(capsys.readouterr().out)
        assert exit_code == 0
        assert record["items"][0]["betti"] == [0, 0, 0]

    def test_koszul_check_sweep(self, capsys):
        """Test the cyclic module on every connected graph with n <= 3."""
        assert main(["koszul-check", "--max-n", "3", "--module", "cycham"]) == 0
        assert len(json.loads(capsys.readouterr().out)["items"]) == 6

    def test_dump_matrices(self, capsys, tmp_path):
        """Test writing the differentials of P_2."""
        target = tmp_path / "p2.txt"

        exit_code = main(
            ["koszul-check", "--graph", "P2", "--dump-matrices", str(target)]
        )

        assert exit_code == 0
        lines = target.read_text().splitlines()
        assert lines
        assert all(line.startswith("1 ") for line in lines)


class TestErrors:
    """Test cases for exit codes on bad input."""

    def test_unknown_subcommand(self):
        """Test that argparse errors exit with 2."""
        assert main(["draw"]) == 2

    def test_bad_graph_spec(self, capsys):
        """Test that an unparseable graph exits with 2."""
        assert main(["count", "--graph", "Q7"]) == 2
        assert "Unrecognized graph spec" in capsys.readouterr().err

    def test_budget_flag(self, capsys):
        """Test that a lowered budget aborts the command."""
        exit_code = main(
            ["--budget", "hertzsprung_order=5", "series", "--name", "hertzsprung", "--order", "6"]
        )

        assert exit_code == 2
        assert "hertzsprung_order" in capsys.readouterr().err

    def test_unknown_budget_flag(self):
        """Test that an unknown budget name exits with 2."""
        assert main(["--budget", "frames=3", "avoiders", "--n", "3"]) == 2

    def test_invalid_jobs(self):
        """Test that --jobs 0 exits with 2."""
        assert main(["--jobs", "0", "verify-identities", "--max-n", "2"]) == 2

    def test_invalid_environment(self, capsys):
        """Test that an invalid environment exits with 2."""
        with patch.dict(os.environ, {"CONTRACTAD_LAB_JOBS": "0"}):
            assert main(["avoiders", "--n", "3"]) == 2

        assert "jobs must be at least 1" in capsys.readouterr().err

    def test_budgets_reset_after_run(self):
        """Test that CLI overrides do not leak into the process."""
        main(["--budget", "series_order=3", "series", "--name", "schroder", "--order", "2"])

        assert budget("series_order") == 20
