"""
Tests for identity sweeps, Koszul sweeps and series-level checks.
"""

from fractions import Fraction

import pytest

from core.graph_core import complete, cycle, path
from core.verification import (
    IDENTITY_NAMES,
    check_identities,
    koszul_sweep,
    resolve_identity,
    series_checks,
    sweep_graphs,
    sweep_identities,
)

SERIES_CHECK_NAMES = [
    "young-hp",
    "young-hc",
    "young-p",
    "young-c",
    "functoriality-p",
    "functoriality-c",
    "omega-p",
    "omega-c",
    "omega-hp",
    "chromatic-q0",
    "chromatic-q1",
    "chromatic-q2",
    "chromatic-q3",
    "hertzsprung",
    "cyclic-hertzsprung",
    "schroder",
    "path-inverse-hp",
    "path-inverse-pe",
    "cycle-pe",
    "complement-paths",
    "complement-cycles",
    "cycle-star-pe",
    "cycle-star-ce",
    "separable-avoiders",
    "cycle-avoiders",
    "cycle-avoider-count",
]


@pytest.mark.usefixtures("fresh_functions")
class TestCheckIdentities:
    """Test cases for identities on a single graph."""

    def test_all_identities_on_paw(self, paw):
        """Test that every registered identity holds on the paw graph."""
        # When
        checks = check_identities(paw)

        # Then
        assert checks
        assert all(check.passed for check in checks)
        assert {check.identity for check in checks} == set(IDENTITY_NAMES)

    def test_selected_identity_only(self, k3):
        """Test that a name filter restricts the equations."""
        checks = check_identities(k3, ["perm"])

        assert [check.identity for check in checks] == ["perm"]
        assert checks[0].lhs == checks[0].rhs == 6

    def test_bounds_on_four_cycle(self, c4):
        """Test HP(C_4) = 8 < AO(C_4) = 14 < PE(C_4) = 24."""
        # When
        checks = check_identities(c4, ["bounds"])

        # Then
        values = {(check.equation, check.lhs, check.rhs) for check in checks}
        assert ("HP <= AO", Fraction(8), Fraction(14)) in values
        assert ("AO < PE", Fraction(14), Fraction(24)) in values
        assert all(check.passed for check in checks)
        assert len(checks) == 4

    def test_bounds_equality_on_complete_graph(self):
        """Test that HP = PE is only asserted on complete graphs."""
        equations = [check.equation for check in check_identities(complete(4), ["bounds"])]

        assert "HP = PE" in equations
        assert "HP < AO" not in equations

    def test_recurrence_needs_an_edge(self):
        """Test that the cycle recurrence skips the one-vertex graph."""
        checks = check_identities(path(1), ["recurrences"])

        assert len(checks) == 1

    def test_theorem5_is_an_alias(self, c4):
        """Test that theorem5 runs the recurrence equations under their registry name."""
        # When
        aliased = check_identities(c4, ["theorem5"])

        # Then
        direct = check_identities(c4, ["recurrences"])
        assert [check.equation for check in aliased] == [check.equation for check in direct]
        assert {check.identity for check in aliased} == {"recurrences"}
        assert resolve_identity("theorem5") == "recurrences"
        assert resolve_identity("perm") == "perm"

    def test_unknown_identity(self, p3):

        """Test that an unknown identity raises KeyError."""
        with pytest.raises(KeyError, match="Unknown identity"):
            check_identities(p3, ["jacobi"])

    def test_to_dict(self, p3):
        """Test the JSON shape of a check."""
        record = check_identities(p3, ["hp-inverse"])[0].to_dict()

        assert set(record) == {"identity", "equation", "n", "edges", "lhs", "rhs", "passed"}
        assert record["n"] == 3
        assert record["edges"] == [[0, 1], [1, 2]]
        assert record["lhs"] == record["rhs"] == "0"


@pytest.mark.usefixtures("fresh_functions")
class TestSweeps:
    """Test cases for exhaustive sweeps."""

    def test_sweep_graph_counts(self):
        """Test 1, 1, 4, 38 labeled connected graphs on 1..4 vertices."""
        assert len(sweep_graphs(4)) == 44
        assert len(sweep_graphs(4, min_n=4)) == 38

    def test_sampled_sweep_is_seeded(self):
        """Test the 7-vertex sample is reproducible."""
        first = sweep_graphs(1, sample_n7=True, seed=7, sample_size=5)
        second = sweep_graphs(1, sample_n7=True, seed=7, sample_size=5)

        assert first == second
        assert len(first) == 6
        assert first[-1].n == 7

    def test_all_identities_up_to_four(self):
        """Test every identity on every connected graph with n <= 4."""
        checks = sweep_identities(4)

        failures = [check.to_dict() for check in checks if not check.passed]
        assert failures == []
        assert len({check.graph for check in checks}) == 44

    def test_results_sorted_by_size(self):
        """Test that results come out ordered by vertex count."""
        sizes = [check.graph.n for check in sweep_identities(3, ["hp-inverse"])]

        assert sizes == sorted(sizes)

    @pytest.mark.integration
    def test_parallel_matches_serial(self):
        """Test that two workers give the same ordered results as one."""
        serial = [check.to_dict() for check in sweep_identities(3, jobs=1)]
        parallel = [check.to_dict() for check in sweep_identities(3, jobs=2)]

        assert parallel == serial

    def test_unknown_identity_in_sweep(self):
        """Test that the sweep validates names before enumerating."""
        with pytest.raises(KeyError):
            sweep_identities(3, ["jacobi"])

    @pytest.mark.parametrize("module", ["ham", "cycham"])
    def test_koszul_sweep(self, module):
        """Test both modules on every connected graph with n <= 4."""
        checks = koszul_sweep(4, module)

        assert len(checks) == 44
        assert all(check.passed for check in checks)

    def test_koszul_sweep_min_n(self):
        """Test the lower bound on the vertex count."""
        assert len(koszul_sweep(3, "ham", min_n=3)) == 4

    def test_koszul_sweep_unknown_module(self):
        """Test that an unknown module raises ValueError."""
        with pytest.raises(ValueError):
            koszul_sweep(3, "lie")

    @pytest.mark.slow
    def test_all_identities_up_to_six(self):
        """Test every identity on every connected graph with n <= 6."""
        checks = sweep_identities(6, jobs=2)

        assert all(check.passed for check in checks)

    @pytest.mark.slow
    @pytest.mark.parametrize("module", ["ham", "cycham"])
    def test_koszul_sweep_up_to_five(self, module):
        """Test Koszulity on every connected graph with n <= 5."""
        checks = koszul_sweep(5, module, jobs=2)

        assert all(check.passed for check in checks)


@pytest.mark.usefixtures("fresh_functions")
class TestSeriesChecks:
    """Test cases for series-level identities."""

    def test_all_series_checks_pass(self):
        """Test every series identity at small orders."""
        # When
        checks = series_checks(order=6, weight=4, avoider_n=5)

        # Then
        assert [check.name for check in checks] == SERIES_CHECK_NAMES
        assert [check.name for check in checks if not check.passed] == []

    def test_hertzsprung_detail_values(self):
        """Test that value checks carry the computed numbers."""
        checks = {check.name: check for check in series_checks(order=6, weight=2, avoider_n=3)}

        assert checks["hertzsprung"].detail["values"] == [1, 0, 0, 2, 14, 90]
        assert checks["cyclic-hertzsprung"].detail["values"] == [2, 6]

    def test_to_dict_merges_detail(self):
        """Test the JSON shape of a series check."""
        check = series_checks(order=4, weight=2, avoider_n=3)[-1]

        record = check.to_dict()

        assert record["name"] == "cycle-avoider-count"
        assert record["passed"] is True
        assert record["values"] == [2, 6]

    @pytest.mark.slow
    def test_default_orders(self):
        """Test the default truncation orders."""
        assert all(check.passed for check in series_checks())

    def test_cycle_family_convention(self):
        """Test that C_1 and C_2 stand for P_1 and P_2."""
        assert cycle(2) == path(2)
