"""
ABOUTME: Constants module for contractad-lab - size budgets and output defaults.
ABOUTME: Single source of truth for limits; overrides go through core.config.
"""


class BudgetConstants:
    """Default size budgets, one per feature (vertex counts unless noted)."""

    PARTITION_VERTICES = 10
    CHROMATIC_VERTICES = 12
    ENUMERATE_VERTICES = 7
    HAMILTONIAN_VERTICES = 16
    PLANEQ_SWEEP_VERTICES = 9
    PLANEQ_DP_VERTICES = 12
    AVOIDER_LENGTH = 9
    KOSZUL_VERTICES = 6
    STAR_VERTICES = 7
    YOUNG_WEIGHT = 8
    MULTIPARTITE_VERTICES = 12
    CHROMATIC_CHECK_Q = 4
    CHROMATIC_CHECK_WEIGHT = 6
    SERIES_ORDER = 20
    HERTZSPRUNG_ORDER = 12

    @classmethod
    def defaults(cls) -> dict:
        """Budget name (lower case) -> default limit."""
        return {
            name.lower(): value
            for name, value in vars(cls).items()
            if name.isupper() and isinstance(value, int)
        }


class FormatConstants:
    """Constants for CLI output and sweeps."""

    DEFAULT_SEED = 2024
    DEFAULT_SAMPLE_SIZE = 1000
    DEFAULT_JOBS = 1
    SAMPLED_SWEEP_VERTICES = 7

    OUTPUT_FORMATS = ["json", "text"]
    SERIES_FORMATS = ["csv", "json", "text"]

    ENV_JOBS = "CONTRACTAD_LAB_JOBS"
    ENV_SEED = "CONTRACTAD_LAB_SEED"
    ENV_SAMPLE_SIZE = "CONTRACTAD_LAB_SAMPLE_SIZE"
    ENV_BUDGET_PREFIX = "CONTRACTAD_LAB_BUDGET_"
