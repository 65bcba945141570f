"""
ABOUTME: Configuration module for contractad-lab - environment parsing, validation and budgets.
ABOUTME: Budgets default to BudgetConstants and can be overridden by env vars or CLI flags.
"""

import logging
import os
from typing import Dict, List, Mapping, Optional, Tuple

from .constants import BudgetConstants, FormatConstants
from .errors import BudgetExceededError

logger = logging.getLogger(__name__)

_active_budgets: Dict[str, int] = BudgetConstants.defaults()


def budget(name: str) -> int:
    """Return the active limit for a budget name."""
    try:
        return _active_budgets[name]
    except KeyError:
        raise KeyError(f"Unknown budget: {name}") from None


def check_budget(name: str, value: int, what: Optional[str] = None) -> None:
    """
    Raise BudgetExceededError when value exceeds the active limit.

    Args:
        name: Budget name, e.g. "hamiltonian_vertices"
        value: Requested size
        what: Optional human-readable subject for the message

    Raises:
        BudgetExceededError: If value > limit
    """
    limit = budget(name)
    if value > limit:
        raise BudgetExceededError(name, limit, value, what)


def override_budgets(overrides: Mapping[str, int]) -> None:
    """Install budget overrides for this process."""
    for name, value in overrides.items():
        if name not in _active_budgets:
            raise KeyError(f"Unknown budget: {name}")
        logger.debug(f"Budget override {name}={value}")
        _active_budgets[name] = int(value)


def reset_budgets() -> None:
    """Restore the default budgets."""
    _active_budgets.clear()
    _active_budgets.update(BudgetConstants.defaults())


def active_budgets() -> Dict[str, int]:
    """Copy of the active budget table."""
    return dict(_active_budgets)


def parse_budget_assignment(text: str) -> Tuple[str, int]:
    """
    Parse a NAME=VALUE budget flag.

    Raises:
        ValueError: If the text is malformed or the budget is unknown
    """
    if "=" not in text:
        raise ValueError(f"Budget must be NAME=VALUE, got: {text}")
    name, value_str = text.split("=", 1)
    name = name.strip().lower().replace("-", "_")
    if name not in BudgetConstants.defaults():
        known = ", ".join(sorted(BudgetConstants.defaults()))
        raise ValueError(f"Unknown budget '{name}' (known: {known})")
    value = int(value_str)
    if value < 0:
        raise ValueError(f"Budget {name} must be non-negative")
    return name, value


class LabConfig:
    """Configuration for sweeps and budgets read from the environment."""

    def __init__(self):
        """Initialize configuration from environment variables."""
        self.jobs = self._get_env_int(FormatConstants.ENV_JOBS, FormatConstants.DEFAULT_JOBS)
        self.seed = self._get_env_int(FormatConstants.ENV_SEED, FormatConstants.DEFAULT_SEED)
        self.sample_size = self._get_env_int(
            FormatConstants.ENV_SAMPLE_SIZE, FormatConstants.DEFAULT_SAMPLE_SIZE
        )
        self.budgets = self._parse_budgets()

    def _parse_budgets(self) -> Dict[str, int]:
        """Read CONTRACTAD_LAB_BUDGET_<NAME> overrides on top of the defaults."""
        budgets = BudgetConstants.defaults()
        for name, default in budgets.items():
            env_var = FormatConstants.ENV_BUDGET_PREFIX + name.upper()
            budgets[name] = self._get_env_int(env_var, default)
        return budgets

    def _get_env_int(self, env_var: str, default: int) -> int:
        """Get integer from environment variable with fallback to default."""
        try:
            value_str = os.getenv(env_var)
            if value_str is None:
                return default
            return int(float(value_str))
        except (ValueError, TypeError):
            logger.warning(f"Ignoring non-numeric {env_var}, using {default}")
            return default

    def apply(self, extra: Optional[Mapping[str, int]] = None) -> Dict[str, int]:
        """
        Install this configuration's budgets plus extra overrides.

        Returns:
            Dict[str, int]: The budget table now active
        """
        merged = dict(self.budgets)
        if extra:
            merged.update(extra)
        override_budgets(merged)
        return merged

    def validate(self) -> Tuple[bool, List[str]]:
        """
        Validate configuration parameters.

        Returns:
            Tuple[bool, List[str]]: (is_valid, list_of_errors)
        """
        errors = []

        if self.jobs < 1:
            errors.append(f"jobs must be at least 1 ({FormatConstants.ENV_JOBS})")

        if self.sample_size < 0:
            errors.append(
                f"sample size must be non-negative ({FormatConstants.ENV_SAMPLE_SIZE})"
            )

        for name, value in self.budgets.items():
            if value < 0:
                errors.append(f"budget {name} must be non-negative")

        return len(errors) == 0, errors
