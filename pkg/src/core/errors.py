"""
ABOUTME: Exception hierarchy shared by all contractad-lab modules.
ABOUTME: The CLI maps ContractadLabError to exit code 2.
"""

from typing import Optional


class ContractadLabError(Exception):
    """Base exception for contractad-lab errors."""

    pass


class BudgetExceededError(ContractadLabError):
    """Raised when an input exceeds a configured size budget."""

    def __init__(self, budget: str, limit: int, value: int, what: Optional[str] = None):
        self.budget = budget
        self.limit = limit
        self.value = value
        subject = what or budget
        super().__init__(
            f"{subject} size {value} exceeds budget '{budget}' (limit {limit})"
        )


class GraphError(ContractadLabError):
    """Base exception for malformed graphs."""

    pass


class DisconnectedGraphError(GraphError):
    """Raised when an operation requires a connected graph."""

    pass


class InvalidPartitionError(GraphError):
    """Raised when blocks do not form a graph partition."""

    pass


class GraphSpecError(GraphError):
    """Raised when a graph spec or edge-list file cannot be parsed."""

    pass


class SequenceError(ContractadLabError):
    """Raised for tuples that are not permutations or not Hamiltonian."""

    pass


class SeriesError(ContractadLabError):
    """Raised for invalid power series operations."""

    pass


class ChainComplexError(ContractadLabError):
    """Raised when a chain complex is inconsistent (∂∘∂ ≠ 0, bad shapes)."""

    pass


class SymmetricFunctionError(ContractadLabError):
    """Raised for weight mismatches and basis misuse."""

    pass
