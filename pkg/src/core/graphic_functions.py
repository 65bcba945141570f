"""
Graphic functions: exact rational functions on connected graphs.

The *-product convolves over graph partitions,
    (f * h)(g) = Σ_{I ⊢ g} f(g/I) Π_{G ∈ I} h(g|_G),
ω twists by (-1)^(n-1) and ε is the unit supported on the one-vertex graph.
Every function memoizes its values by labeled graph.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, Tuple

from .config import check_budget
from .graph_core import (
    Graph,
    clear_chromatic_cache,
    complement,
    contract,
    graph_partitions,
    induced,
    require_connected,
)
from .hamiltonian import ham_cycle_count, ham_path_count
from .planeq import cyceq_count, planeq_count

logger = logging.getLogger(__name__)

Evaluator = Callable[[Graph], Fraction]
PartitionProfile = Tuple[Tuple[Graph, Tuple[Graph, ...]], ...]


@lru_cache(maxsize=512)
def partition_profile(g: Graph) -> PartitionProfile:
    """
    Every graph partition of g as (contracted graph, induced blocks).

    Shared by all *-products evaluated on the same graph.
    """
    profile = tuple(
        (contract(g, partition), tuple(induced(g, block) for block in partition.blocks))
        for partition in graph_partitions(g)
    )
    logger.debug(f"{len(profile)} graph partitions for {g}")
    return profile


class GraphicFunction:
    """
    Named, memoized mapping from connected graphs to exact rationals.

    Args:
        name: Display name, e.g. "HP" or "omega(PE)"
        evaluator: Computes the value on one graph
    """

    def __init__(self, name: str, evaluator: Evaluator):
        self.name = name
        self._evaluator = evaluator
        self._memo: Dict[Graph, Fraction] = {}

    def __call__(self, g: Graph) -> Fraction:
        value = self._memo.get(g)
        if value is None:
            value = Fraction(self._evaluator(g))
            self._memo[g] = value
        return value

    @property
    def memo_size(self) -> int:
        return len(self._memo)

    def star(self, other: "GraphicFunction") -> "GraphicFunction":
        """The *-product self * other."""
        return star(self, other)

    def omega(self) -> "GraphicFunction":
        return omega(self)

    def __add__(self, other: "GraphicFunction") -> "GraphicFunction":
        return GraphicFunction(
            f"({self.name} + {other.name})", lambda g: self(g) + other(g)
        )

    def __sub__(self, other: "GraphicFunction") -> "GraphicFunction":
        return GraphicFunction(
            f"({self.name} - {other.name})", lambda g: self(g) - other(g)
        )

    def scaled(self, factor: Fraction) -> "GraphicFunction":
        factor = Fraction(factor)
        return GraphicFunction(f"{factor}*{self.name}", lambda g: factor * self(g))

    def __repr__(self) -> str:
        return f"GraphicFunction({self.name})"


def star(f: GraphicFunction, h: GraphicFunction) -> GraphicFunction:
    """
    *-product of two graphic functions.

    The result raises DisconnectedGraphError on disconnected input and
    BudgetExceededError above the star budget.
    """

    def evaluate(g: Graph) -> Fraction:
        require_connected(g, "star product")
        check_budget("star_vertices", g.n, "star product")
        total = Fraction(0)
        for contracted, blocks in partition_profile(g):
            term = f(contracted)
            if not term:
                continue
            for block in blocks:
                term *= h(block)
                if not term:
                    break
            total += term
        return total

    return GraphicFunction(f"({f.name} * {h.name})", evaluate)


def omega(f: GraphicFunction) -> GraphicFunction:
    """ω(f)(g) = (-1)^(n-1) f(g)."""
    return GraphicFunction(
        f"omega({f.name})", lambda g: f(g) if g.n % 2 == 1 else -f(g)
    )


def _epsilon(g: Graph) -> Fraction:
    return Fraction(1 if g.n == 1 else 0)


def _hc_bar(g: Graph) -> Fraction:
    # the one-vertex loop is not counted on the complement side
    if g.n == 1:
        return Fraction(0)
    return Fraction(ham_cycle_count(complement(g)))


_EVALUATORS: Dict[str, Evaluator] = {
    "HP": lambda g: Fraction(ham_path_count(g)),
    "HC": lambda g: Fraction(ham_cycle_count(g)),
    "PE": lambda g: Fraction(planeq_count(g)),
    "CE": lambda g: Fraction(cyceq_count(g)),
    "P": lambda g: Fraction(factorial(g.n)),
    "C": lambda g: Fraction(factorial(g.n - 1)),
    "HP_bar": lambda g: Fraction(ham_path_count(complement(g))),
    "HC_bar": _hc_bar,
    "epsilon": _epsilon,
}

_ALIASES = {name.lower().replace("_", "-"): name for name in _EVALUATORS}

_instances: Dict[str, GraphicFunction] = {}


def builtin_names() -> Tuple[str, ...]:
    return tuple(_EVALUATORS)


def builtin(name: str) -> GraphicFunction:
    """
    Shared instance of a built-in graphic function.

    Accepts the canonical names (HP, HC, PE, CE, P, C, HP_bar, HC_bar,
    epsilon) or their lower-case hyphenated aliases (hp-bar, ...).

    Raises:
        KeyError: If the name is unknown
    """
    canonical = name if name in _EVALUATORS else _ALIASES.get(name.lower().replace("_", "-"))
    if canonical is None:
        raise KeyError(f"Unknown graphic function {name}; known: {', '.join(_EVALUATORS)}")
    if canonical not in _instances:
        _instances[canonical] = GraphicFunction(canonical, _EVALUATORS[canonical])
    return _instances[canonical]


def clear_memos() -> None:
    """Drop cached values of the built-ins, partition profiles and chromatic polynomials."""
    _instances.clear()
    partition_profile.cache_clear()
    clear_chromatic_cache()
