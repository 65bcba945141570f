"""
ABOUTME: PlanEq and CycEq membership, counting and enumeration, plus separable permutations.
ABOUTME: Pattern containment and the cycle-pattern family are brute force over Σ_n.

A tuple (v_1, ..., v_n) lies in PlanEq(g) iff repeatedly contracting any
pair of consecutive blocks joined by an edge ends in a single block; the
choice of pair never matters, so every greedy strategy decides the same.
Cyclic tuples work the same way with the wrap-around pair included.

Patterns are tuples over 1..k; vertex tuples are over 0..n-1.
"""

import logging
from itertools import combinations, permutations
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from .config import check_budget
from .errors import SequenceError
from .graph_core import Graph, VertexSet, contract_tube, lowest_vertex, vertices_of
from .hamiltonian import CyclicSequence, DirectedSequence, validate_permutation

logger = logging.getLogger(__name__)

Pattern = Tuple[int, ...]

STRATEGIES = ("first", "last", "random")


def _joined(g: Graph, a: VertexSet, b: VertexSet) -> bool:
    return bool(g.neighborhood(a) & b)


def planeq_reduce(
    g: Graph,
    sigma: Sequence[int],
    strategy: str = "first",
    rng: Optional[np.random.Generator] = None,
) -> List[VertexSet]:
    """
    Greedily contract adjacent consecutive blocks of sigma until none remain.

    Args:
        g: Host graph
        sigma: Permutation of V(g)
        strategy: "first", "last" or "random" adjacent pair
        rng: Generator for the random strategy

    Returns:
        List[VertexSet]: The terminal blocks, left to right

    Raises:
        SequenceError: If sigma is not a permutation of V(g)
        ValueError: If the strategy is unknown
    """
    validate_permutation(g.n, sigma)
    if strategy not in STRATEGIES:
        raise ValueError(f"Unknown strategy {strategy}, expected one of {STRATEGIES}")
    if strategy == "random" and rng is None:
        rng = np.random.default_rng(0)

    blocks = [1 << v for v in sigma]
    while len(blocks) > 1:
        candidates = [
            i for i in range(len(blocks) - 1) if _joined(g, blocks[i], blocks[i + 1])
        ]
        if not candidates:
            break
        if strategy == "first":
            i = candidates[0]
        elif strategy == "last":
            i = candidates[-1]
        else:
            i = candidates[int(rng.integers(len(candidates)))]
        blocks[i : i + 2] = [blocks[i] | blocks[i + 1]]
    return blocks


def is_planeq(g: Graph, sigma: Sequence[int], strategy: str = "first") -> bool:
    """True iff sigma ∈ PlanEq(g)."""
    if g.n == 1:
        validate_permutation(1, sigma)
        return True
    return len(planeq_reduce(g, sigma, strategy)) == 1


def cyceq_reduce(g: Graph, tau: Union[CyclicSequence, Sequence[int]]) -> List[VertexSet]:
    """Greedy contraction over cyclically consecutive blocks, first pair first."""
    seq = tau.vertices if isinstance(tau, CyclicSequence) else tuple(tau)
    validate_permutation(g.n, seq)
    blocks = [1 << v for v in seq]
    while len(blocks) > 1:
        k = len(blocks)
        pair = next(
            (i for i in range(k) if _joined(g, blocks[i], blocks[(i + 1) % k])), None
        )
        if pair is None:
            break
        if pair == k - 1:
            blocks = [blocks[-1] | blocks[0]] + blocks[1:-1]
        else:
            blocks[pair : pair + 2] = [blocks[pair] | blocks[pair + 1]]
    return blocks


def is_cyceq(g: Graph, tau: Union[CyclicSequence, Sequence[int]]) -> bool:
    """True iff the cyclic tuple tau lies in CycEq(g)."""
    return len(cyceq_reduce(g, tau)) == 1


def is_cyceq_by_rotation(g: Graph, tau: Union[CyclicSequence, Sequence[int]]) -> bool:
    """CycEq membership as: some rotation of tau lies in PlanEq(g)."""
    seq = tau.vertices if isinstance(tau, CyclicSequence) else tuple(tau)
    return any(is_planeq(g, seq[i:] + seq[:i]) for i in range(len(seq)))


def planeq_tuples(g: Graph) -> List[DirectedSequence]:
    """
    PlanEq(g) in lexicographic order.

    Raises:
        BudgetExceededError: If g exceeds the n! sweep budget
    """
    check_budget("planeq_sweep_vertices", g.n, "planeq_tuples")
    return [sigma for sigma in permutations(range(g.n)) if is_planeq(g, sigma)]


def cyceq_tuples(g: Graph) -> List[CyclicSequence]:
    """
    CycEq(g) as canonical cyclic tuples starting at vertex 0.

    Raises:
        BudgetExceededError: If g exceeds the n! sweep budget
    """
    check_budget("planeq_sweep_vertices", g.n, "cyceq_tuples")
    if g.n == 0:
        return []
    return [
        CyclicSequence((0,) + rest)
        for rest in permutations(range(1, g.n))
        if is_cyceq(g, (0,) + rest)
    ]


def _count_by_stack(g: Graph) -> int:
    """
    Count PlanEq(g) by pushing vertices onto a stack of blocks and merging
    the top two while they are joined; a tuple is counted when the final
    stack is one block. Memoized on the stack.
    """
    full = g.full_mask
    memo: Dict[Tuple[int, ...], int] = {}

    def completions(stack: Tuple[int, ...], used: int) -> int:
        if used == full:
            return 1 if len(stack) == 1 else 0
        cached = memo.get(stack)
        if cached is not None:
            return cached
        total = 0
        free = full & ~used
        while free:
            low = free & -free
            free ^= low
            grown = list(stack)
            top = low
            while grown and _joined(g, grown[-1], top):
                top |= grown.pop()
            grown.append(top)
            total += completions(tuple(grown), used | low)
        memo[stack] = total
        return total

    count = completions((), 0)
    logger.debug(f"planeq stack DP used {len(memo)} states for n={g.n}")
    return count


def planeq_count(g: Graph, method: str = "dp") -> int:
    """
    PE(g) = |PlanEq(g)|.

    Args:
        g: Host graph
        method: "dp" for the stack DP, "sweep" for the n! filter

    Raises:
        BudgetExceededError: If g exceeds the budget of the chosen method
    """
    if g.n == 0:
        return 0
    if method == "sweep":
        return len(planeq_tuples(g))
    if method != "dp":
        raise ValueError(f"Unknown method {method}, expected 'dp' or 'sweep'")
    check_budget("planeq_dp_vertices", g.n, "planeq_count")
    return _count_by_stack(g)


def cyceq_count(g: Graph) -> int:
    """
    CE(g) = |CycEq(g)|, sweeping the (n-1)! orderings that start at 0.

    Raises:
        BudgetExceededError: If g exceeds the n! sweep budget
    """
    if g.n == 0:
        return 0
    check_budget("planeq_sweep_vertices", g.n, "cyceq_count")
    return sum(1 for rest in permutations(range(1, g.n)) if is_cyceq(g, (0,) + rest))


def substitute_tuple(
    g: Graph, tube: VertexSet, outer: Sequence[int], inner: Sequence[int]
) -> DirectedSequence:
    """Splice inner (labels of induced(g, tube)) into outer at the tube, no adjacency checks."""
    contracted, partition = contract_tube(g, tube)
    validate_permutation(contracted.n, outer)
    tube_vertices = vertices_of(tube)
    validate_permutation(len(tube_vertices), inner)
    label_vertex = [lowest_vertex(block) for block in partition.blocks]
    tube_label = label_vertex.index(tube_vertices[0])
    result: List[int] = []
    for x in outer:
        if x == tube_label:
            result.extend(tube_vertices[w] for w in inner)
        else:
            result.append(label_vertex[x])
    return tuple(result)


def substitute_cyclic_tuple(
    g: Graph, tube: VertexSet, outer: CyclicSequence, inner: Sequence[int]
) -> CyclicSequence:
    """Cyclic counterpart of substitute_tuple."""
    return CyclicSequence.from_sequence(substitute_tuple(g, tube, outer.vertices, inner))


def validate_pattern(p: Sequence[int]) -> None:
    """
    Raises:
        SequenceError: If p is not a bijection on 1..k
    """
    if sorted(p) != list(range(1, len(p) + 1)):
        raise SequenceError(f"{tuple(p)} is not a permutation of 1..{len(p)}")


def parse_pattern(text: str) -> Pattern:
    """Parse "2413" or "2-4-1-3" into a pattern."""
    text = text.strip()
    parts = text.split("-") if "-" in text else list(text)
    pattern = tuple(int(x) for x in parts)
    validate_pattern(pattern)
    return pattern


def tuple_to_pattern(seq: Sequence[int]) -> Pattern:
    return tuple(v + 1 for v in seq)


def pattern_to_tuple(p: Sequence[int]) -> DirectedSequence:
    return tuple(v - 1 for v in p)


def _standardize(values: Sequence[int]) -> Pattern:
    ranks = {v: i + 1 for i, v in enumerate(sorted(values))}
    return tuple(ranks[v] for v in values)


def is_separable(sigma: Sequence[int]) -> bool:
    """
    Separability by repeated merging of the first pair of consecutive
    entries whose values differ by one.

    The merged pair becomes the smaller value; values above the larger one
    shift down by one.
    """
    validate_pattern(sigma)
    s = list(sigma)
    while len(s) > 1:
        i = next((j for j in range(len(s) - 1) if abs(s[j] - s[j + 1]) == 1), None)
        if i is None:
            return False
        low, high = min(s[i], s[i + 1]), max(s[i], s[i + 1])
        s[i : i + 2] = [low]
        s = [v - 1 if v > high else v for v in s]
    return True


def contains_pattern(sigma: Sequence[int], tau: Sequence[int]) -> bool:
    """True iff some subsequence of sigma is order-isomorphic to tau."""
    k = len(tau)
    if k > len(sigma):
        return False
    target = tuple(tau)
    return any(
        _standardize([sigma[i] for i in positions]) == target
        for positions in combinations(range(len(sigma)), k)
    )


def avoids(sigma: Sequence[int], patterns: Iterable[Sequence[int]]) -> bool:
    return not any(contains_pattern(sigma, tau) for tau in patterns)


def avoider_set(n: int, patterns: Sequence[Sequence[int]]) -> Set[Pattern]:
    """
    Av_n(patterns) as a set of permutations of 1..n.

    Raises:
        BudgetExceededError: If n exceeds the avoider budget
    """
    check_budget("avoider_length", n, "avoiders")
    for tau in patterns:
        validate_pattern(tau)
    return {
        sigma for sigma in permutations(range(1, n + 1)) if avoids(sigma, patterns)
    }


def avoiders(n: int, patterns: Sequence[Sequence[int]]) -> int:
    """|Av_n(patterns)|."""
    return len(avoider_set(n, patterns))


def separable_patterns() -> List[Pattern]:
    """The two patterns separable permutations avoid."""
    return [(2, 4, 1, 3), (3, 1, 4, 2)]


def b_c_patterns() -> List[Pattern]:
    """The ten 5-permutations whose consecutive entries differ by ±2 mod 5."""
    return [
        p
        for p in permutations(range(1, 6))
        if all((p[i] - p[i + 1]) % 5 in (2, 3) for i in range(4))
    ]
