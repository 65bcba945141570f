"""
Koszul complexes of the Hamiltonian path contractad and its cycle module.

A basis element of the path complex is a PlanEq tuple σ cut into blocks
that are directed paths of g; equivalently a pair (σ, C) where the cut set
C ⊆ {0..n-2} contains every position whose consecutive pair is not an edge.
The degree is the number of cuts. The differential removes one mergeable
cut; the sign is (-1)^(rank of the cut in C).

The cycle complex uses cyclic tuples τ ∈ CycEq and non-empty cut sets
C ⊆ Z_n, degree |C| - 1. Blocks are listed from the block holding the
minimum vertex; rotating a k-block representative by i blocks costs
(-1)^((k-1)i).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from .chain_complex import RationalChainComplex, SparseMatrix, direct_sum, homology_ranks
from .config import check_budget
from .graph_core import Graph, require_connected
from .hamiltonian import CyclicSequence, DirectedSequence, ham_cycle_count
from .planeq import cyceq_tuples, planeq_tuples

logger = logging.getLogger(__name__)

Blocks = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class PathMultipartition:
    """Ordered blocks (P1|...|Pk) whose concatenation is σ."""

    blocks: Blocks

    @classmethod
    def from_cuts(cls, sigma: Sequence[int], cuts: Sequence[int]) -> "PathMultipartition":
        """Cut sigma after each position in cuts."""
        blocks = []
        start = 0
        for c in sorted(cuts):
            blocks.append(tuple(sigma[start : c + 1]))
            start = c + 1
        blocks.append(tuple(sigma[start:]))
        return cls(tuple(blocks))

    @property
    def sequence(self) -> DirectedSequence:
        return tuple(v for block in self.blocks for v in block)

    @property
    def degree(self) -> int:
        return len(self.blocks) - 1

    @property
    def cut_set(self) -> Tuple[int, ...]:
        cuts = []
        position = -1
        for block in self.blocks[:-1]:
            position += len(block)
            cuts.append(position)
        return tuple(cuts)

    def __str__(self) -> str:
        return "(" + "|".join(",".join(map(str, b)) for b in self.blocks) + ")"


@dataclass(frozen=True)
class CyclicMultipartition:
    """Canonical block-rotation class |P1|...|Pk|, P1 holding the minimum vertex."""

    blocks: Blocks

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> Tuple["CyclicMultipartition", int]:
        """
        Canonicalize a representative.

        Returns:
            (canonical, sign) with representative = sign * canonical
        """
        blocks = tuple(tuple(b) for b in blocks)
        k = len(blocks)
        smallest = min(v for b in blocks for v in b)
        i = next(j for j, b in enumerate(blocks) if smallest in b)
        sign = -1 if ((k - 1) * i) % 2 else 1
        return cls(blocks[i:] + blocks[:i]), sign

    @property
    def degree(self) -> int:
        return len(self.blocks) - 1

    @property
    def cycle(self) -> CyclicSequence:
        return CyclicSequence.from_sequence([v for b in self.blocks for v in b])

    def __str__(self) -> str:
        return "|" + "|".join(",".join(map(str, b)) for b in self.blocks) + "|"


def _sign(rank: int) -> Fraction:
    return Fraction(-1 if rank % 2 else 1)


def _cut_subsets(forced: Sequence[int], free: Sequence[int]) -> List[Tuple[int, ...]]:
    """All cut sets forced ∪ S, S ⊆ free, sorted by (size, cuts)."""
    sets = []
    for size in range(len(free) + 1):
        for chosen in combinations(free, size):
            sets.append(tuple(sorted(tuple(forced) + chosen)))
    sets.sort(key=lambda cuts: (len(cuts), cuts))
    return sets


def _path_component(g: Graph, sigma: DirectedSequence) -> RationalChainComplex:
    n = len(sigma)
    mergeable = [i for i in range(n - 1) if g.has_edge(sigma[i], sigma[i + 1])]
    forced = [i for i in range(n - 1) if i not in mergeable]
    mergeable_set = set(mergeable)

    bases: List[List[PathMultipartition]] = [[] for _ in range(n)]
    index: List[Dict[Tuple[int, ...], int]] = [{} for _ in range(n)]
    for cuts in _cut_subsets(forced, mergeable):
        d = len(cuts)
        index[d][cuts] = len(bases[d])
        bases[d].append(PathMultipartition.from_cuts(sigma, cuts))

    differentials: Dict[int, SparseMatrix] = {}
    for d in range(1, n):
        entries: SparseMatrix = {}
        for cuts, col in index[d].items():
            for rank, c in enumerate(cuts):
                if c in mergeable_set:
                    target = cuts[:rank] + cuts[rank + 1 :]
                    entries[(index[d - 1][target], col)] = _sign(rank)
        if entries:
            differentials[d] = entries
    return RationalChainComplex(bases, differentials)


def _check_graph(g: Graph, operation: str) -> None:
    require_connected(g, operation)
    check_budget("koszul_vertices", g.n, operation)


def ham_koszul_components(g: Graph) -> Iterator[Tuple[DirectedSequence, RationalChainComplex]]:
    """Yield (σ, σ-component) for every σ ∈ PlanEq(g), lexicographically."""
    _check_graph(g, "ham Koszul complex")
    for sigma in planeq_tuples(g):
        yield sigma, _path_component(g, sigma)


def build_ham_koszul(g: Graph) -> RationalChainComplex:
    """
    The Koszul complex of Ham at g, basis ordered by (σ, cut set).

    Raises:
        DisconnectedGraphError: If g is not connected
        BudgetExceededError: If g exceeds the Koszul budget
    """
    complex_ = direct_sum(component for _, component in ham_koszul_components(g))
    logger.debug(f"ham Koszul complex of {g}: dims {complex_.dimensions()}")
    return complex_


def _cyclic_blocks(seq: Sequence[int], cuts: Sequence[int]) -> Blocks:
    """Blocks of a cyclic tuple cut after each position, starting at the block holding index 0."""
    n = len(seq)
    cuts = sorted(cuts)
    blocks = []
    start = (cuts[-1] + 1) % n
    for c in cuts:
        length = (c - start) % n + 1
        blocks.append(tuple(seq[(start + j) % n] for j in range(length)))
        start = (c + 1) % n
    return tuple(blocks)


def _merge_blocks(blocks: Blocks, l: int) -> Tuple[CyclicMultipartition, Fraction]:
    """
    Merge block l with its cyclic successor (0-based).

    Interior merges keep the canonical order with sign (-1)^l. The wrap merge
    is written as |P2|...|Pk P1| with coefficient -1 and canonicalized.
    """
    k = len(blocks)
    if l < k - 1:
        merged = blocks[:l] + (blocks[l] + blocks[l + 1],) + blocks[l + 2 :]
        canonical, sign = CyclicMultipartition.from_blocks(merged)
        return canonical, _sign(l) * sign
    merged = blocks[1:-1] + (blocks[-1] + blocks[0],)
    canonical, sign = CyclicMultipartition.from_blocks(merged)
    return canonical, -sign


def _cyclic_component(g: Graph, tau: CyclicSequence) -> RationalChainComplex:
    seq = tau.vertices
    n = len(seq)
    if n == 1:
        return RationalChainComplex([[CyclicMultipartition(((seq[0],),))]])

    mergeable = [i for i in range(n) if g.has_edge(seq[i], seq[(i + 1) % n])]
    forced = [i for i in range(n) if i not in mergeable]
    mergeable_set = set(mergeable)

    bases: List[List[CyclicMultipartition]] = [[] for _ in range(n)]
    index: List[Dict[CyclicMultipartition, int]] = [{} for _ in range(n)]
    cut_sets: List[List[Tuple[int, ...]]] = [[] for _ in range(n)]
    for cuts in _cut_subsets(forced, mergeable):
        if not cuts:
            continue
        d = len(cuts) - 1
        element = CyclicMultipartition(_cyclic_blocks(seq, cuts))
        index[d][element] = len(bases[d])
        bases[d].append(element)
        cut_sets[d].append(cuts)

    differentials: Dict[int, SparseMatrix] = {}
    for d in range(1, n):
        entries: SparseMatrix = {}
        for col, (element, cuts) in enumerate(zip(bases[d], cut_sets[d])):
            # block l of the canonical form ends at the l-th smallest cut
            for l, c in enumerate(cuts):
                if c in mergeable_set:
                    target, coefficient = _merge_blocks(element.blocks, l)
                    entries[(index[d - 1][target], col)] = coefficient
        if entries:
            differentials[d] = entries
    return RationalChainComplex(bases, differentials)


def cycham_koszul_components(
    g: Graph,
) -> Iterator[Tuple[CyclicSequence, RationalChainComplex]]:
    """Yield (τ, τ-component) for every τ ∈ CycEq(g)."""
    _check_graph(g, "cycham Koszul complex")
    for tau in cyceq_tuples(g):
        yield tau, _cyclic_component(g, tau)


def build_cycham_koszul(g: Graph) -> RationalChainComplex:
    """
    The Koszul complex of the cycle module at g, basis ordered by (τ, cut set).

    Raises:
        DisconnectedGraphError: If g is not connected
        BudgetExceededError: If g exceeds the Koszul budget
    """
    complex_ = direct_sum(component for _, component in cycham_koszul_components(g))
    logger.debug(f"cycham Koszul complex of {g}: dims {complex_.dimensions()}")
    return complex_


@dataclass
class KoszulCheck:
    """Outcome of a Koszulity check on one graph."""

    graph: Graph
    module: str
    betti: List[int]
    expected: List[int]

    @property
    def passed(self) -> bool:
        return self.betti == self.expected


def expected_betti(g: Graph, module: str) -> List[int]:
    """[1, 0, ...] on path(1) for ham, zeros otherwise; [HC(g), 0, ...] for cycham."""
    if module == "ham":
        head = 1 if g.n == 1 else 0
    elif module == "cycham":
        head = ham_cycle_count(g)
    else:
        raise ValueError(f"Unknown module {module}, expected 'ham' or 'cycham'")
    return [head] + [0] * (g.n - 1)


def check_koszul(g: Graph, module: str) -> KoszulCheck:
    """
    Build the complex for g, verify ∂∘∂ = 0 and compare Betti numbers with
    the Koszul prediction.
    """
    components = ham_koszul_components(g) if module == "ham" else cycham_koszul_components(g)
    expected = expected_betti(g, module)
    betti = [0] * g.n
    for _, component in components:
        for d, b in enumerate(homology_ranks(component)):
            betti[d] += b
    return KoszulCheck(g, module, betti, expected)
