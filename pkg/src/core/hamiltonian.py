"""
Directed Hamiltonian paths and cycles.

Paths are plain vertex tuples. Cycles are rotation classes stored by the
representative that starts at the smallest label. Lengths 1 and 2 follow
the loop conventions: path(1) carries the single cycle [0] and any edge
carries the single 2-cycle [0, 1].

The substitution maps return None for the zero of the linearized map.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .config import check_budget
from .errors import SequenceError
from .graph_core import (
    Graph,
    VertexSet,
    chromatic_polynomial,
    contract_tube,
    induced,
    is_connected,
    lowest_vertex,
    require_connected,
    vertices_of,
)

logger = logging.getLogger(__name__)

DirectedSequence = Tuple[int, ...]


@dataclass(frozen=True)
class CyclicSequence:
    """Rotation class of a vertex tuple, stored starting at its minimum label."""

    vertices: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise SequenceError(f"Repeated vertex in cycle {self.vertices}")
        if self.vertices and self.vertices[0] != min(self.vertices):
            raise SequenceError(
                f"Cycle representative must start at its minimum: {self.vertices}"
            )

    @classmethod
    def from_sequence(cls, seq: Sequence[int]) -> "CyclicSequence":
        seq = tuple(seq)
        if not seq:
            return cls(())
        i = seq.index(min(seq))
        return cls(seq[i:] + seq[:i])

    def reversed(self) -> "CyclicSequence":
        return CyclicSequence.from_sequence(tuple(reversed(self.vertices)))

    def rotations(self) -> List[DirectedSequence]:
        seq = self.vertices
        return [seq[i:] + seq[:i] for i in range(len(seq))]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __str__(self) -> str:
        return "[" + ",".join(str(v) for v in self.vertices) + "]"


def validate_permutation(n: int, seq: Sequence[int]) -> None:
    """
    Raises:
        SequenceError: If seq is not a permutation of 0..n-1
    """
    if len(seq) != n or sorted(seq) != list(range(n)):
        raise SequenceError(f"{tuple(seq)} is not a permutation of 0..{n - 1}")


def is_hamiltonian_path(g: Graph, p: Sequence[int]) -> bool:
    if len(p) != g.n or sorted(p) != list(range(g.n)):
        return False
    return all(g.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1))


def is_hamiltonian_cycle(g: Graph, c: CyclicSequence) -> bool:
    seq = c.vertices
    if not is_hamiltonian_path(g, seq):
        return False
    if g.n <= 2:
        return True
    return g.has_edge(seq[-1], seq[0])


def _require_size(g: Graph, operation: str) -> None:
    check_budget("hamiltonian_vertices", g.n, operation)


def ham_paths(g: Graph) -> List[DirectedSequence]:
    """
    All directed Hamiltonian paths in lexicographic order.

    Raises:
        DisconnectedGraphError: If g is not connected
        BudgetExceededError: If g exceeds the Hamiltonian budget
    """
    require_connected(g, "ham_paths")
    _require_size(g, "ham_paths")
    full = g.full_mask
    found: List[DirectedSequence] = []
    trail: List[int] = []

    def walk(v: int, visited: int) -> None:
        trail.append(v)
        if visited == full:
            found.append(tuple(trail))
        else:
            for u in vertices_of(g.adjacency[v] & ~visited):
                walk(u, visited | (1 << u))
        trail.pop()

    for start in range(g.n):
        walk(start, 1 << start)
    return found


def _path_dp(g: Graph, starts: VertexSet) -> List[List[int]]:
    """dp[mask][v] = number of paths starting in starts, covering mask, ending at v."""
    size = 1 << g.n
    dp = [[0] * g.n for _ in range(size)]
    for v in vertices_of(starts):
        dp[1 << v][v] = 1
    adjacency = g.adjacency
    for mask in range(1, size):
        row = dp[mask]
        for v in range(g.n):
            count = row[v]
            if not count:
                continue
            free = adjacency[v] & ~mask
            while free:
                low = free & -free
                u = low.bit_length() - 1
                dp[mask | low][u] += count
                free ^= low
    return dp


def ham_path_count(g: Graph) -> int:
    """
    HP(g) by dynamic programming over (subset, endpoint).

    Total on all graphs: 0 when disconnected, 1 for the empty graph.
    """
    if g.n == 0:
        return 1
    if not is_connected(g):
        return 0
    if g.n == 1:
        return 1
    _require_size(g, "ham_path_count")
    dp = _path_dp(g, g.full_mask)
    return sum(dp[g.full_mask])


def ham_cycle_count(g: Graph) -> int:
    """
    HC(g), counting each directed cycle once.

    Total on all graphs: 0 when disconnected or empty; 1 for path(1) and
    path(2).
    """
    if g.n == 0 or not is_connected(g):
        return 0
    if g.n <= 2:
        return 1
    _require_size(g, "ham_cycle_count")
    dp = _path_dp(g, 1)
    return sum(dp[g.full_mask][v] for v in vertices_of(g.adjacency[0]))


def ham_cycles(g: Graph) -> List[CyclicSequence]:
    """
    All directed Hamiltonian cycles, canonical representatives in
    lexicographic order.

    Raises:
        DisconnectedGraphError: If g is not connected
        BudgetExceededError: If g exceeds the Hamiltonian budget
    """
    require_connected(g, "ham_cycles")
    _require_size(g, "ham_cycles")
    if g.n == 1:
        return [CyclicSequence((0,))]
    if g.n == 2:
        return [CyclicSequence((0, 1))]
    full = g.full_mask
    found: List[CyclicSequence] = []
    trail = [0]

    def walk(v: int, visited: int) -> None:
        if visited == full:
            if g.has_edge(v, 0):
                found.append(CyclicSequence(tuple(trail)))
            return
        for u in vertices_of(g.adjacency[v] & ~visited):
            trail.append(u)
            walk(u, visited | (1 << u))
            trail.pop()

    walk(0, 1)
    return found


def extend_path_to_cycle(g: Graph, p: Sequence[int]) -> Optional[CyclicSequence]:
    """
    Close a Hamiltonian path into a cycle when its endpoints are adjacent.

    Paths on one or two vertices always close (loop and 2-cycle conventions).

    Raises:
        SequenceError: If p is not a Hamiltonian path of g
    """
    if not is_hamiltonian_path(g, p):
        raise SequenceError(f"{tuple(p)} is not a Hamiltonian path of {g}")
    if g.n >= 3 and not g.has_edge(p[-1], p[0]):
        return None
    return CyclicSequence.from_sequence(p)


def _splice_targets(
    g: Graph, tube: VertexSet, inner: Sequence[int]
) -> Tuple[Graph, List[int], List[int]]:
    """Contract the tube; map inner (induced labels) to original vertices."""
    contracted, partition = contract_tube(g, tube)
    tube_vertices = vertices_of(tube)
    inner_graph = induced(g, tube)
    if not is_hamiltonian_path(inner_graph, inner):
        raise SequenceError(f"Inner {tuple(inner)} is not Hamiltonian in {inner_graph}")
    mapped_inner = [tube_vertices[w] for w in inner]
    label_vertex = [lowest_vertex(block) for block in partition.blocks]
    return contracted, mapped_inner, label_vertex


def substitute_path(
    g: Graph, tube: VertexSet, outer: Sequence[int], inner: Sequence[int]
) -> Optional[DirectedSequence]:
    """
    Splice a Hamiltonian path of induced(g, tube) into a Hamiltonian path of
    contract(g, {tube}) at the contracted vertex.

    Returns:
        The spliced path, or None when a boundary adjacency fails

    Raises:
        SequenceError: If outer or inner is not Hamiltonian in its graph
    """
    contracted, mapped_inner, label_vertex = _splice_targets(g, tube, inner)
    if not is_hamiltonian_path(contracted, outer):
        raise SequenceError(f"Outer {tuple(outer)} is not Hamiltonian in {contracted}")
    tube_label = label_vertex.index(lowest_vertex(tube))
    k = list(outer).index(tube_label)

    before = [label_vertex[x] for x in outer[:k]]
    after = [label_vertex[x] for x in outer[k + 1 :]]
    if before and not g.has_edge(before[-1], mapped_inner[0]):
        return None
    if after and not g.has_edge(mapped_inner[-1], after[0]):
        return None
    return tuple(before + mapped_inner + after)


def substitute_cycle(
    g: Graph, tube: VertexSet, outer: CyclicSequence, inner: Sequence[int]
) -> Optional[CyclicSequence]:
    """
    Splice a Hamiltonian path of induced(g, tube) into a Hamiltonian cycle of
    contract(g, {tube}), with wrap-around boundary adjacency.

    When the tube is all of V the outer cycle is the loop and the result is
    the closure of the inner path.

    Raises:
        SequenceError: If outer or inner is not Hamiltonian in its graph
    """
    contracted, mapped_inner, label_vertex = _splice_targets(g, tube, inner)
    if not is_hamiltonian_cycle(contracted, outer):
        raise SequenceError(f"Outer {outer} is not a Hamiltonian cycle of {contracted}")
    if contracted.n == 1:
        return extend_path_to_cycle(g, mapped_inner)

    tube_label = label_vertex.index(lowest_vertex(tube))
    seq = outer.vertices
    k = seq.index(tube_label)
    rest = [label_vertex[x] for x in seq[k + 1 :] + seq[:k]]
    if not g.has_edge(mapped_inner[-1], rest[0]):
        return None
    if not g.has_edge(rest[-1], mapped_inner[0]):
        return None
    return CyclicSequence.from_sequence(mapped_inner + rest)


def acyclic_orientation_count(g: Graph) -> int:
    """
    Number of acyclic orientations, (-1)^n χ_g(-1).

    Raises:
        BudgetExceededError: If g exceeds the chromatic budget
    """
    value = chromatic_polynomial(g).evaluate(-1)
    return value if g.n % 2 == 0 else -value


def acyclic_orientations_brute_force(g: Graph) -> int:
    """Count acyclic orientations by trying all 2^|E| edge directions."""
    check_budget("enumerate_vertices", g.n, "acyclic_orientations_brute_force")
    edges = g.edges()
    count = 0
    for bits in range(1 << len(edges)):
        digraph = nx.DiGraph()
        digraph.add_nodes_from(range(g.n))
        digraph.add_edges_from(
            (u, v) if (bits >> i) & 1 else (v, u) for i, (u, v) in enumerate(edges)
        )
        if nx.is_directed_acyclic_graph(digraph):
            count += 1
    return count
