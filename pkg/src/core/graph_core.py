"""
Connected-graph representation and the contraction calculus.

Graphs are labeled simple undirected graphs on vertices 0..n-1 with the
adjacency stored as one neighbor bitmask per vertex. Vertex subsets (tubes,
partition blocks) are plain int bitmasks. Graph equality is label-sensitive.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import sympy

from .config import check_budget
from .errors import (
    DisconnectedGraphError,
    GraphError,
    GraphSpecError,
    InvalidPartitionError,
)

logger = logging.getLogger(__name__)

VertexSet = int
BlockLike = Union[int, Iterable[int]]


def mask_of(vertices: Iterable[int]) -> VertexSet:
    """Bitmask of the given vertex labels."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def vertices_of(mask: VertexSet) -> List[int]:
    """Vertex labels of a bitmask, ascending."""
    result = []
    v = 0
    while mask:
        if mask & 1:
            result.append(v)
        mask >>= 1
        v += 1
    return result


def lowest_vertex(mask: VertexSet) -> int:
    """Smallest label in a non-empty bitmask."""
    return (mask & -mask).bit_length() - 1


def popcount(mask: VertexSet) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """
    Labeled simple undirected graph.

    Attributes:
        n: Vertex count, vertices are 0..n-1
        adjacency: adjacency[v] is the bitmask of neighbors of v
    """

    n: int
    adjacency: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {self.n}")
        if len(self.adjacency) != self.n:
            raise GraphError(
                f"Adjacency has {len(self.adjacency)} rows for {self.n} vertices"
            )
        full = (1 << self.n) - 1
        for v, nbrs in enumerate(self.adjacency):
            if nbrs & ~full:
                raise GraphError(f"Vertex {v} has neighbors outside 0..{self.n - 1}")
            if (nbrs >> v) & 1:
                raise GraphError(f"Self-loop at vertex {v}")
            for u in vertices_of(nbrs):
                if not (self.adjacency[u] >> v) & 1:
                    raise GraphError(f"Asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Build a graph from an edge list on vertices 0..n-1."""
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"Self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"Edge ({u}, {v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "Graph":
        """Convert a networkx graph, relabeling nodes in sorted order."""
        nodes = sorted(nx_graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(
            len(nodes), ((index[u], index[v]) for u, v in nx_graph.edges())
        )

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    @property
    def full_mask(self) -> VertexSet:
        return (1 << self.n) - 1

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.n, self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adjacency[u] >> v) & 1)

    def neighbors(self, v: int) -> VertexSet:
        return self.adjacency[v]

    def neighborhood(self, mask: VertexSet) -> VertexSet:
        """Union of the neighbors of every vertex in mask."""
        result = 0
        adjacency = self.adjacency
        while mask:
            low = mask & -mask
            result |= adjacency[low.bit_length() - 1]
            mask ^= low
        return result

    def degree(self, v: int) -> int:
        return popcount(self.adjacency[v])

    def edges(self) -> List[Tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order."""
        return [
            (u, v) for u in range(self.n) for v in vertices_of(self.adjacency[u]) if v > u
        ]

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adjacency) // 2

    def is_complete(self) -> bool:
        return self.edge_count == self.n * (self.n - 1) // 2

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def empty_graph(n: int) -> Graph:
    """Edgeless graph on n vertices; n = 0 gives the empty graph."""
    return Graph(n, (0,) * n)


def is_connected_mask(g: Graph, mask: VertexSet) -> bool:
    """True iff the subgraph induced on a non-empty mask is connected."""
    if mask == 0:
        return False
    reached = mask & -mask
    while True:
        grown = (reached | g.neighborhood(reached)) & mask
        if grown == reached:
            return reached == mask
        reached = grown


def is_connected(g: Graph) -> bool:
    """True iff g has exactly one connected component; the empty graph is not."""
    return is_connected_mask(g, g.full_mask)


def is_tube(g: Graph, mask: VertexSet) -> bool:
    return is_connected_mask(g, mask)


def connected_components(g: Graph) -> List[VertexSet]:
    """Component masks ordered by smallest vertex."""
    components = []
    remaining = g.full_mask
    while remaining:
        reached = remaining & -remaining
        while True:
            grown = reached | (g.neighborhood(reached) & remaining)
            if grown == reached:
                break
            reached = grown
        components.append(reached)
        remaining &= ~reached
    return components


def require_connected(g: Graph, operation: str) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError(f"{operation} requires a connected graph, got {g}")


def tubes(g: Graph) -> List[VertexSet]:
    """
    All tubes of a connected graph.

    Returns:
        List[VertexSet]: Tube masks ordered by size, then by sorted vertex tuple

    Raises:
        DisconnectedGraphError: If g is not connected
    """
    require_connected(g, "tubes")
    found = [mask for mask in range(1, 1 << g.n) if is_connected_mask(g, mask)]
    found.sort(key=lambda mask: (popcount(mask), vertices_of(mask)))
    return found


def induced(g: Graph, s: VertexSet) -> Graph:
    """
    Induced subgraph on s, relabeled 0..|s|-1 in the order of original labels.

    Raises:
        GraphError: If s is empty or not a subset of the vertex range
    """
    if s == 0:
        raise GraphError("Cannot induce on the empty vertex set")
    if s & ~g.full_mask:
        raise GraphError(f"Vertex set {vertices_of(s)} outside 0..{g.n - 1}")
    verts = vertices_of(s)
    position = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = 0
        for u in vertices_of(g.adjacency[v] & s):
            row |= 1 << position[u]
        rows.append(row)
    return Graph(len(verts), tuple(rows))


@dataclass(frozen=True)
class GraphPartition:
    """
    Set partition of the vertex range whose blocks are tubes.

    Blocks are stored ordered by their smallest vertex; that order is the
    labeling of the contracted graph.
    """

    blocks: Tuple[VertexSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(sorted(self.blocks, key=lowest_vertex)))

    @classmethod
    def of(cls, blocks: Iterable[BlockLike]) -> "GraphPartition":
        masks = []
        for block in blocks:
            masks.append(block if isinstance(block, int) else mask_of(block))
        return cls(tuple(masks))

    @classmethod
    def singletons(cls, n: int) -> "GraphPartition":
        return cls(tuple(1 << v for v in range(n)))

    @classmethod
    def with_tube(cls, g: Graph, tube: VertexSet) -> "GraphPartition":
        """The partition {tube} plus singletons for every other vertex."""
        rest = g.full_mask & ~tube
        return cls((tube,) + tuple(1 << v for v in vertices_of(rest)))

    def index_of(self, vertex: int) -> int:
        """Contracted label of the block containing vertex."""
        for i, block in enumerate(self.blocks):
            if (block >> vertex) & 1:
                return i
        raise InvalidPartitionError(f"Vertex {vertex} is not covered")

    def validate(self, g: Graph) -> None:
        """
        Check that the blocks partition V(g) into tubes.

        Raises:
            InvalidPartitionError: On empty, overlapping, missing or non-tube blocks
        """
        covered = 0
        for block in self.blocks:
            if block == 0:
                raise InvalidPartitionError("Empty block")
            if block & covered:
                raise InvalidPartitionError(f"Block {vertices_of(block)} overlaps another")
            if block & ~g.full_mask:
                raise InvalidPartitionError(
                    f"Block {vertices_of(block)} outside 0..{g.n - 1}"
                )
            if not is_connected_mask(g, block):
                raise InvalidPartitionError(f"Block {vertices_of(block)} is not a tube")
            covered |= block
        if covered != g.full_mask:
            missing = vertices_of(g.full_mask & ~covered)
            raise InvalidPartitionError(f"Vertices {missing} are not covered")

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "|".join("".join(str(v) for v in vertices_of(b)) for b in self.blocks)


def _contract_unchecked(g: Graph, blocks: Sequence[VertexSet]) -> Graph:
    rows = []
    for block in blocks:
        reach = g.neighborhood(block) & ~block
        row = 0
        for j, other in enumerate(blocks):
            if reach & other:
                row |= 1 << j
        rows.append(row)
    return Graph(len(blocks), tuple(rows))


def contract(g: Graph, p: Union[GraphPartition, Iterable[BlockLike]]) -> Graph:
    """
    Contract every block of a graph partition to one vertex.

    Two blocks are adjacent iff their union is a tube, i.e. some edge of g
    joins them. Block labels follow the smallest original vertex.

    Raises:
        InvalidPartitionError: If p is not a graph partition of g
    """
    partition = p if isinstance(p, GraphPartition) else GraphPartition.of(p)
    partition.validate(g)
    return _contract_unchecked(g, partition.blocks)


def contract_tube(g: Graph, tube: VertexSet) -> Tuple[Graph, GraphPartition]:
    """Contract a single tube; returns the contracted graph and its block map."""
    partition = GraphPartition.with_tube(g, tube)
    return contract(g, partition), partition


def graph_partitions(g: Graph) -> Iterator[GraphPartition]:
    """
    Yield every partition of V(g) into tubes exactly once.

    Blocks are chosen recursively for the lowest unassigned vertex, trying
    the singleton first and then larger tubes in increasing mask order.

    Raises:
        DisconnectedGraphError: If g is not connected
        BudgetExceededError: If g is larger than the partition budget
    """
    require_connected(g, "graph_partitions")
    check_budget("partition_vertices", g.n, "graph_partitions")
    tube_set = {mask for mask in range(1, 1 << g.n) if is_connected_mask(g, mask)}

    def extend(remaining: int, chosen: Tuple[int, ...]) -> Iterator[GraphPartition]:
        if remaining == 0:
            yield GraphPartition(chosen)
            return
        low = remaining & -remaining
        rest = remaining ^ low
        submasks = []
        sub = rest
        while True:
            submasks.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        for sub in reversed(submasks):
            block = low | sub
            if block in tube_set:
                yield from extend(remaining ^ block, chosen + (block,))

    yield from extend(g.full_mask, ())


def complement(g: Graph) -> Graph:
    """Complement graph on the same labels."""
    full = g.full_mask
    return Graph(g.n, tuple((full ^ row) & ~(1 << v) for v, row in enumerate(g.adjacency)))


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in q; coefficients[i] multiplies q**i."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, q: int) -> int:
        value = 0
        for c in reversed(self.coefficients):
            value = value * q + c
        return value

    def as_expr(self) -> sympy.Expr:
        q = sympy.Symbol("q")
        return sympy.Add(*[c * q**i for i, c in enumerate(self.coefficients)])

    def __str__(self) -> str:
        return str(sympy.factor(self.as_expr()))


# coefficient tuples, lowest degree first
def _poly_mul(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    result = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                result[i + j] += x * y
    return tuple(result)


def _poly_sub(a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    size = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(size)
    )


CHROMATIC_CACHE_SIZE = 4096


@lru_cache(maxsize=CHROMATIC_CACHE_SIZE)
def _chromatic(g: Graph) -> Tuple[int, ...]:
    m = g.edge_count
    if m == 0:
        result: Tuple[int, ...] = (0,) * g.n + (1,)
    elif g.is_complete():
        result = (1,)
        for k in range(g.n):
            result = _poly_mul(result, (-k, 1))
    else:
        components = connected_components(g)
        if len(components) > 1:
            result = (1,)
            for comp in components:
                result = _poly_mul(result, _chromatic(induced(g, comp)))
        elif m == g.n - 1:
            # tree: q(q-1)^(n-1)
            result = (0, 1)
            for _ in range(g.n - 1):
                result = _poly_mul(result, (-1, 1))
        else:
            u, v = g.edges()[-1]
            rows = list(g.adjacency)
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
            deleted = Graph(g.n, tuple(rows))
            contracted = _contract_unchecked(
                g, GraphPartition.with_tube(g, (1 << u) | (1 << v)).blocks
            )
            result = _poly_sub(_chromatic(deleted), _chromatic(contracted))

    return result


def chromatic_polynomial(g: Graph) -> IntPolynomial:
    """
    Chromatic polynomial by memoized deletion-contraction.

    Raises:
        BudgetExceededError: If g is larger than the chromatic budget
    """
    check_budget("chromatic_vertices", g.n, "chromatic_polynomial")
    poly = IntPolynomial(_chromatic(g))
    logger.debug(f"chromatic cache: {_chromatic.cache_info()}")
    return poly


def clear_chromatic_cache() -> None:
    _chromatic.cache_clear()


def _require_order(n: int, family: str) -> None:
    if n < 1:
        raise GraphError(f"{family} needs at least one vertex, got {n}")


def path(n: int) -> Graph:
    """Path 0-1-...-(n-1)."""
    _require_order(n, "path")
    return Graph.from_networkx(nx.path_graph(n))


def cycle(n: int) -> Graph:
    """Cycle 0-1-...-(n-1)-0; cycle(1) = path(1) and cycle(2) = path(2)."""
    _require_order(n, "cycle")
    if n <= 2:
        return path(n)
    return Graph.from_networkx(nx.cycle_graph(n))


def complete(n: int) -> Graph:
    _require_order(n, "complete")
    return Graph.from_networkx(nx.complete_graph(n))


def complete_multipartite(parts: Sequence[int]) -> Graph:
    """
    Complete multipartite graph with consecutive blocks of the given sizes.

    An empty parts list gives the empty graph (the K_(0) convention).
    """
    if any(p <= 0 for p in parts):
        raise GraphError(f"Block sizes must be positive, got {list(parts)}")
    if not parts:
        return empty_graph(0)
    return Graph.from_networkx(nx.complete_multipartite_graph(*parts))


def _vertex_pairs(n: int) -> List[Tuple[int, int]]:
    return list(combinations(range(n), 2))


def _graph_from_pair_bits(n: int, pairs: Sequence[Tuple[int, int]], bits: int) -> Graph:
    rows = [0] * n
    index = 0
    while bits:
        if bits & 1:
            u, v = pairs[index]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        bits >>= 1
        index += 1
    return Graph(n, tuple(rows))


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """
    Yield all labeled connected graphs on n vertices.

    Graphs come in increasing order of their edge-subset index over the
    lexicographic vertex pairs.

    Raises:
        BudgetExceededError: If n exceeds the enumeration budget
    """
    _require_order(n, "enumerate_connected_graphs")
    check_budget("enumerate_vertices", n, "enumerate_connected_graphs")
    pairs = _vertex_pairs(n)
    for bits in range(1 << len(pairs)):
        g = _graph_from_pair_bits(n, pairs, bits)
        if is_connected(g):
            yield g


def sample_connected_graphs(n: int, count: int, seed: int) -> List[Graph]:
    """
    Distinct labeled connected graphs drawn with each edge present with
    probability 1/2, sorted by sort_key.
    """
    _require_order(n, "sample_connected_graphs")
    rng = np.random.default_rng(seed)
    pairs = _vertex_pairs(n)
    weights = 1 << np.arange(len(pairs), dtype=np.int64)
    seen = set()
    attempts = 0
    max_attempts = max(100, 50 * count)
    while len(seen) < count and attempts < max_attempts:
        attempts += 1
        bits = int(np.dot(rng.integers(0, 2, size=len(pairs)), weights))
        g = _graph_from_pair_bits(n, pairs, bits)
        if is_connected(g):
            seen.add(g)
    logger.debug(f"Sampled {len(seen)} connected graphs on {n} vertices")
    return sorted(seen, key=lambda g: g.sort_key)


_SPEC_PATTERN = re.compile(r"^([PCKpck])(\d+(?:,\d+)*)$")


def parse_graph_spec(text: str) -> Graph:
    """
    Parse a CLI graph spec.

    Grammar: P<n>, C<n>, K<n>, K<a>,<b>,... (complete multipartite), or a
    path to an edge-list file.

    Raises:
        GraphSpecError: If the spec cannot be parsed
    """
    spec = text.strip()
    match = _SPEC_PATTERN.match(spec)
    if match:
        family = match.group(1).upper()
        numbers = [int(x) for x in match.group(2).split(",")]
        try:
            if family == "K":
                if len(numbers) == 1:
                    return complete(numbers[0])
                return complete_multipartite(numbers)
            if len(numbers) != 1:
                raise GraphSpecError(f"{family} takes a single size: {text}")
            return path(numbers[0]) if family == "P" else cycle(numbers[0])
        except GraphSpecError:
            raise
        except GraphError as e:
            raise GraphSpecError(f"Invalid graph spec {text}: {e}") from e
    if Path(spec).is_file():
        return read_edge_list(Path(spec))
    raise GraphSpecError(f"Unrecognized graph spec: {text}")


def read_edge_list(file_path: Path) -> Graph:
    """
    Read the text edge-list format: first line n, then lines "u v".

    Blank lines and lines starting with '#' are ignored.

    Raises:
        GraphSpecError: On malformed content
    """
    lines = [
        line.strip()
        for line in Path(file_path).read_text().splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise GraphSpecError(f"Empty edge-list file: {file_path}")
    try:
        n = int(lines[0])
        edges = []
        for line in lines[1:]:
            u_str, v_str = line.split()
            u, v = int(u_str), int(v_str)
            if not 0 <= u < v < n:
                raise GraphSpecError(f"Edge '{line}' must satisfy 0 <= u < v < {n}")
            edges.append((u, v))
    except ValueError as e:
        raise GraphSpecError(f"Malformed edge-list file {file_path}: {e}") from e
    return Graph.from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def edge_list_of(g: Optional[Graph]) -> List[List[int]]:
    """JSON-friendly edge list."""
    if g is None:
        return []
    return [[u, v] for u, v in g.edges()]
