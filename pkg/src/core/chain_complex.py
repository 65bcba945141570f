"""
ABOUTME: Graded chain complexes over the rationals with sparse differentials.
ABOUTME: Exact ranks by fraction-free elimination on connected blocks of each matrix.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Dict, Hashable, Iterable, List, Sequence, TextIO, Tuple, Union

import networkx as nx

from .errors import ChainComplexError

logger = logging.getLogger(__name__)

SparseMatrix = Dict[Tuple[int, int], Fraction]


@dataclass
class RationalChainComplex:
    """
    Chain complex C_0 <- C_1 <- ... with explicit bases.

    Attributes:
        bases: bases[d] lists the basis elements of C_d
        differentials: differentials[d] is ∂_d: C_d -> C_{d-1} as a sparse
            matrix keyed (row in C_{d-1}, column in C_d); d >= 1
    """

    bases: List[List[Hashable]]
    differentials: Dict[int, SparseMatrix] = field(default_factory=dict)

    @property
    def top_degree(self) -> int:
        return len(self.bases) - 1

    def dimension(self, d: int) -> int:
        if 0 <= d < len(self.bases):
            return len(self.bases[d])
        return 0

    def dimensions(self) -> List[int]:
        return [len(basis) for basis in self.bases]

    def matrix(self, d: int) -> SparseMatrix:
        return self.differentials.get(d, {})

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(basis) for d, basis in enumerate(self.bases))

    def check(self) -> None:
        """
        Verify matrix shapes and ∂_{d-1} ∘ ∂_d = 0.

        Raises:
            ChainComplexError: On an out-of-range entry or a nonzero composite
        """
        for d, entries in self.differentials.items():
            rows, cols = self.dimension(d - 1), self.dimension(d)
            for (r, c), value in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ChainComplexError(
                        f"∂_{d} entry ({r}, {c}) outside {rows}x{cols}"
                    )
                if value == 0:
                    raise ChainComplexError(f"∂_{d} stores an explicit zero at ({r}, {c})")

        for d in sorted(self.differentials):
            if d - 1 not in self.differentials:
                continue
            lower_by_column: Dict[int, List[Tuple[int, Fraction]]] = {}
            for (r, c), value in self.differentials[d - 1].items():
                lower_by_column.setdefault(c, []).append((r, value))
            composite: Dict[Tuple[int, int], Fraction] = {}
            for (b, c), value in self.differentials[d].items():
                for a, lower in lower_by_column.get(b, ()):
                    key = (a, c)
                    composite[key] = composite.get(key, Fraction(0)) + lower * value
            bad = [key for key, value in composite.items() if value != 0]
            if bad:
                raise ChainComplexError(
                    f"∂_{d - 1}∘∂_{d} is nonzero at {len(bad)} entries, e.g. {bad[0]}"
                )

    def dump_triplets(self, target: Union[Path, str, TextIO]) -> None:
        """Write every differential as lines 'degree row col num/den'."""
        lines = []
        for d in sorted(self.differentials):
            for (r, c), value in sorted(self.differentials[d].items()):
                lines.append(f"{d} {r} {c} {value.numerator}/{value.denominator}")
        text = "\n".join(lines) + ("\n" if lines else "")
        if isinstance(target, (str, Path)):
            Path(target).write_text(text)
        else:
            target.write(text)


def direct_sum(components: Iterable[RationalChainComplex]) -> RationalChainComplex:
    """Block-diagonal sum, bases concatenated in the given order."""
    parts = list(components)
    top = max((c.top_degree for c in parts), default=-1)
    bases: List[List[Hashable]] = [[] for _ in range(top + 1)]
    differentials: Dict[int, SparseMatrix] = {d: {} for d in range(1, top + 1)}
    for part in parts:
        offsets = [len(bases[d]) for d in range(top + 1)]
        for d, basis in enumerate(part.bases):
            bases[d].extend(basis)
        for d, entries in part.differentials.items():
            for (r, c), value in entries.items():
                differentials[d][(r + offsets[d - 1], c + offsets[d])] = value
    return RationalChainComplex(
        bases, {d: entries for d, entries in differentials.items() if entries}
    )


def bareiss_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank of a dense integer matrix by fraction-free elimination."""
    m = [list(row) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    previous = 1
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        head = m[rank][col]
        for r in range(rank + 1, rows):
            row = m[r]
            factor = row[col]
            for c in range(col + 1, cols):
                row[c] = (row[c] * head - factor * m[rank][c]) // previous
            row[col] = 0
        previous = head
        rank += 1
        if rank == rows:
            break
    return rank


def matrix_rank(entries: SparseMatrix) -> int:
    """
    Exact rank of a sparse rational matrix.

    Rows and columns are split into the connected blocks of the bipartite
    support graph; each block is scaled to integers and eliminated densely.
    """
    if not entries:
        return 0
    support = nx.Graph()
    support.add_edges_from((("r", r), ("c", c)) for r, c in entries)
    blocks = [sorted(nodes) for nodes in nx.connected_components(support)]
    block_of_row = {}
    dense_blocks = []
    for b, nodes in enumerate(blocks):
        rows = [i for kind, i in nodes if kind == "r"]
        cols = [i for kind, i in nodes if kind == "c"]
        for i, r in enumerate(rows):
            block_of_row[r] = (b, i)
        col_index = {c: j for j, c in enumerate(cols)}
        dense_blocks.append(([[Fraction(0)] * len(cols) for _ in rows], col_index))
    for (r, c), value in entries.items():
        b, i = block_of_row[r]
        dense, col_index = dense_blocks[b]
        dense[i][col_index[c]] = value

    total = 0
    for dense, _ in dense_blocks:
        integer_rows = []
        for row in dense:
            scale = lcm(*(value.denominator for value in row))
            integer_rows.append([int(value * scale) for value in row])
        total += bareiss_rank(integer_rows)
    return total


def homology_ranks(c: RationalChainComplex) -> List[int]:
    """
    Betti numbers b_d = dim C_d - rank ∂_d - rank ∂_{d+1}.

    Raises:
        ChainComplexError: If c is not a complex
    """
    c.check()
    ranks = [0] * (len(c.bases) + 1)
    for d in range(1, len(c.bases)):
        ranks[d] = matrix_rank(c.matrix(d))
    betti = [c.dimension(d) - ranks[d] - ranks[d + 1] for d in range(len(c.bases))]
    logger.debug(f"dims {c.dimensions()} ranks {ranks[1:-1]} betti {betti}")
    return betti
