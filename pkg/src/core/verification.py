"""
ABOUTME: Exhaustive and sampled verification sweeps over labeled connected graphs.
ABOUTME: Identity registry for graphic functions, Koszulity sweeps and series-level checks.
"""

import logging
import operator
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .config import active_budgets, budget, override_budgets
from .constants import FormatConstants
from .graph_core import (
    Graph,
    complement,
    cycle,
    edge_list_of,
    enumerate_connected_graphs,
    path,
    sample_connected_graphs,
)
from .graphic_functions import GraphicFunction, builtin, omega, star
from .hamiltonian import acyclic_orientation_count, ham_cycle_count, ham_path_count
from .koszul_homology import KoszulCheck, check_koszul
from .planeq import (
    avoider_set,
    avoiders,
    b_c_patterns,
    is_separable,
    planeq_count,
    planeq_tuples,
    separable_patterns,
    tuple_to_pattern,
)
from .series_lab import (
    RationalSeries,
    complement_cycles_series,
    complement_paths_series,
    compose,
    cycle_star_series,
    cyclic_hertzsprung_numbers,
    fc_pe_closed,
    hertzsprung_numbers,
    ogf_cycle,
    ogf_path,
    schroder_series,
)
from .symmetric_functions import (
    SymPolynomial,
    c_series_closed,
    chromatic_generating_series,
    hc_series_closed,
    hp_series_closed,
    p_series_closed,
    series_difference,
    young_generating,
)

logger = logging.getLogger(__name__)

Relation = Callable[[Fraction, Fraction], bool]

_RELATION_SYMBOLS = {operator.eq: "=", operator.le: "<=", operator.lt: "<"}


def _always(g: Graph) -> bool:
    return True


@dataclass(frozen=True)
class Equation:
    """One checkable relation lhs(g) <relation> rhs(g) on the graphs it applies to."""

    lhs: GraphicFunction
    rhs: GraphicFunction
    relation: Relation = operator.eq
    applies: Callable[[Graph], bool] = _always

    @property
    def label(self) -> str:
        return f"{self.lhs.name} {_RELATION_SYMBOLS[self.relation]} {self.rhs.name}"


@dataclass
class IdentityCheck:
    """Outcome of one equation on one graph."""

    identity: str
    equation: str
    graph: Graph
    lhs: Fraction
    rhs: Fraction
    passed: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "identity": self.identity,
            "equation": self.equation,
            "n": self.graph.n,
            "edges": edge_list_of(self.graph),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "passed": self.passed,
        }


@dataclass
class SeriesCheck:
    """Outcome of one series-level identity."""

    name: str
    passed: bool
    detail: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {"name": self.name, "passed": self.passed, **self.detail}


_registry: Dict[str, List[Equation]] = {}


def _build_registry() -> Dict[str, List[Equation]]:
    hp, hc, pe, ce = builtin("HP"), builtin("HC"), builtin("PE"), builtin("CE")
    perm, cyc = builtin("P"), builtin("C")
    hp_bar, hc_bar, eps = builtin("HP_bar"), builtin("HC_bar"), builtin("epsilon")
    acyclic = GraphicFunction("AO", lambda g: Fraction(acyclic_orientation_count(g)))

    def has_edge(g: Graph) -> bool:
        return g.edge_count >= 1

    def is_complete(g: Graph) -> bool:
        return g.is_complete()

    def not_complete(g: Graph) -> bool:
        return not g.is_complete()

    return {
        "hp-inverse": [
            Equation(star(omega(pe), hp), eps),
            Equation(star(omega(hp), pe), eps),
        ],
        "hc-inverse": [Equation(star(omega(ce), hp), hc)],
        "perm": [Equation(star(hp_bar, pe), perm)],
        "cycperm": [Equation(ce + star(hc_bar, pe), cyc)],
        "recurrences": [
            Equation(star(omega(perm), hp), omega(hp_bar)),
            Equation(star(omega(cyc), hp), hc + omega(hc_bar), applies=has_edge),
        ],
        "bounds": [
            Equation(hp, acyclic, operator.le),
            Equation(acyclic, pe, operator.le),
            Equation(hp, pe, operator.eq, applies=is_complete),
            Equation(hp, acyclic, operator.lt, applies=not_complete),
            Equation(acyclic, pe, operator.lt, applies=not_complete),
        ],
    }


IDENTITY_NAMES = ("hp-inverse", "hc-inverse", "perm", "cycperm", "recurrences", "bounds")
IDENTITY_ALIASES = {"theorem5": "recurrences"}


def resolve_identity(name: str) -> str:
    """Registry name for an identity name or alias."""
    return IDENTITY_ALIASES.get(name, name)


def identity_registry() -> Dict[str, List[Equation]]:
    """Named identities, built once per process."""
    if not _registry:
        _registry.update(_build_registry())
    return _registry


def check_identities(g: Graph, names: Optional[Sequence[str]] = None) -> List[IdentityCheck]:
    """
    Evaluate the selected identities on one connected graph.

    Raises:
        KeyError: If an identity name is unknown
    """
    registry = identity_registry()
    selected = [resolve_identity(name) for name in names] if names else list(IDENTITY_NAMES)
    results = []
    for name in selected:
        if name not in registry:
            raise KeyError(f"Unknown identity {name}; known: {', '.join(IDENTITY_NAMES)}")
        for equation in registry[name]:
            if not equation.applies(g):
                continue
            lhs, rhs = equation.lhs(g), equation.rhs(g)
            passed = equation.relation(lhs, rhs)
            if not passed:
                logger.warning(f"{name}: {equation.label} fails on {g}: {lhs} vs {rhs}")
            results.append(IdentityCheck(name, equation.label, g, lhs, rhs, passed))
    return results


def _init_worker(budgets: Mapping[str, int]) -> None:
    override_budgets(budgets)


def _check_identity_chunk(graphs: Sequence[Graph], names: Sequence[str]) -> List[IdentityCheck]:
    results: List[IdentityCheck] = []
    for g in graphs:
        results.extend(check_identities(g, names))
    return results


def _check_koszul_chunk(graphs: Sequence[Graph], module: str) -> List[KoszulCheck]:
    return [check_koszul(g, module) for g in graphs]


def _chunks(graphs: Sequence[Graph], size: int) -> List[Sequence[Graph]]:
    return [graphs[i : i + size] for i in range(0, len(graphs), size)]


def _run_chunks(worker, graphs: List[Graph], argument, jobs: int) -> list:
    """Run worker(chunk, argument) over graph chunks, in-process or in a pool."""
    if jobs <= 1 or len(graphs) < 2:
        return worker(graphs, argument)
    size = max(1, len(graphs) // (jobs * 8))
    results = []
    with ProcessPoolExecutor(
        max_workers=jobs, initializer=_init_worker, initargs=(active_budgets(),)
    ) as executor:
        futures = [executor.submit(worker, chunk, argument) for chunk in _chunks(graphs, size)]
        for future in futures:
            results.extend(future.result())
    return results


def sweep_graphs(
    max_n: int,
    min_n: int = 1,
    sample_n7: bool = False,
    seed: int = FormatConstants.DEFAULT_SEED,
    sample_size: int = FormatConstants.DEFAULT_SAMPLE_SIZE,
) -> List[Graph]:
    """
    Every labeled connected graph with min_n <= n <= max_n, optionally
    followed by a seeded sample of connected graphs on 7 vertices.
    """
    graphs: List[Graph] = []
    for n in range(min_n, max_n + 1):
        batch = list(enumerate_connected_graphs(n))
        logger.info(f"{len(batch)} labeled connected graphs on {n} vertices")
        graphs.extend(batch)
    if sample_n7:
        n = FormatConstants.SAMPLED_SWEEP_VERTICES
        batch = sample_connected_graphs(n, sample_size, seed)
        logger.info(f"Sampled {len(batch)} connected graphs on {n} vertices (seed {seed})")
        graphs.extend(batch)
    return graphs


def sweep_identities(
    max_n: int,
    names: Optional[Sequence[str]] = None,
    jobs: int = 1,
    sample_n7: bool = False,
    seed: int = FormatConstants.DEFAULT_SEED,
    sample_size: int = FormatConstants.DEFAULT_SAMPLE_SIZE,
) -> List[IdentityCheck]:
    """
    Check the selected identities on every connected graph up to max_n.

    Results are ordered by (n, graph key) whatever the worker order.
    """
    selected = tuple(resolve_identity(name) for name in names) if names else IDENTITY_NAMES
    unknown = [name for name in selected if name not in IDENTITY_NAMES]
    if unknown:
        raise KeyError(f"Unknown identity {unknown[0]}; known: {', '.join(IDENTITY_NAMES)}")
    start = time.time()
    graphs = sweep_graphs(max_n, sample_n7=sample_n7, seed=seed, sample_size=sample_size)
    results = _run_chunks(_check_identity_chunk, graphs, selected, jobs)
    results.sort(key=lambda check: check.graph.sort_key)
    failures = sum(1 for check in results if not check.passed)
    logger.info(
        f"Checked {len(results)} equations on {len(graphs)} graphs in "
        f"{time.time() - start:.1f}s, {failures} failures"
    )
    return results


def koszul_sweep(max_n: int, module: str, jobs: int = 1, min_n: int = 1) -> List[KoszulCheck]:
    """Koszulity check of one module on every connected graph with min_n <= n <= max_n."""
    if module not in ("ham", "cycham"):
        raise ValueError(f"Unknown module {module}, expected 'ham' or 'cycham'")
    start = time.time()
    graphs = sweep_graphs(max_n, min_n=min_n)
    results = _run_chunks(_check_koszul_chunk, graphs, module, jobs)
    results.sort(key=lambda check: check.graph.sort_key)
    logger.info(f"Koszul sweep ({module}) of {len(graphs)} graphs in {time.time() - start:.1f}s")
    return results


def _series_detail(left: RationalSeries, right: RationalSeries) -> Dict[str, object]:
    order = min(left.order, right.order)
    for n in range(order + 1):
        if left[n] != right[n]:
            return {"order": order, "first_mismatch": n, "lhs": str(left[n]), "rhs": str(right[n])}
    return {"order": order}


def _compare_series(name: str, left: RationalSeries, right: RationalSeries) -> SeriesCheck:
    return SeriesCheck(name, left == right, _series_detail(left, right))


def _compare_young(name: str, left: SymPolynomial, right: SymPolynomial) -> SeriesCheck:
    mismatch = series_difference(left, right)
    detail: Dict[str, object] = {"weight": min(left.order, right.order)}
    if mismatch is not None:
        detail["first_mismatch"] = {"z": mismatch[0], "lambda": list(mismatch[1].parts)}
    return SeriesCheck(name, mismatch is None, detail)


def _compare_values(name: str, values: Iterable[Tuple[int, int, int]]) -> SeriesCheck:
    """values: (n, computed, oracle) triples."""
    rows = list(values)
    bad = [(n, a, b) for n, a, b in rows if a != b]
    detail: Dict[str, object] = {"values": [a for _, a, _ in rows]}
    if bad:
        detail["first_mismatch"] = {"n": bad[0][0], "lhs": bad[0][1], "rhs": bad[0][2]}
    return SeriesCheck(name, not bad, detail)


def young_checks(weight: int) -> List[SeriesCheck]:
    """Young generating functions against their closed forms, ω and functoriality."""
    hp, hc = builtin("HP"), builtin("HC")
    perm, cyc = builtin("P"), builtin("C")
    y_hp = young_generating(hp, weight)
    y_hc = young_generating(hc, weight)
    unit = SymPolynomial.one(weight) + SymPolynomial.power_sum(1, weight)
    checks = [
        _compare_young("young-hp", y_hp + unit, hp_series_closed(weight)),
        _compare_young("young-hc", y_hc, hc_series_closed(weight)),
        _compare_young("young-p", young_generating(perm, weight), p_series_closed(weight)),
        _compare_young("young-c", young_generating(cyc, weight), c_series_closed(weight)),
        _compare_young(
            "functoriality-p",
            young_generating(omega(perm), weight).substitute_z(y_hp),
            SymPolynomial.z(weight),
        ),
        _compare_young(
            "functoriality-c",
            young_generating(omega(cyc), weight).substitute_z(y_hp),
            y_hc,
        ),
    ]
    for f in (perm, cyc, hp):
        checks.append(
            _compare_young(
                f"omega-{f.name.lower()}",
                young_generating(omega(f), weight),
                -young_generating(f, weight).negate_alphabet(),
            )
        )
    return checks


def chromatic_checks(weight: int, qs: Sequence[int] = (0, 1, 2, 3)) -> List[SeriesCheck]:
    checks = []
    for q in qs:
        lhs, rhs = chromatic_generating_series(q, weight)
        checks.append(_compare_young(f"chromatic-q{q}", lhs, rhs))
    return checks


def hertzsprung_checks(order: int) -> List[SeriesCheck]:
    """Hertzsprung numbers against Hamiltonian counts on complements of paths and cycles."""
    numbers = hertzsprung_numbers(order)
    cyclic = cyclic_hertzsprung_numbers(order)
    return [
        _compare_values(
            "hertzsprung",
            ((n, numbers[n - 1], ham_path_count(complement(path(n)))) for n in range(1, order + 1)),
        ),
        _compare_values(
            "cyclic-hertzsprung",
            (
                (n, cyclic[n - 1], ham_cycle_count(complement(cycle(n))))
                for n in range(5, order + 1)
            ),
        ),
    ]


def path_series_checks(order: int) -> List[SeriesCheck]:
    """Functional equations of path and cycle generating functions."""
    hp, hc, pe, ce = builtin("HP"), builtin("HC"), builtin("PE"), builtin("CE")
    t = RationalSeries.monomial(1, order)
    star_order = min(order, budget("star_vertices"))
    omega_hp_path = ogf_path(omega(hp), order)
    return [
        _compare_series("schroder", schroder_series(order), ogf_path(pe, order)),
        _compare_series("path-inverse-hp", compose(omega_hp_path, ogf_path(pe, order)), t),
        _compare_series(
            "path-inverse-pe", compose(ogf_path(omega(pe), order), ogf_path(hp, order)), t
        ),
        _compare_series("cycle-pe", fc_pe_closed(order), ogf_cycle(pe, order)),
        _compare_series(
            "complement-paths",
            complement_paths_series(omega_hp_path),
            ogf_path(builtin("HP_bar"), order),
        ),
        _compare_series(
            "complement-cycles",
            complement_cycles_series(
                omega_hp_path, ogf_cycle(omega(hp), order), ogf_cycle(omega(hc), order)
            ),
            ogf_cycle(builtin("HC_bar"), order),
        ),
        _compare_series(
            "cycle-star-pe",
            cycle_star_series(omega(pe), hp, star_order),
            ogf_cycle(star(omega(pe), hp), star_order),
        ),
        _compare_series(
            "cycle-star-ce",
            cycle_star_series(omega(ce), hp, star_order),
            ogf_cycle(star(omega(ce), hp), star_order),
        ),
    ]


def avoider_checks(max_n: int) -> List[SeriesCheck]:
    """Separable permutations and the cycle patterns against PlanEq of paths and cycles."""
    b_p, b_c = separable_patterns(), b_c_patterns()
    cycle_sets = []
    for n in range(1, max_n + 1):
        planeq_patterns = {tuple_to_pattern(sigma) for sigma in planeq_tuples(cycle(n))}
        cycle_sets.append((n, int(avoider_set(n, b_c) == planeq_patterns), 1))
    separable_counts = []
    for n in range(1, max_n + 1):
        filtered = sum(
            1 for sigma in planeq_tuples(path(n)) if is_separable(tuple_to_pattern(sigma))
        )
        separable_counts.append((n, avoiders(n, b_p), planeq_count(path(n))))
        separable_counts.append((n, filtered, planeq_count(path(n))))
    return [
        _compare_values("separable-avoiders", separable_counts),
        _compare_values("cycle-avoiders", cycle_sets),
        _compare_values(
            "cycle-avoider-count",
            ((n, avoiders(n, b_c), n * avoiders(n - 1, b_p)) for n in range(2, max_n + 1)),
        ),
    ]


def series_checks(
    order: int = 8, weight: int = 5, avoider_n: int = 7
) -> List[SeriesCheck]:
    """
    All series-level identities, one result per identity.

    Args:
        order: Truncation order of path/cycle series and the Hertzsprung oracles
        weight: Total weight for Young series and the chromatic identity
        avoider_n: Largest length for the avoider relations
    """
    start = time.time()
    checks = (
        young_checks(weight)
        + chromatic_checks(weight)
        + hertzsprung_checks(order)
        + path_series_checks(order)
        + avoider_checks(avoider_n)
    )
    failures = [check.name for check in checks if not check.passed]
    for name in failures:
        logger.warning(f"Series check {name} failed")
    logger.info(f"{len(checks)} series checks in {time.time() - start:.1f}s")
    return checks
