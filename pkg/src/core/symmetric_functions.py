"""
Truncated symmetric functions over the rationals and Young generating functions.

A SymPolynomial is a finite sum of terms c · z^k · b_λ where b is the
monomial basis m or the power-sum basis p. Truncation order N keeps terms
with k + |λ| ≤ N. Products are taken in the p-basis, where
p_λ · p_μ = p_(λ ∪ μ); basis changes use
    p_μ = Σ_λ L_μλ m_λ,
with L_μλ the number of ways to drop the parts of μ into rows of sizes λ.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions as sympy_partitions

from .config import check_budget
from .errors import SymmetricFunctionError
from .graph_core import Graph, chromatic_polynomial, complete_multipartite
from .graphic_functions import GraphicFunction

logger = logging.getLogger(__name__)

BASES = ("m", "p")


@dataclass(frozen=True, order=True)
class IntegerPartition:
    """Weakly decreasing positive parts; ordering is lexicographic on parts."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise SymmetricFunctionError(f"Parts must be positive: {self.parts}")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @classmethod
    def of(cls, *parts: int) -> "IntegerPartition":
        return cls(tuple(parts))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def factorial(self) -> int:
        """λ! = Π λ_i!."""
        result = 1
        for p in self.parts:
            result *= factorial(p)
        return result

    @property
    def sign(self) -> int:
        """ε_λ = (-1)^(|λ| - l(λ))."""
        return -1 if (self.weight - self.length) % 2 else 1

    @property
    def multiplicities(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for p in self.parts:
            counts[p] = counts.get(p, 0) + 1
        return counts

    @property
    def multinomial(self) -> int:
        """l(λ)! / Π m_i(λ)!."""
        result = factorial(self.length)
        for m in self.multiplicities.values():
            result //= factorial(m)
        return result

    def union(self, other: "IntegerPartition") -> "IntegerPartition":
        return IntegerPartition(self.parts + other.parts)

    def dominates(self, other: "IntegerPartition") -> bool:
        """True iff the partial sums of self are ≥ those of other (equal weights)."""
        if self.weight != other.weight:
            return False
        mine = theirs = 0
        for i in range(max(self.length, other.length)):
            mine += self.parts[i] if i < self.length else 0
            theirs += other.parts[i] if i < other.length else 0
            if mine < theirs:
                return False
        return True

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


EMPTY = IntegerPartition(())


@lru_cache(maxsize=None)
def partitions_of(n: int) -> Tuple[IntegerPartition, ...]:
    """All partitions of n in increasing lexicographic order."""
    if n < 0:
        return ()
    if n == 0:
        return (EMPTY,)
    found = []
    for multiplicity in sympy_partitions(n):
        parts: List[int] = []
        for part, count in multiplicity.items():
            parts.extend([part] * count)
        found.append(IntegerPartition(tuple(parts)))
    return tuple(sorted(found))


@lru_cache(maxsize=None)
def _count_fillings(parts: Tuple[int, ...], capacities: Tuple[int, ...]) -> int:
    if not parts:
        return 1 if not any(capacities) else 0
    first, rest = parts[0], parts[1:]
    total = 0
    for j, cap in enumerate(capacities):
        if cap >= first:
            total += _count_fillings(rest, capacities[:j] + (cap - first,) + capacities[j + 1 :])
    return total


def transition_L(mu: IntegerPartition, lam: IntegerPartition) -> int:
    """
    L_μλ: matrices with one nonzero entry per column, column sums μ and row
    sums λ.

    Raises:
        SymmetricFunctionError: If |μ| ≠ |λ|
    """
    if mu.weight != lam.weight:
        raise SymmetricFunctionError(
            f"transition_L needs equal weights, got {mu} and {lam}"
        )
    return _count_fillings(mu.parts, lam.parts)


Term = Tuple[int, IntegerPartition]


class SymPolynomial:
    """
    Truncated symmetric function with an extra formal variable z.

    Args:
        basis: "m" or "p"
        terms: (z-degree, λ) -> coefficient
        order: Truncation order N; terms with z-degree + |λ| > N are dropped
    """

    def __init__(self, basis: str, terms: Mapping[Term, Fraction], order: int):
        if basis not in BASES:
            raise SymmetricFunctionError(f"Unknown basis {basis}, expected m or p")
        self.basis = basis
        self.order = order
        self.terms: Dict[Term, Fraction] = {
            (k, lam): Fraction(c)
            for (k, lam), c in terms.items()
            if c != 0 and k + lam.weight <= order
        }

    @classmethod
    def zero(cls, order: int, basis: str = "p") -> "SymPolynomial":
        return cls(basis, {}, order)

    @classmethod
    def one(cls, order: int, basis: str = "p") -> "SymPolynomial":
        return cls(basis, {(0, EMPTY): Fraction(1)}, order)

    @classmethod
    def z(cls, order: int, power: int = 1) -> "SymPolynomial":
        return cls("p", {(power, EMPTY): Fraction(1)}, order)

    @classmethod
    def power_sum(cls, n: int, order: int) -> "SymPolynomial":
        return cls("p", {(0, IntegerPartition((n,))): Fraction(1)}, order)

    @classmethod
    def monomial(cls, parts: Sequence[int], order: int) -> "SymPolynomial":
        return cls("m", {(0, IntegerPartition(tuple(parts))): Fraction(1)}, order)

    def coefficient(self, z_degree: int, parts: Sequence[int] = ()) -> Fraction:
        return self.terms.get((z_degree, IntegerPartition(tuple(parts))), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0, EMPTY), Fraction(0))

    def items(self) -> List[Tuple[int, IntegerPartition, Fraction]]:
        """Terms sorted by total weight, then z-degree, then partition."""
        rows = [(k, lam, c) for (k, lam), c in self.terms.items()]
        rows.sort(key=lambda row: (row[0] + row[1].weight, row[0], row[1]))
        return rows

    def to_m(self) -> "SymPolynomial":
        """p-basis to m-basis via L."""
        if self.basis == "m":
            return self
        result: Dict[Term, Fraction] = {}
        for (k, mu), c in self.terms.items():
            for lam in partitions_of(mu.weight):
                entry = transition_L(mu, lam)
                if entry:
                    key = (k, lam)
                    result[key] = result.get(key, Fraction(0)) + c * entry
        return SymPolynomial("m", result, self.order)

    def to_p(self) -> "SymPolynomial":
        """m-basis to p-basis by solving the triangular system weight by weight."""
        if self.basis == "p":
            return self
        grouped: Dict[Tuple[int, int], Dict[IntegerPartition, Fraction]] = {}
        for (k, lam), c in self.terms.items():
            grouped.setdefault((k, lam.weight), {})[lam] = c
        result: Dict[Term, Fraction] = {}
        for (k, weight), targets in grouped.items():
            solved: Dict[IntegerPartition, Fraction] = {}
            for lam in partitions_of(weight):
                residual = targets.get(lam, Fraction(0))
                for mu, c_mu in solved.items():
                    residual -= c_mu * transition_L(mu, lam)
                if residual:
                    solved[lam] = residual / transition_L(lam, lam)
            for lam, c in solved.items():
                result[(k, lam)] = c
        return SymPolynomial("p", result, self.order)

    def in_basis(self, basis: str) -> "SymPolynomial":
        return self.to_m() if basis == "m" else self.to_p()

    def _combine(self, other: "SymPolynomial", sign: int) -> "SymPolynomial":
        order = min(self.order, other.order)
        right = other.in_basis(self.basis)
        result = dict(self.terms)
        for key, c in right.terms.items():
            result[key] = result.get(key, Fraction(0)) + sign * c
        return SymPolynomial(self.basis, result, order)

    def __add__(self, other: "SymPolynomial") -> "SymPolynomial":
        return self._combine(other, 1)

    def __sub__(self, other: "SymPolynomial") -> "SymPolynomial":
        return self._combine(other, -1)

    def __neg__(self) -> "SymPolynomial":
        return self.scale(-1)

    def scale(self, factor) -> "SymPolynomial":
        factor = Fraction(factor)
        return SymPolynomial(
            self.basis, {key: c * factor for key, c in self.terms.items()}, self.order
        )

    def __mul__(self, other: "SymPolynomial") -> "SymPolynomial":
        order = min(self.order, other.order)
        left, right = self.to_p(), other.to_p()
        result: Dict[Term, Fraction] = {}
        for (k1, lam), c1 in left.terms.items():
            for (k2, mu), c2 in right.terms.items():
                k = k1 + k2
                if k + lam.weight + mu.weight > order:
                    continue
                key = (k, lam.union(mu))
                result[key] = result.get(key, Fraction(0)) + c1 * c2
        product = SymPolynomial("p", result, order)
        return product if self.basis == "p" else product.to_m()

    def power(self, exponent: int) -> "SymPolynomial":
        result = SymPolynomial.one(self.order, self.basis)
        for _ in range(exponent):
            result = result * self
        return result

    def negate_alphabet(self) -> "SymPolynomial":
        """x ↦ -x and z ↦ -z: p_n ↦ (-1)^n p_n, m_λ ↦ (-1)^|λ| m_λ."""
        return SymPolynomial(
            self.basis,
            {
                (k, lam): (c if (k + lam.weight) % 2 == 0 else -c)
                for (k, lam), c in self.terms.items()
            },
            self.order,
        )

    def substitute_z(self, inner: "SymPolynomial") -> "SymPolynomial":
        """
        Replace z by inner, keeping the power sums fixed.

        Raises:
            SymmetricFunctionError: If inner has a nonzero constant term
        """
        if inner.constant_term() != 0:
            raise SymmetricFunctionError("Substituted series must have zero constant term")
        order = min(self.order, inner.order)
        outer = self.to_p()
        top = max((k for k, _ in outer.terms), default=0)
        powers = [SymPolynomial.one(order)]
        for _ in range(top):
            powers.append(powers[-1] * inner)
        result = SymPolynomial.zero(order)
        for (k, lam), c in outer.terms.items():
            coefficient = SymPolynomial("p", {(0, lam): c}, order)
            result = result + coefficient * powers[k]
        return result if self.basis == "p" else result.to_m()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymPolynomial):
            return NotImplemented
        order = min(self.order, other.order)
        mine = SymPolynomial("m", self.to_m().terms, order)
        theirs = SymPolynomial("m", other.to_m().terms, order)
        return mine.terms == theirs.terms

    def __repr__(self) -> str:
        shown = " + ".join(
            f"{c}*z^{k}*{self.basis}{lam}" for k, lam, c in self.items()[:8]
        )
        return f"SymPolynomial({self.basis}, N={self.order}: {shown or '0'})"


def multipartite_graph(k: int, lam: IntegerPartition) -> Graph:
    """K_{(1^k) ∪ λ}."""
    return complete_multipartite(lam.union(IntegerPartition((1,) * k)).parts)


def young_generating(f: GraphicFunction, order: int) -> SymPolynomial:
    """
    F_Y(f): coefficient f(K_{(1^n) ∪ λ}) / (n! λ!) on z^n m_λ, over n ≥ 1 and
    all λ, plus n = 0 with l(λ) ≥ 2, truncated at z-degree + |λ| ≤ order.

    Raises:
        BudgetExceededError: If order exceeds the Young budget
    """
    check_budget("young_weight", order, "young_generating")
    terms: Dict[Term, Fraction] = {}
    for total in range(order + 1):
        for n in range(total + 1):
            for lam in partitions_of(total - n):
                if n == 0 and lam.length < 2:
                    continue
                value = f(multipartite_graph(n, lam))
                if value:
                    terms[(n, lam)] = value / (factorial(n) * lam.factorial)
    return SymPolynomial("m", terms, order)


def _alternating_argument(order: int) -> SymPolynomial:
    """z + Σ_{n≥1} (-1)^(n-1) p_n."""
    terms: Dict[Term, Fraction] = {(1, EMPTY): Fraction(1)}
    for n in range(1, order + 1):
        terms[(0, IntegerPartition((n,)))] = Fraction(1 if n % 2 else -1)
    return SymPolynomial("p", terms, order)


def _geometric(x: SymPolynomial) -> SymPolynomial:
    """1/(1 - x) for x with zero constant term."""
    result = SymPolynomial.one(x.order)
    power = SymPolynomial.one(x.order)
    for _ in range(x.order):
        power = power * x
        result = result + power
    return result


def _log_inverse(x: SymPolynomial) -> SymPolynomial:
    """-log(1 - x) = Σ x^k / k for x with zero constant term."""
    result = SymPolynomial.zero(x.order)
    power = SymPolynomial.one(x.order)
    for k in range(1, x.order + 1):
        power = power * x
        result = result + power.scale(Fraction(1, k))
    return result


def _power_sum_series(order: int, weight) -> SymPolynomial:
    """Σ_{n=1}^{order} weight(n) p_n."""
    return SymPolynomial(
        "p",
        {(0, IntegerPartition((n,))): Fraction(weight(n)) for n in range(1, order + 1)},
        order,
    )


def hp_series_closed(order: int) -> SymPolynomial:
    """1 / (1 - (z + Σ (-1)^(n-1) p_n)) to total weight order."""
    check_budget("young_weight", order, "hp_series_closed")
    return _geometric(_alternating_argument(order))


def hc_series_closed(order: int) -> SymPolynomial:
    """-log(1 - (z + Σ (-1)^(n-1) p_n)) + Σ (-1)^n p_n / n."""
    check_budget("young_weight", order, "hc_series_closed")
    tail = _power_sum_series(order, lambda n: Fraction(1 if n % 2 == 0 else -1, n))
    return _log_inverse(_alternating_argument(order)) + tail


def p_series_closed(order: int) -> SymPolynomial:
    """F_Y(P) = 1/(1 - (z + p_1)) - (1 + Σ p_n)."""
    check_budget("young_weight", order, "p_series_closed")
    x = SymPolynomial.z(order) + SymPolynomial.power_sum(1, order)
    return _geometric(x) - SymPolynomial.one(order) - _power_sum_series(order, lambda n: 1)


def c_series_closed(order: int) -> SymPolynomial:
    """F_Y(C) = -log(1 - (p_1 + z)) - Σ p_n / n."""
    check_budget("young_weight", order, "c_series_closed")
    x = SymPolynomial.z(order) + SymPolynomial.power_sum(1, order)
    return _log_inverse(x) - _power_sum_series(order, lambda n: Fraction(1, n))


def hp_multipartite(k: int, lam: IntegerPartition) -> int:
    """
    HP(K_{(1^k) ∪ λ}) by the closed multipartite formula.

    Raises:
        BudgetExceededError: If k + |λ| exceeds the multipartite budget
    """
    return _multipartite_formula(k, lam, cyclic=False)


def hc_multipartite(k: int, lam: IntegerPartition) -> int:
    """
    HC(K_{(1^k) ∪ λ}) by the closed multipartite formula.

    Raises:
        SymmetricFunctionError: If k + l(λ) < 2
        BudgetExceededError: If k + |λ| exceeds the multipartite budget
    """
    if k + lam.length < 2:
        raise SymmetricFunctionError(f"hc_multipartite needs k + l(λ) ≥ 2, got k={k}, λ={lam}")
    return _multipartite_formula(k, lam, cyclic=True)


def _multipartite_formula(k: int, lam: IntegerPartition, cyclic: bool) -> int:
    check_budget("multipartite_vertices", k + lam.weight, "multipartite formula")
    total = Fraction(0)
    for mu in partitions_of(lam.weight):
        entry = transition_L(mu, lam)
        if not entry:
            continue
        term = Fraction(mu.sign * mu.multinomial * comb(mu.length + k, mu.length) * entry)
        if cyclic:
            term /= k + mu.length
        total += term
    value = factorial(k) * lam.factorial * total
    if value.denominator != 1:
        raise SymmetricFunctionError(f"Non-integral multipartite value {value}")
    return int(value)


def chromatic_generating_series(q: int, order: int) -> Tuple[SymPolynomial, SymPolynomial]:
    """
    Both sides of Σ_λ χ_{K_λ}(q) m_λ / λ! = (1 + Σ p_n / n!)^q.

    Raises:
        BudgetExceededError: If q or order exceed their budgets
    """
    check_budget("chromatic_check_q", q, "chromatic generating check q")
    check_budget("chromatic_check_weight", order, "chromatic generating check weight")
    lhs_terms: Dict[Term, Fraction] = {}
    for weight in range(order + 1):
        for lam in partitions_of(weight):
            value = chromatic_polynomial(complete_multipartite(lam.parts)).evaluate(q)
            lhs_terms[(0, lam)] = Fraction(value, lam.factorial)
    lhs = SymPolynomial("m", lhs_terms, order)
    base = SymPolynomial.one(order) + _power_sum_series(
        order, lambda n: Fraction(1, factorial(n))
    )
    return lhs, base.power(q)


def chromatic_generating_check(q: int, order: int) -> bool:
    """True iff both sides of the chromatic generating identity agree to order."""
    lhs, rhs = chromatic_generating_series(q, order)
    return lhs == rhs


def rows_for_output(series: SymPolynomial) -> List[Dict[str, object]]:
    """JSON-friendly rows (n, λ, numerator, denominator)."""
    return [
        {
            "n": k,
            "lambda": list(lam.parts),
            "numerator": c.numerator,
            "denominator": c.denominator,
        }
        for k, lam, c in series.items()
    ]


def series_difference(left: SymPolynomial, right: SymPolynomial) -> Optional[Term]:
    """First (z-degree, λ) where the m-coefficients differ, or None."""
    order = min(left.order, right.order)
    diff = SymPolynomial("m", (left - right).to_m().terms, order)
    rows = diff.items()
    return (rows[0][0], rows[0][1]) if rows else None
