"""
ABOUTME: Truncated univariate power series with exact rational coefficients.
ABOUTME: Path/cycle generating functions, Hertzsprung series and the Schröder series.

F_P(f)(t) = Σ f(P_n) t^n and F_C(f)(t) = Σ f(C_n) t^n / n, with the family
convention C_1 = P_1 and C_2 = P_2.
"""

import logging
from fractions import Fraction
from math import factorial
from typing import Iterable, List, Optional, Sequence, Tuple

from .config import check_budget
from .errors import SeriesError
from .graph_core import cycle, path
from .graphic_functions import GraphicFunction

logger = logging.getLogger(__name__)


class RationalSeries:
    """
    Power series truncated at t^order.

    Args:
        coefficients: c_0, c_1, ...; padded with zeros or cut to order + 1
        order: Truncation order N
    """

    def __init__(self, coefficients: Iterable, order: int):
        if order < 0:
            raise SeriesError(f"Truncation order must be non-negative, got {order}")
        coeffs = [Fraction(c) for c in coefficients][: order + 1]
        coeffs.extend([Fraction(0)] * (order + 1 - len(coeffs)))
        self.order = order
        self._coefficients: Tuple[Fraction, ...] = tuple(coeffs)

    @classmethod
    def from_coefficients(cls, coefficients: Sequence, order: Optional[int] = None) -> "RationalSeries":
        return cls(coefficients, len(coefficients) - 1 if order is None else order)

    @classmethod
    def monomial(cls, power: int, order: int, coefficient=1) -> "RationalSeries":
        coeffs = [Fraction(0)] * (order + 1)
        if power <= order:
            coeffs[power] = Fraction(coefficient)
        return cls(coeffs, order)

    @classmethod
    def zero(cls, order: int) -> "RationalSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "RationalSeries":
        return cls.monomial(0, order)

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coefficients

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n <= self.order:
            raise SeriesError(f"Coefficient t^{n} is beyond truncation order {self.order}")
        return self._coefficients[n]

    def _aligned(self, other: "RationalSeries") -> Tuple[int, Sequence[Fraction], Sequence[Fraction]]:
        order = min(self.order, other.order)
        return order, self._coefficients[: order + 1], other._coefficients[: order + 1]

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        order, a, b = self._aligned(other)
        return RationalSeries((x + y for x, y in zip(a, b)), order)

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        order, a, b = self._aligned(other)
        return RationalSeries((x - y for x, y in zip(a, b)), order)

    def __neg__(self) -> "RationalSeries":
        return self.scale(-1)

    def scale(self, factor) -> "RationalSeries":
        factor = Fraction(factor)
        return RationalSeries((c * factor for c in self._coefficients), self.order)

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        order, a, b = self._aligned(other)
        product = [Fraction(0)] * (order + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(order + 1 - i):
                    if b[j]:
                        product[i + j] += x * b[j]
        return RationalSeries(product, order)

    def reciprocal(self) -> "RationalSeries":
        """
        1/f.

        Raises:
            SeriesError: If the constant term is zero
        """
        a = self._coefficients
        if a[0] == 0:
            raise SeriesError("Cannot invert a series with zero constant term")
        inverse = [Fraction(0)] * (self.order + 1)
        inverse[0] = 1 / a[0]
        for n in range(1, self.order + 1):
            acc = sum((a[k] * inverse[n - k] for k in range(1, n + 1)), Fraction(0))
            inverse[n] = -acc / a[0]
        return RationalSeries(inverse, self.order)

    def compose(self, inner: "RationalSeries") -> "RationalSeries":
        """self(inner(t)) by Horner's rule; inner must have zero constant term."""
        return compose(self, inner)

    def derivative(self) -> "RationalSeries":
        a = self._coefficients
        return RationalSeries((n * a[n] for n in range(1, self.order + 1)), self.order - 1 if self.order else 0)

    def integral(self) -> "RationalSeries":
        a = self._coefficients
        return RationalSeries(
            [Fraction(0)] + [a[n] / (n + 1) for n in range(self.order)], self.order
        )

    def sqrt(self) -> "RationalSeries":
        """
        Square root by Newton iteration g <- (g + f/g) / 2.

        Raises:
            SeriesError: If the constant term is not 1
        """
        if self._coefficients[0] != 1:
            raise SeriesError("sqrt needs constant term 1")
        root = RationalSeries.one(self.order)
        precision = 1
        while precision <= self.order:
            precision = min(2 * precision, self.order + 1)
            target = RationalSeries(self._coefficients, precision - 1)
            current = RationalSeries(root.coefficients, precision - 1)
            root = (current + target * current.reciprocal()).scale(Fraction(1, 2))
            if precision == self.order + 1:
                break
        return RationalSeries(root.coefficients, self.order)

    def log(self) -> "RationalSeries":
        """
        log f = ∫ f'/f.

        Raises:
            SeriesError: If the constant term is not 1
        """
        if self._coefficients[0] != 1:
            raise SeriesError("log needs constant term 1")
        if self.order == 0:
            return RationalSeries.zero(0)
        quotient = self.derivative() * RationalSeries(self._coefficients, self.order - 1).reciprocal()
        q = quotient.coefficients
        return RationalSeries([0] + [q[n] / (n + 1) for n in range(self.order)], self.order)

    def truncate(self, order: int) -> "RationalSeries":
        return RationalSeries(self._coefficients, min(order, self.order))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalSeries):
            return NotImplemented
        _, a, b = self._aligned(other)
        return tuple(a) == tuple(b)

    def __repr__(self) -> str:
        terms = [f"{c}*t^{n}" for n, c in enumerate(self._coefficients) if c]
        return f"RationalSeries({' + '.join(terms) or '0'}, N={self.order})"


def compose(outer: RationalSeries, inner: RationalSeries) -> RationalSeries:
    """
    outer(inner(t)), truncated at the smaller order.

    Raises:
        SeriesError: If inner has a nonzero constant term
    """
    if inner[0] != 0:
        raise SeriesError("Composition needs an inner series with zero constant term")
    order = min(outer.order, inner.order)
    result = RationalSeries.monomial(0, order, outer[order])
    inner = inner.truncate(order)
    for k in range(order - 1, -1, -1):
        result = result * inner + RationalSeries.monomial(0, order, outer[k])
    return result


def ogf_path(f: GraphicFunction, order: int) -> RationalSeries:
    """F_P(f) = Σ_{n≥1} f(P_n) t^n."""
    check_budget("series_order", order, "ogf_path")
    return RationalSeries([0] + [f(path(n)) for n in range(1, order + 1)], order)


def ogf_cycle(f: GraphicFunction, order: int) -> RationalSeries:
    """F_C(f) = Σ_{n≥1} f(C_n) t^n / n."""
    check_budget("series_order", order, "ogf_cycle")
    return RationalSeries([0] + [f(cycle(n)) / n for n in range(1, order + 1)], order)


def factorial_series(order: int) -> RationalSeries:
    """F_P(P) = Σ_{n≥1} n! t^n."""
    return RationalSeries([0] + [factorial(n) for n in range(1, order + 1)], order)


def cycle_factorial_series(order: int) -> RationalSeries:
    """F_C(C) = Σ_{n≥1} (n-1)! t^n / n."""
    return RationalSeries(
        [0] + [Fraction(factorial(n - 1), n) for n in range(1, order + 1)], order
    )


def alternating_path_series(order: int) -> RationalSeries:
    """(t - t^2) / (1 + t) = t - 2t^2 + 2t^3 - ..."""
    numerator = RationalSeries([0, 1, -1], order)
    return numerator * RationalSeries([1, 1], order).reciprocal()


def hertzsprung(order: int) -> RationalSeries:
    """
    Σ H_n t^n = Σ n! ((t - t^2) / (1 + t))^n.

    Raises:
        BudgetExceededError: If order exceeds the Hertzsprung budget
    """
    check_budget("hertzsprung_order", order, "hertzsprung")
    return compose(factorial_series(order), alternating_path_series(order))


def hertzsprung_numbers(order: int) -> List[int]:
    """H_1..H_order."""
    series = hertzsprung(order)
    return [int(series[n]) for n in range(1, order + 1)]


def cyclic_hertzsprung(order: int) -> RationalSeries:
    """
    Σ CH_n t^n / n = 3t^2/2 + Σ (n-1)!/n u^n + Σ_{n≥3} (-1)^n 2 t^n / n,
    with u = (t - t^2) / (1 + t).

    Raises:
        BudgetExceededError: If order exceeds the Hertzsprung budget
    """
    check_budget("hertzsprung_order", order, "cyclic_hertzsprung")
    correction = RationalSeries.monomial(2, order, Fraction(3, 2))
    tail = RationalSeries(
        [0, 0, 0] + [Fraction(2 if n % 2 == 0 else -2, n) for n in range(3, order + 1)],
        order,
    )
    return correction + compose(cycle_factorial_series(order), alternating_path_series(order)) + tail


def cyclic_hertzsprung_numbers(order: int) -> List[int]:
    """CH_1..CH_order (n times the coefficient of t^n)."""
    series = cyclic_hertzsprung(order)
    values = [n * series[n] for n in range(1, order + 1)]
    if any(v.denominator != 1 for v in values):
        raise SeriesError(f"Non-integral cyclic Hertzsprung numbers: {values}")
    return [int(v) for v in values]


def _schroder_radical(order: int) -> RationalSeries:
    """sqrt(1 - 6t + t^2)."""
    return RationalSeries([1, -6, 1], order).sqrt()


def schroder_series(order: int) -> RationalSeries:
    """
    (1 - t - sqrt(t^2 - 6t + 1)) / 2: the little Schröder numbers.

    Raises:
        BudgetExceededError: If order exceeds the series budget
    """
    check_budget("series_order", order, "schroder_series")
    return (RationalSeries([1, -1], order) - _schroder_radical(order)).scale(Fraction(1, 2))


def fc_pe_closed(order: int) -> RationalSeries:
    """F_C(PE) = (3t - t^2 - t·sqrt(t^2 - 6t + 1)) / 2."""
    check_budget("series_order", order, "fc_pe_closed")
    t = RationalSeries.monomial(1, order)
    return (RationalSeries([0, 3, -1], order) - t * _schroder_radical(order)).scale(
        Fraction(1, 2)
    )


def complement_paths_series(omega_hp: RationalSeries) -> RationalSeries:
    """F_P(HP̄) = F_P(P)(F_P(ω(HP)))."""
    return compose(factorial_series(omega_hp.order), omega_hp)


def complement_cycles_series(
    omega_hp_path: RationalSeries,
    omega_hp_cycle: RationalSeries,
    omega_hc_cycle: RationalSeries,
) -> RationalSeries:
    """
    F_C(HC̄) = F_C(C)(F_P(ω(HP))) - F_P(ω(HP)) + F_C(ω(HP)) - F_C(ω(HC)).
    """
    order = min(omega_hp_path.order, omega_hp_cycle.order, omega_hc_cycle.order)
    return (
        compose(cycle_factorial_series(order), omega_hp_path)
        - omega_hp_path
        + omega_hp_cycle
        - omega_hc_cycle
    )


def cycle_star_series(f: GraphicFunction, g: GraphicFunction, order: int) -> RationalSeries:
    """F_C(f)(F_P(g)) - f(P_1) F_P(g) + f(P_1) F_C(g), which equals F_C(f * g)."""
    path_g = ogf_path(g, order)
    unit = f(path(1))
    return (
        compose(ogf_cycle(f, order), path_g)
        - path_g.scale(unit)
        + ogf_cycle(g, order).scale(unit)
    )


def format_coefficient(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
