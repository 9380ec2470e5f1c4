"""Exact algebra of log-power monomials.

A :class:`LogPoly` is a finite sum of terms ``c * x^p * ln_1(x)^e_1 * ... * ln_K(x)^e_K``
with rational ``c``, ``p`` and ``e_k``. The set is closed under addition,
multiplication and differentiation, which is enough to check that the threshold
potentials and reference solutions annihilate each other to a literal zero.

Differentiation uses ``(ln_k)' = -x^{-1} * prod_{j<k} ln_j^{-1}``.

Example:
    >>> y = x_power(Fraction(-1, 2))
    >>> q = x_power(-2, coef=Fraction(3, 4))
    >>> apply_tau(0, q, y).is_zero()
    True
    >>> render(q)
    '3/4 * x^-2'
"""

import logging
import math
import random
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..type_utils.validation import RationalLike, as_rational
from ..utils.exceptions import DomainError, ParameterError
from .iterlog import MAX_DEPTH, MAX_TOWER_INDEX, positivity_bound, tower

logger = logging.getLogger(__name__)

LogExps = tuple[tuple[int, Fraction], ...]
TermKey = tuple[Fraction, LogExps]
LogExpsLike = Union[Mapping[int, RationalLike], Iterable[tuple[int, RationalLike]], None]

ZERO = Fraction(0)
ONE = Fraction(1)


def _normalize_logexps(logexps: LogExpsLike) -> LogExps:
    merged: dict[int, Fraction] = {}
    items = logexps.items() if isinstance(logexps, Mapping) else (logexps or ())
    for k, e in items:
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise ParameterError(f"Log depth keys must be integers >= 1, got {k!r}", parameter="k")
        merged[k] = merged.get(k, ZERO) + as_rational(e, "log exponent")
    return tuple(sorted((k, e) for k, e in merged.items() if e != 0))


@dataclass(frozen=True)
class LogMonomial:
    """Single term ``coef * x^xpow * prod_k ln_k(x)^e_k``.

    ``logexps`` is stored as a tuple of ``(k, e_k)`` pairs sorted by depth with
    no zero exponents, so two monomials with the same shape have equal keys.
    """

    coef: Fraction
    xpow: Fraction = ZERO
    logexps: LogExps = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coef", as_rational(self.coef, "coef"))
        object.__setattr__(self, "xpow", as_rational(self.xpow, "xpow"))
        object.__setattr__(self, "logexps", _normalize_logexps(self.logexps))

    @classmethod
    def of(
        cls, coef: RationalLike, xpow: RationalLike = 0, logexps: LogExpsLike = None
    ) -> "LogMonomial":
        """Build a monomial from loose inputs (mappings, ints, strings)."""
        return cls(as_rational(coef), as_rational(xpow), _normalize_logexps(logexps))

    @property
    def key(self) -> TermKey:
        return (self.xpow, self.logexps)

    @property
    def depth(self) -> int:
        return self.logexps[-1][0] if self.logexps else 0

    def exponent(self, k: int) -> Fraction:
        """Exponent of ``ln_k`` in this term (0 when absent)."""
        return dict(self.logexps).get(k, ZERO)

    def times(self, other: "LogMonomial") -> "LogMonomial":
        exps = dict(self.logexps)
        for k, e in other.logexps:
            exps[k] = exps.get(k, ZERO) + e
        return LogMonomial(self.coef * other.coef, self.xpow + other.xpow, _normalize_logexps(exps))

    def derivative(self) -> list["LogMonomial"]:
        """Exact derivative as a list of monomials (not yet combined)."""
        out: list[LogMonomial] = []
        p = self.xpow - 1
        if self.xpow != 0:
            out.append(LogMonomial(self.coef * self.xpow, p, self.logexps))

        exps = dict(self.logexps)
        for k, e in self.logexps:
            # d/dx ln_k^e = -e * ln_k^(e-1) * x^-1 * prod_{j<k} ln_j^-1
            new_exps = dict(exps)
            new_exps[k] = e - 1
            for j in range(1, k):
                new_exps[j] = new_exps.get(j, ZERO) - 1
            out.append(LogMonomial(-self.coef * e, p, _normalize_logexps(new_exps)))
        return out

    def render(self) -> str:
        parts = [str(self.coef)]
        if self.xpow != 0:
            parts.append("x" if self.xpow == 1 else f"x^{self.xpow}")
        for k, e in self.logexps:
            parts.append(f"ln{k}(x)" if e == 1 else f"ln{k}(x)^{e}")
        return " * ".join(parts)


class LogPoly:
    """Canonical finite sum of :class:`LogMonomial` terms.

    Terms are combined by shape, zero coefficients are dropped, and the
    remaining terms are sorted by ``(xpow, logexps)``. Instances are immutable
    and hashable; equality is exact.

    Example:
        >>> a = LogPoly.monomial(Fraction(3, 4), -2) + LogPoly.monomial(Fraction(1, 4), -2)
        >>> a.render()
        '1 * x^-2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[LogMonomial] = ()):
        combined: dict[TermKey, Fraction] = {}
        for term in terms:
            combined[term.key] = combined.get(term.key, ZERO) + term.coef
        self._terms: tuple[LogMonomial, ...] = tuple(
            LogMonomial(c, key[0], key[1]) for key, c in sorted(combined.items()) if c != 0
        )
        self._hash: int | None = None

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "LogPoly":
        return cls()

    @classmethod
    def constant(cls, value: RationalLike) -> "LogPoly":
        return cls([LogMonomial(as_rational(value))])

    @classmethod
    def monomial(
        cls, coef: RationalLike = 1, xpow: RationalLike = 0, logexps: LogExpsLike = None
    ) -> "LogPoly":
        return cls([LogMonomial.of(coef, xpow, logexps)])

    @staticmethod
    def _coerce(other: Any) -> "LogPoly | None":
        if isinstance(other, LogPoly):
            return other
        if isinstance(other, int | Fraction) and not isinstance(other, bool):
            return LogPoly.constant(other)
        return None

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    @property
    def terms(self) -> tuple[LogMonomial, ...]:
        return self._terms

    @property
    def depth(self) -> int:
        """Deepest iterated-log depth present (0 for pure powers)."""
        return max((t.depth for t in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[LogMonomial]:
        return iter(self._terms)

    def __eq__(self, other: object) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self._terms == coerced._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        return f"LogPoly({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: Any) -> "LogPoly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return LogPoly(self._terms + coerced._terms)

    __radd__ = __add__

    def __neg__(self) -> "LogPoly":
        return LogPoly(LogMonomial(-t.coef, t.xpow, t.logexps) for t in self._terms)

    def __sub__(self, other: Any) -> "LogPoly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self + (-coerced)

    def __rsub__(self, other: Any) -> "LogPoly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced - self

    def __mul__(self, other: Any) -> "LogPoly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return LogPoly(a.times(b) for a in self._terms for b in coerced._terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LogPoly":
        if not isinstance(n, int) or n < 0:
            raise ParameterError(f"LogPoly powers must be nonnegative integers, got {n!r}")
        result = LogPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def differentiate(self) -> "LogPoly":
        """Exact derivative ``d/dx``."""
        return LogPoly(d for t in self._terms for d in t.derivative())

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def _check_domain_at_zero(self, x: float, log_shift: float) -> float:
        depth = self.depth
        t = x / log_shift
        if not x > 0.0 or not t > 0.0:
            raise DomainError("LogPoly evaluation requires x > 0", value=x, bound=0.0)
        if depth:
            bound = 0.0 if depth > MAX_TOWER_INDEX else positivity_bound(depth)
            if not t < bound:
                raise DomainError(
                    f"x={x} is outside the positivity domain of ln_1..ln_{depth}",
                    value=x,
                    bound=bound * log_shift,
                )
        return t

    def evaluate(self, x: float, log_shift: float = 1.0) -> float:
        """Evaluate at a point near the origin.

        Args:
            x: Point with ``0 < x/log_shift < exp(-e_{K-1})``.
            log_shift: ``gamma`` in shifted logarithms ``ln_k(x/gamma)``; powers of
                ``x`` are not shifted.

        Returns:
            Floating-point value; overflowing terms become signed infinities.

        Raises:
            DomainError: If ``x`` is outside the positivity domain.
        """
        t = self._check_domain_at_zero(x, log_shift)
        logs = [0.0]
        if self.depth:
            value = -math.log(t)
            logs.append(value)
            for _ in range(1, self.depth):
                value = math.log(value)
                logs.append(value)
        return self._sum_terms(x, logs)

    def evaluate_at_infinity(self, x: float) -> float:
        """Evaluate with depth-k factors read as ``Ln_k(x)`` near infinity.

        Raises:
            DomainError: If ``x <= e_K`` for the deepest depth ``K``.
        """
        depth = self.depth
        if depth:
            bound = math.inf if depth > MAX_TOWER_INDEX else tower(depth)
            if not x > bound:
                raise DomainError(
                    f"x={x} is outside the positivity domain of Ln_1..Ln_{depth}",
                    value=x,
                    bound=bound,
                )
        elif not x > 0.0:
            raise DomainError("LogPoly evaluation requires x > 0", value=x, bound=0.0)
        logs = [0.0]
        value = x
        for _ in range(depth):
            value = math.log(value)
            logs.append(value)
        return self._sum_terms(x, logs)

    def _sum_terms(self, x: float, logs: list[float]) -> float:
        values: list[float] = []
        for term in self._terms:
            coef = float(term.coef)
            try:
                value = coef * x ** float(term.xpow)
                for k, e in term.logexps:
                    value *= logs[k] ** float(e)
            except OverflowError:
                value = math.copysign(math.inf, coef)
            values.append(value)
        if all(math.isfinite(v) for v in values):
            return math.fsum(values)
        return sum(values)

    def evaluate_array(self, x: ArrayLike, log_shift: float = 1.0) -> NDArray[np.float64]:
        """Vectorised :meth:`evaluate` over an array of points.

        Raises:
            DomainError: If any point is outside the positivity domain.
        """
        xs = np.asarray(x, dtype=np.float64)
        if xs.size:
            self._check_domain_at_zero(float(xs.min()), log_shift)
            self._check_domain_at_zero(float(xs.max()), log_shift)

        logs: list[NDArray[np.float64]] = [np.ones_like(xs)]
        if self.depth:
            values = -np.log(xs / log_shift)
            logs.append(values)
            for _ in range(1, self.depth):
                values = np.log(values)
                logs.append(values)

        total = np.zeros_like(xs)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            for term in self._terms:
                contrib = float(term.coef) * np.power(xs, float(term.xpow))
                for k, e in term.logexps:
                    contrib = contrib * np.power(logs[k], float(e))
                total = total + contrib
        return total

    # ------------------------------------------------------------------
    # Rendering
    # ------------------------------------------------------------------

    def render(self) -> str:
        """Canonical text form, parseable by the potential grammar."""
        if not self._terms:
            return "0"
        return " + ".join(t.render() for t in self._terms)


# ----------------------------------------------------------------------
# Builders
# ----------------------------------------------------------------------


def x_power(p: RationalLike, coef: RationalLike = 1) -> LogPoly:
    """``coef * x^p``."""
    return LogPoly.monomial(coef, p)


def log_product(n: int, exponent: RationalLike, start: int = 1) -> LogPoly:
    """``prod_{k=start}^{n} ln_k(x)^exponent``; the empty product is 1."""
    return LogPoly.monomial(1, 0, {k: exponent for k in range(start, n + 1)})


def log_partial_products_sum(n: int, exponent: RationalLike, start: int = 1) -> LogPoly:
    """``sum_{j=start}^{n} prod_{l=start}^{j} ln_l(x)^exponent``; the empty sum is 0."""
    return LogPoly(
        LogMonomial.of(1, 0, {k: exponent for k in range(start, j + 1)})
        for j in range(start, n + 1)
    )


# ----------------------------------------------------------------------
# Functional API
# ----------------------------------------------------------------------


def add(a: LogPoly, b: LogPoly) -> LogPoly:
    return a + b


def mul(a: LogPoly, b: LogPoly) -> LogPoly:
    return a * b


def differentiate(a: LogPoly) -> LogPoly:
    return a.differentiate()


def is_zero(a: LogPoly) -> bool:
    return a.is_zero()


def evaluate(a: LogPoly, x: float) -> float:
    return a.evaluate(x)


def render(a: LogPoly) -> str:
    return a.render()


def apply_tau(alpha: RationalLike, q: LogPoly, y: LogPoly) -> LogPoly:
    """Apply ``tau_alpha = -(d/dx) x^alpha (d/dx) + q`` to ``y`` exactly.

    Args:
        alpha: Power of the leading coefficient ``x^alpha``.
        q: Potential.
        y: Function to which the expression is applied.

    Returns:
        ``-(x^alpha * y')' + q * y`` in canonical form.
    """
    flux = x_power(as_rational(alpha, "alpha")) * y.differentiate()
    return -flux.differentiate() + q * y


# ----------------------------------------------------------------------
# Identity checks
# ----------------------------------------------------------------------


def derivative_identities(n: int) -> dict[str, bool]:
    """Check the derivative identities of the iterated-log products for depth ``n``.

    The four identities are the derivatives of ``ln_n``, of ``ln_n^{-1/2}``, of
    ``prod ln_k^{-1/2}`` and of ``prod ln_k^{-1}``, each compared exactly with
    its closed form.

    Returns:
        Mapping from identity name to whether it holds.
    """
    if n < 1:
        raise ParameterError(f"Depth must be >= 1, got {n}", parameter="n")
    half = Fraction(1, 2)
    inv_x = x_power(-1)
    inner = log_product(n - 1, -1)
    partial = log_partial_products_sum(n, -1)

    d_ln = LogPoly.monomial(1, 0, {n: 1}).differentiate()
    d_ln_half = LogPoly.monomial(1, 0, {n: -half}).differentiate()
    d_prod_half = log_product(n, -half).differentiate()
    d_prod_inv = log_product(n, -1).differentiate()

    results = {
        "d_ln": d_ln == -inv_x * inner,
        "d_ln_inverse_sqrt": d_ln_half
        == half * inv_x * inner * LogPoly.monomial(1, 0, {n: Fraction(-3, 2)}),
        "d_product_inverse_sqrt": d_prod_half == half * inv_x * log_product(n, -half) * partial,
        "d_product_inverse": d_prod_inv == inv_x * log_product(n, -1) * partial,
    }
    logger.debug(f"Derivative identities at depth {n}: {results}", extra={"depth": n})
    return results


def rearrangement_identity(n: int) -> bool:
    """Check the double-sum rearrangement of iterated-log partial products.

    ``sum_j P_j sum_{m<=j} P_m`` equals
    ``sum_{j<n} prod_{l<=j} ln_l^{-2} sum_{m>j} prod_{p=j+1}^{m} ln_p^{-1}``
    plus ``sum_j prod_{l<=j} ln_l^{-2}``, where ``P_j = prod_{l<=j} ln_l^{-1}``.
    """
    if n < 1:
        raise ParameterError(f"Depth must be >= 1, got {n}", parameter="n")
    lhs = LogPoly.zero()
    for j in range(1, n + 1):
        lhs = lhs + log_product(j, -1) * log_partial_products_sum(j, -1)

    rhs = log_partial_products_sum(n, -2)
    for j in range(1, n):
        rhs = rhs + log_product(j, -2) * log_partial_products_sum(n, -1, start=j + 1)
    return lhs == rhs


# ----------------------------------------------------------------------
# Randomized checks
# ----------------------------------------------------------------------


def random_logpoly(rng: random.Random, max_terms: int = 4, max_depth: int = 2) -> LogPoly:
    """Draw a polynomial with small rational coefficients and exponents."""
    if not 1 <= max_depth <= MAX_DEPTH:
        raise ParameterError(f"max_depth must be in [1, {MAX_DEPTH}]", parameter="max_depth")

    def small_rational() -> Fraction:
        return Fraction(rng.randint(-6, 6), rng.randint(1, 4))

    terms = []
    for _ in range(rng.randint(1, max_terms)):
        depth = rng.randint(0, max_depth)
        logexps = {k: small_rational() for k in range(1, depth + 1)}
        terms.append(LogMonomial.of(small_rational() or 1, small_rational(), logexps))
    return LogPoly(terms)


def algebra_properties(a: LogPoly, b: LogPoly, c: RationalLike = 3) -> dict[str, bool]:
    """Exact linearity and product-rule checks of differentiation on a pair."""
    k = as_rational(c, "c")
    da, db = a.differentiate(), b.differentiate()
    return {
        "linearity": (a * k + b).differentiate() == da * k + db,
        "product_rule": (a * b).differentiate() == da * b + a * db,
        "commutativity": a * b == b * a,
    }
