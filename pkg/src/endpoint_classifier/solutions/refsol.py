"""Reference solutions of ``tau_alpha u = z u`` and their verification.

Contents:

* exact log-power solutions ``y_N`` and ``y_{N,eps}`` paired with the comparison
  potentials of :mod:`endpoint_classifier.criteria.thresholds`;
* the indicial exponents of Euler potentials and their exact solutions;
* second solutions by reduction of order (adaptive quadrature);
* Bessel-type solutions and the zero-energy principal/nonprincipal shapes of
  ``tau_{beta,gamma}``;
* finite-difference residuals and a square-integrability test carried out in
  iterated-log coordinates, where the slow divergence of ``y_N^2`` is visible.
"""

import cmath
import logging
import math
import warnings
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import integrate, special

from ..algebra.iterlog import MAX_DEPTH
from ..algebra.symalg import LogMonomial, LogPoly, apply_tau, log_product, x_power
from ..core.schemas import L2Judgement
from ..criteria.thresholds import leading_coefficient, q_alpha_0_beta, q_alpha_N, q_alpha_N_eps
from ..type_utils.protocols import SolutionFn
from ..type_utils.validation import RationalLike, as_rational
from ..utils.exceptions import DomainError, ParameterError, QuadratureError
from .bessel import bessel_j, bessel_y

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
DYNAMIC_RANGE = 50.0
TRAPEZOID_NODES = 4097

# ----------------------------------------------------------------------
# Log-power solutions
# ----------------------------------------------------------------------


def y_N(N: int) -> LogPoly:  # noqa: N802
    """``x^{-1/2} prod_{k<=N} ln_k(x)^{-1/2}``; ``y_0 = x^{-1/2}``.

    Raises:
        ParameterError: Unless ``0 <= N <= 4``.
    """
    if not isinstance(N, int) or isinstance(N, bool) or not 0 <= N <= MAX_DEPTH:
        raise ParameterError(f"N must be an integer in [0, {MAX_DEPTH}], got {N!r}", parameter="N")
    return x_power(-HALF) * log_product(N, -HALF)


def y_N_eps(N: int, eps: RationalLike) -> LogPoly:  # noqa: N802
    """``y_N`` with the deepest log raised to ``-1/2 - eps/2``.

    Raises:
        ParameterError: Unless ``1 <= N <= 4`` and ``eps >= 0``.
    """
    if not isinstance(N, int) or isinstance(N, bool) or not 1 <= N <= MAX_DEPTH:
        raise ParameterError(f"N must be an integer in [1, {MAX_DEPTH}], got {N!r}", parameter="N")
    e = as_rational(eps, "eps")
    if e < 0:
        raise ParameterError(f"eps must be nonnegative, got {e}", parameter="eps")
    exps: dict[int, Fraction] = {k: -HALF for k in range(1, N + 1)}
    exps[N] = -HALF - e / 2
    return LogPoly.monomial(1, -HALF, exps)


@dataclass(frozen=True)
class ResidualCheck:
    """One exact residual computation ``tau y`` for a paired potential."""

    family: str
    alpha: str
    N: int
    eps: str | None
    terms: int

    @property
    def zero(self) -> bool:
        return self.terms == 0


def verify_residuals(
    family: str,
    alpha: RationalLike,
    max_N: int,  # noqa: N803
    eps: RationalLike | None = None,
) -> list[ResidualCheck]:
    """Apply ``tau_alpha`` to paired solutions exactly and count leftover terms.

    Args:
        family: ``"log-power"`` (``q_{alpha,N}`` with ``y_N``, ``N = 0..max_N``) or
            ``"log-power-eps"`` (``q_{alpha,N,eps}`` with ``y_{N,eps}``, ``N = 1..max_N``).
        alpha: Rational ``alpha < 2``.
        max_N: Largest depth, at most 4.
        eps: Required for ``"log-power-eps"``.

    Returns:
        One check per depth; a check is zero when no terms survive.

    Raises:
        ParameterError: On unknown families or violated preconditions.
    """
    a = as_rational(alpha, "alpha")
    if not isinstance(max_N, int) or not 0 <= max_N <= MAX_DEPTH:
        raise ParameterError(
            f"max_N must be an integer in [0, {MAX_DEPTH}], got {max_N!r}", parameter="max_N"
        )

    checks: list[ResidualCheck] = []
    if family == "log-power":
        for N in range(max_N + 1):
            q = x_power(a - 2, leading_coefficient(a)) if N == 0 else q_alpha_N(a, N)
            residual = apply_tau(a, q, y_N(N))
            checks.append(ResidualCheck(family, str(a), N, None, len(residual)))
    elif family == "log-power-eps":
        if eps is None:
            raise ParameterError("eps is required for the log-power-eps family", parameter="eps")
        e = as_rational(eps, "eps")
        for N in range(1, max_N + 1):
            residual = apply_tau(a, q_alpha_N_eps(a, N, e), y_N_eps(N, e))
            checks.append(ResidualCheck(family, str(a), N, str(e), len(residual)))
    else:
        raise ParameterError(f"Unknown residual family {family!r}", parameter="family")

    logger.info(
        f"Verified {len(checks)} residuals for {family}",
        extra={"family": family, "alpha": str(a), "nonzero": sum(not c.zero for c in checks)},
    )
    return checks


# ----------------------------------------------------------------------
# Euler exponents
# ----------------------------------------------------------------------


def _rational_sqrt(value: Fraction) -> Fraction | None:
    if value < 0:
        return None
    num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


@dataclass(frozen=True)
class ExponentPair:
    """Indicial exponents of ``(3/4 - alpha/2 - beta) x^(alpha-2)``.

    Attributes:
        gamma1: Smaller (or conjugate) exponent.
        gamma2: Larger exponent.
        exact: Exact rational exponents when the discriminant is a rational square.
        degenerate: Whether ``beta = (2-alpha)^2/4`` (double root, log solution).
    """

    gamma1: complex
    gamma2: complex
    exact: tuple[Fraction, Fraction] | None = None
    degenerate: bool = False

    @property
    def is_real(self) -> bool:
        return self.gamma1.imag == 0.0 and self.gamma2.imag == 0.0


def gamma_exponents(alpha: RationalLike, beta: RationalLike) -> ExponentPair:
    """Exponents ``gamma`` with ``x^gamma`` solving the Euler comparison equation.

    The roots are ``(1 - alpha)/2 -+ sqrt((2-alpha)^2 - 4 beta)/2``, so they sum to
    ``1 - alpha``.

    Raises:
        ParameterError: Unless ``alpha < 2`` and ``beta > 0``.
    """
    a = as_rational(alpha, "alpha")
    b = as_rational(beta, "beta")
    if a >= 2:
        raise ParameterError(f"alpha must be < 2, got {a}", parameter="alpha")
    if b <= 0:
        raise ParameterError(f"beta must be positive, got {b}", parameter="beta")

    centre = (1 - a) / 2
    discriminant = (2 - a) ** 2 - 4 * b
    root = _rational_sqrt(discriminant)
    exact = (centre - root / 2, centre + root / 2) if root is not None else None
    half_width = cmath.sqrt(float(discriminant)) / 2
    return ExponentPair(
        gamma1=complex(float(centre)) - half_width,
        gamma2=complex(float(centre)) + half_width,
        exact=exact,
        degenerate=discriminant == 0,
    )


def euler_solutions(alpha: RationalLike, beta: RationalLike) -> tuple[LogPoly, LogPoly]:
    """Exact solutions of ``tau_{alpha,0,beta} y = 0`` for rational exponents.

    In the degenerate case the second solution is ``x^{(1-alpha)/2} ln_1(x)``.

    Raises:
        ParameterError: If the exponents are not rational.
    """
    pair = gamma_exponents(alpha, beta)
    if pair.exact is None:
        raise ParameterError(
            f"Exponents for alpha={alpha}, beta={beta} are not rational", parameter="beta"
        )
    g1, g2 = pair.exact
    if pair.degenerate:
        return x_power(g1), LogPoly.monomial(1, g1, {1: 1})
    return x_power(g1), x_power(g2)


def euler_residuals(alpha: RationalLike, beta: RationalLike) -> tuple[LogPoly, LogPoly]:
    """``tau`` applied to both exact Euler solutions; zero polynomials when exact."""
    q = q_alpha_0_beta(alpha, beta)
    y1, y2 = euler_solutions(alpha, beta)
    return apply_tau(alpha, q, y1), apply_tau(alpha, q, y2)


# ----------------------------------------------------------------------
# Solution wrappers
# ----------------------------------------------------------------------


class PolySolution:
    """A :class:`LogPoly` solution evaluated near the origin."""

    def __init__(self, poly: LogPoly, description: str | None = None):
        self.poly = poly
        self._derivative = poly.differentiate()
        self._description = description or poly.render()

    @property
    def description(self) -> str:
        return self._description

    def __call__(self, x: float) -> float:
        return self.poly.evaluate(x)

    def derivative(self, x: float) -> float:
        return self._derivative.evaluate(x)


class CallableSolution:
    """Wrap a plain callable with a provenance tag."""

    def __init__(self, fn: Callable[[float], float | complex], description: str):
        self._fn = fn
        self._description = description

    @property
    def description(self) -> str:
        return self._description

    def __call__(self, x: float) -> float | complex:
        return self._fn(x)


class ReductionOfOrder:
    """Second solution ``y(x) * int t^{-alpha} y(t)^{-2} dt`` from a base solution.

    With ``orientation="upper"`` the integral runs from ``x`` to the anchor and
    ``x^alpha W(y, y~) = -1``; with ``orientation="lower"`` it runs from the
    anchor to ``x`` and the Wronskian is ``+1``.

    Args:
        alpha: Power of the leading coefficient.
        base: Exact base solution.
        anchor: Anchor point ``c`` (or ``x_0``).
        orientation: ``"upper"`` or ``"lower"``.
        epsrel: Relative quadrature tolerance.

    Raises:
        ParameterError: On an unknown orientation.
    """

    def __init__(
        self,
        alpha: RationalLike,
        base: LogPoly,
        anchor: float,
        orientation: str = "upper",
        epsrel: float = 1e-10,
    ):
        if orientation not in ("upper", "lower"):
            raise ParameterError(f"Unknown orientation {orientation!r}", parameter="orientation")
        self.alpha = float(as_rational(alpha, "alpha"))
        self.base = PolySolution(base)
        self.anchor = float(anchor)
        self.orientation = orientation
        self.epsrel = epsrel
        self.sign = -1.0 if orientation == "upper" else 1.0

    @property
    def description(self) -> str:
        base = self.base.description
        return f"reduction of order of {base} ({self.orientation}, c={self.anchor})"

    def _log_integrand(self, s: float) -> float:
        t = math.exp(s)
        return t ** (1.0 - self.alpha) / self.base(t) ** 2

    def integral(self, x: float) -> float:
        """Signed integral of ``t^{-alpha} y(t)^{-2}`` in the chosen orientation.

        Raises:
            QuadratureError: If the tolerance is not reached.
        """
        if not x > 0.0:
            raise DomainError("Reduction of order requires x > 0", value=x, bound=0.0)
        lo, hi = (x, self.anchor) if self.orientation == "upper" else (self.anchor, x)
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                value, error = integrate.quad(
                    self._log_integrand,
                    math.log(lo),
                    math.log(hi),
                    epsabs=0.0,
                    epsrel=self.epsrel,
                    limit=1000,
                )
            except integrate.IntegrationWarning as e:
                raise QuadratureError(f"Quadrature failed at x={x}: {e}") from e
        if not math.isfinite(value) or error > 10 * self.epsrel * abs(value):
            raise QuadratureError(f"Quadrature tolerance not met at x={x}", value, error)
        return value

    def __call__(self, x: float) -> float:
        return self.base(x) * self.integral(x)

    def derivative(self, x: float) -> float:
        y = self.base(x)
        return self.base.derivative(x) * self.integral(x) + self.sign * x ** (-self.alpha) / y

    def wronskian(self, x: float) -> float:
        """``x^alpha (y y~' - y' y~)``."""
        y, dy = self.base(x), self.base.derivative(x)
        return x**self.alpha * (y * self.derivative(x) - dy * self(x))


def y_tilde(alpha: RationalLike, base: LogPoly, anchor: float, x: float) -> float:
    """Second solution at ``x < anchor``, integrating from ``x`` up to the anchor."""
    return ReductionOfOrder(alpha, base, anchor)(x)


# ----------------------------------------------------------------------
# Bessel-type and zero-energy solutions
# ----------------------------------------------------------------------


def bessel_coupling(beta: RationalLike, gamma: float) -> float:
    """Coefficient ``((2-beta)^2 gamma^2 - (1-beta)^2)/4`` of ``x^(beta-2)``."""
    b = float(as_rational(beta, "beta"))
    return ((2 - b) ** 2 * gamma**2 - (1 - b) ** 2) / 4


def bessel_solution(beta: RationalLike, gamma: float, z: complex, j: int, x: float) -> complex:
    """Solution of ``tau_{beta,gamma} y = z y`` built from Bessel functions.

    ``y_1 = x^{(1-beta)/2} J_gamma(u)`` and ``y_2`` uses ``J_{-gamma}`` (non-integer
    ``gamma``) or ``Y_gamma`` (integer ``gamma``), with
    ``u = 2 z^{1/2} x^{(2-beta)/2} / (2-beta)`` on the principal branch.

    Raises:
        ParameterError: If ``beta = 2``, ``gamma < 0`` or ``j`` is not 1 or 2.
        DomainError: If ``x <= 0`` or ``|u|`` leaves the series range.
    """
    b = as_rational(beta, "beta")
    if b == 2:
        raise ParameterError("beta = 2 has no Bessel representation", parameter="beta")
    if gamma < 0:
        raise ParameterError(f"gamma must be nonnegative, got {gamma}", parameter="gamma")
    if j not in (1, 2):
        raise ParameterError(f"j must be 1 or 2, got {j}", parameter="j")
    if not x > 0.0:
        raise DomainError("Bessel solutions require x > 0", value=x, bound=0.0)

    bf = float(b)
    u = 2 * cmath.sqrt(complex(z)) * x ** ((2 - bf) / 2) / (2 - bf)
    prefactor = x ** ((1 - bf) / 2)
    if j == 1:
        return complex(prefactor * bessel_j(gamma, u))
    if float(gamma).is_integer():
        return complex(prefactor * bessel_y(gamma, u))
    return complex(prefactor * bessel_j(-gamma, u))


def bessel_solution_fn(beta: RationalLike, gamma: float, z: complex, j: int) -> CallableSolution:
    return CallableSolution(
        lambda x: bessel_solution(beta, gamma, z, j, x),
        f"bessel y_{j}(beta={beta}, gamma={gamma}, z={z})",
    )


def zero_energy_solutions(
    beta: RationalLike, gamma: float, x: ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Principal and nonprincipal solutions of ``tau_{beta,gamma} u = 0`` at 0.

    ``u_0 = x^{[1-beta+(2-beta)gamma]/2}``; ``u^_0 = x^{[1-beta-(2-beta)gamma]/2}``
    for ``gamma > 0`` and ``x^{(1-beta)/2} ln(1/x)`` for ``gamma = 0``. For
    ``beta = 2`` the nonprincipal solution is ``x^{-1/2} ln(1/x)``.

    Raises:
        DomainError: If any point is outside ``(0, 1)``.
    """
    b = float(as_rational(beta, "beta"))
    if gamma < 0:
        raise ParameterError(f"gamma must be nonnegative, got {gamma}", parameter="gamma")
    xs = np.asarray(x, dtype=np.float64)
    if np.any(xs <= 0.0) or np.any(xs >= 1.0):
        raise DomainError("Zero-energy solutions are defined for 0 < x < 1", bound=(0.0, 1.0))

    principal = np.power(xs, (1 - b + (2 - b) * gamma) / 2)
    if b == 2.0:
        nonprincipal = np.power(xs, -0.5) * -np.log(xs)
    elif gamma == 0.0:
        nonprincipal = np.power(xs, (1 - b) / 2) * -np.log(xs)
    else:
        nonprincipal = np.power(xs, (1 - b - (2 - b) * gamma) / 2)
    return principal, nonprincipal


# ----------------------------------------------------------------------
# Numerical residuals
# ----------------------------------------------------------------------


def residual_numeric(
    alpha: float | RationalLike,
    q: Callable[[float], float],
    y: SolutionFn | Callable[[float], float | complex],
    x: float,
    h: float,
) -> float | complex:
    """``-D_h(x^alpha D_h y) + q y`` with half-step centred differences.

    Second-order accurate in ``h``.

    Raises:
        DomainError: If ``x - 2h <= 0``.
    """
    a = float(as_rational(alpha, "alpha")) if not isinstance(alpha, float) else alpha
    if not h > 0.0 or not x - 2 * h > 0.0:
        raise DomainError("Stencil [x-2h, x+2h] must lie in (0, inf)", value=(x - 2 * h, x + 2 * h))
    y_minus, y_mid, y_plus = y(x - h), y(x), y(x + h)
    flux_plus = (x + h / 2) ** a * (y_plus - y_mid) / h
    flux_minus = (x - h / 2) ** a * (y_mid - y_minus) / h
    return -(flux_plus - flux_minus) / h + q(x) * y_mid


def solution_table(
    alpha: float | RationalLike,
    q: Callable[[float], float],
    y: SolutionFn,
    xs: Sequence[float],
    h_rel: float = 1e-4,
) -> list[tuple[float, float | complex, float | complex]]:
    """Rows ``(x, y(x), residual)`` with step ``h = h_rel * x``."""
    return [(x, y(x), residual_numeric(alpha, q, y, x, h_rel * x)) for x in xs]


# ----------------------------------------------------------------------
# Square integrability in iterated-log coordinates
# ----------------------------------------------------------------------


@dataclass
class DichotomyResult:
    """Window masses of ``int y^2 dx`` toward 0 in the coordinate ``ln_{D+1}(x)``."""

    depth: int
    log_masses: list[float] = field(default_factory=list)
    ratios: list[float] = field(default_factory=list)
    growth: float = 1.0
    judgement: L2Judgement = L2Judgement.INCONCLUSIVE


def _safe_exp(value: float) -> float:
    try:
        return math.exp(value)
    except OverflowError:
        return math.inf


def _log_density(term: LogMonomial, depth: int) -> Callable[[float], float]:
    """``log`` of the integrand of ``y^2 dx`` in the coordinate ``sigma = ln_{D+1}(x)``.

    With ``dx = -x ln_1 ... ln_{D-1} d(ln_D)`` and ``ln_D = exp(sigma)`` the
    integrand is ``c^2 x^{2p+1} prod_{k<D} ln_k^{2e_k+1} exp((2e_D+1) sigma)``.
    Stages are only exponentiated down to the shallowest nonzero weight.
    """
    log_c2 = 2 * math.log(abs(float(term.coef)))
    x_weight = float(2 * term.xpow + 1)
    stage_weights = {k: float(2 * term.exponent(k) + 1) for k in range(1, depth)}
    last_weight = float(2 * term.exponent(depth) + 1)
    if x_weight:
        lowest = 1
    else:
        lowest = min((k for k, w in stage_weights.items() if w), default=depth)

    def log_g(sigma: float) -> float:
        total = log_c2 + last_weight * sigma
        value = _safe_exp(sigma)  # ln_D
        level = depth
        while level > lowest:
            level -= 1
            # value is ln_{level+1} = log(ln_level)
            weight = stage_weights[level]
            if weight:
                total += weight * value
            value = _safe_exp(value)
        if x_weight:
            # value is ln_1 = -log(x)
            total -= x_weight * value
        return total

    return log_g


def _window_log_mass(log_g: Callable[[float], float], lo: float, hi: float, k: int) -> float:
    """``log int_lo^hi exp(log_g)``.

    Windows whose integrand spans more than ``exp(DYNAMIC_RANGE)`` are summed
    with the trapezoid rule in log space; adaptive quadrature would miss the
    spike at one end.

    Raises:
        QuadratureError: If quadrature returns a negative or non-finite value.
    """
    probes = [log_g(lo), log_g(0.5 * (lo + hi)), log_g(hi)]
    if any(v == math.inf for v in probes):
        return math.inf
    finite = [v for v in probes if math.isfinite(v)]
    if not finite:
        return -math.inf
    shift = max(finite)

    if len(finite) == len(probes) and shift - min(finite) < DYNAMIC_RANGE:
        value, _ = integrate.quad(
            lambda s: math.exp(log_g(s) - shift), lo, hi, epsabs=0.0, epsrel=1e-10, limit=200
        )
        if value > 0.0 and math.isfinite(value):
            return shift + math.log(value)
        if value == 0.0:
            return -math.inf
        raise QuadratureError(f"Window {k} integral is not positive and finite", value)

    nodes = np.linspace(lo, hi, TRAPEZOID_NODES)
    logs = np.nan_to_num(np.array([log_g(float(s)) for s in nodes]), nan=-np.inf)
    weights = np.full(nodes.size, nodes[1] - nodes[0])
    weights[[0, -1]] *= 0.5
    with np.errstate(divide="ignore"):
        return float(special.logsumexp(logs, b=weights))


def l2_dichotomy(
    y: LogPoly,
    sigma0: float = 1.0,
    windows: int = 16,
    ratio_tol: float = 0.95,
    growth_tol: float = 1e4,
) -> DichotomyResult:
    """Decide square integrability of a log-power monomial at 0.

    Integrates ``y^2`` over dyadic windows ``[sigma0 2^k, sigma0 2^(k+1)]`` of the
    coordinate ``sigma = ln_{D+1}(x)`` (``D`` the depth of ``y``), which reaches
    points far below the smallest double.

    Args:
        y: Single-term polynomial.
        sigma0: First window start (``> 0``).
        windows: Number of windows.
        ratio_tol: The last three mass ratios below this mean square integrable.
        growth_tol: Partial-sum growth at or above this means not square integrable.

    Raises:
        ParameterError: If ``y`` is not a single monomial.
        QuadratureError: If a window integral fails.
    """
    if len(y) != 1:
        raise ParameterError("l2_dichotomy expects a single monomial", parameter="y")
    if not sigma0 > 0:
        raise ParameterError(f"sigma0 must be positive, got {sigma0}", parameter="sigma0")
    term = y.terms[0]
    depth = max(1, term.depth)
    log_g = _log_density(term, depth)

    result = DichotomyResult(depth=depth)
    for k in range(windows):
        lo, hi = sigma0 * 2.0**k, sigma0 * 2.0 ** (k + 1)
        result.log_masses.append(_window_log_mass(log_g, lo, hi, k))

    masses = result.log_masses
    result.ratios = [
        math.exp(b - a) if math.isfinite(a) and math.isfinite(b) else 0.0
        for a, b in zip(masses, masses[1:], strict=False)
    ]
    first = masses[0]
    partial = np.logaddexp.accumulate(np.array(masses))
    result.growth = float(np.exp(partial[-1] - first)) if math.isfinite(first) else math.inf

    if result.growth >= growth_tol:
        result.judgement = L2Judgement.NOT_L2
    elif len(result.ratios) >= 3 and all(r < ratio_tol for r in result.ratios[-3:]):
        result.judgement = L2Judgement.L2
    logger.debug(
        f"L2 dichotomy for {y.render()}: {result.judgement}",
        extra={"growth": result.growth, "windows": windows},
    )
    return result
