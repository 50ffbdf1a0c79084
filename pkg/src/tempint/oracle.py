"""High-precision evaluation of the general temperature integral.

Two independent algorithms provide ground truth:

* ``g_cf`` -- modified Lentz continued fraction for the upper incomplete
  gamma function Gamma(-(m+1), x), which equals g(m, x).
* ``g_quad`` -- adaptive Gauss-Kronrod quadrature of the integrand after
  the substitution t = x + u, which removes the exp(-x) * x**-(m+2)
  scale from the numerical problem.

Both are expected to agree to ~10x the configured relative tolerance
across the working domain m in [-4, 4], x in [4, 100]; the agreement is
asserted by the test suite.  ``h`` is the bounded companion
h(m, x) = exp(x) * x**(m+2) * g(m, x), the quantity the rational
approximants actually target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

M_MIN, M_MAX = -4.0, 4.0
X_MIN, X_MAX = 4.0, 100.0

_TINY = 1e-300


class OracleError(Exception):
    """Base class for oracle failures."""


class DomainError(OracleError):
    """Point outside the working domain m in [-4, 4], x in [4, 100]."""


class ConvergenceError(OracleError):
    """Iteration cap hit before reaching the requested tolerance.

    Carries the last two iterates so the caller can judge how far the
    computation was from convergence.
    """

    def __init__(self, message, last_iterates):
        super().__init__(f"{message} (last iterates: {last_iterates[0]!r}, "
                         f"{last_iterates[1]!r})")
        self.last_iterates = last_iterates


@dataclass(frozen=True)
class EvalPoint:
    """A (m, x) coordinate, x = E/RT the reduced activation energy."""

    m: float
    x: float

    def __post_init__(self):
        if not (math.isfinite(self.m) and math.isfinite(self.x)):
            raise DomainError(f"non-finite point (m={self.m}, x={self.x})")
        if self.x <= 0.0:
            raise DomainError(f"x must be positive, got x={self.x}")


@dataclass(frozen=True)
class OracleConfig:
    rel_tol: float = 1e-13
    max_iterations: int = 10_000

    def __post_init__(self):
        # Must stay ~6 orders tighter than the best approximant it judges.
        if not 0.0 < self.rel_tol < 1e-6:
            raise ValueError(f"rel_tol must be in (0, 1e-6), got {self.rel_tol}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


DEFAULT_CONFIG = OracleConfig()


def _require_working_domain(point: EvalPoint) -> None:
    if not (M_MIN <= point.m <= M_MAX and X_MIN <= point.x <= X_MAX):
        raise DomainError(
            f"(m={point.m}, x={point.x}) outside working domain "
            f"m in [{M_MIN}, {M_MAX}], x in [{X_MIN}, {X_MAX}]")


def _lentz_cf(a: float, x: float, cfg: OracleConfig) -> float:
    """Continued fraction F with Gamma(a, x) = exp(-x) * x**a * F.

    Modified Lentz iteration; valid for x > 0 and the real parameters
    a = -(m+1) in [-5, 3] arising in the working domain.
    """
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    f = d
    prev = f
    for i in range(1, cfg.max_iterations + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        prev = f
        f *= delta
        if abs(delta - 1.0) < cfg.rel_tol:
            return f
    raise ConvergenceError(
        f"continued fraction for Gamma({a}, {x}) did not converge "
        f"within {cfg.max_iterations} iterations", (prev, f))


def g_cf(point: EvalPoint, cfg: OracleConfig = DEFAULT_CONFIG) -> float:
    """g(m, x) via the continued fraction for Gamma(-(m+1), x)."""
    _require_working_domain(point)
    a = -(point.m + 1.0)
    f = _lentz_cf(a, point.x, cfg)
    return math.exp(-point.x + a * math.log(point.x)) * f


def _h_cf(point: EvalPoint, cfg: OracleConfig) -> float:
    # h = exp(x) x^(m+2) g = x * F with the Lentz fraction F above.
    return point.x * _lentz_cf(-(point.m + 1.0), point.x, cfg)


def _h_quad(point: EvalPoint, cfg: OracleConfig) -> float:
    """h(m, x) = int_0^inf exp(-u) (1 + u/x)**-(m+2) du by quadrature."""
    m, x = point.m, point.x
    p = m + 2.0
    upper = 60.0 + 5.0 * abs(p) * math.log(x)

    def integrand(u):
        return math.exp(-u - p * math.log1p(u / x))

    out = quad(integrand, 0.0, upper, epsabs=0.0, epsrel=cfg.rel_tol,
               limit=200, full_output=True)
    val, abserr = out[0], out[1]
    if len(out) > 3:
        raise OracleError(
            f"quadrature failed at (m={m}, x={x}): {out[3]}")
    # Truncation tail bound: integrand <= exp(-u) * (1 + upper/x)^max(0,-p).
    tail = math.exp(-upper) * (1.0 + upper / x) ** max(0.0, -p)
    if tail > cfg.rel_tol * val:
        raise OracleError(
            f"truncation bound {tail:g} exceeds tolerance at (m={m}, x={x})")
    if abserr > 10.0 * cfg.rel_tol * val:
        raise OracleError(
            f"quadrature error estimate {abserr:g} too large at (m={m}, x={x})")
    return val


def g_quad(point: EvalPoint, cfg: OracleConfig = DEFAULT_CONFIG) -> float:
    """g(m, x) by adaptive quadrature, independent of ``g_cf``."""
    _require_working_domain(point)
    hval = _h_quad(point, cfg)
    return math.exp(-point.x - (point.m + 2.0) * math.log(point.x)) * hval


def h(point: EvalPoint, cfg: OracleConfig = DEFAULT_CONFIG) -> float:
    """Scaled target h(m, x) = exp(x) * x**(m+2) * g(m, x).

    h(-2, x) = 1 exactly; h -> 1 as x -> infinity for fixed m.  Uses the
    continued fraction, falling back to quadrature if it fails to
    converge.
    """
    _require_working_domain(point)
    try:
        return _h_cf(point, cfg)
    except ConvergenceError:
        return _h_quad(point, cfg)


def h_series(point: EvalPoint, terms: int) -> float:
    """Partial sum of the asymptotic series for h(m, x).

    1 - (m+2)/x + (m+2)(m+3)/x^2 - ... truncated to ``terms`` terms.
    A large-x sanity bracket only, never ground truth: consecutive
    partial sums bracket h once the term ratio (m+2+k)/x drops below 1.
    """
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    total = 1.0
    term = 1.0
    for k in range(1, terms):
        term *= -(point.m + 1.0 + k) / point.x
        total += term
    return total
