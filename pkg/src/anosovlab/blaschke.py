"""Analytic area-preserving torus map family: a Blaschke-factor deformation
of the linear hyperbolic automorphism [[2,1],[1,1]] (the Arnold cat map).

    T(t1, t2) = (2*t1 + t2 + f(t1), t1 + t2 + f(t1))   mod 1
    f(t)     = (1/pi) * atan( mu*sin(2*pi*t - alpha) / (1 - mu*cos(2*pi*t - alpha)) )

with 0 <= mu < 1 and alpha in [-pi, pi).  f equals -(1/pi)*arg(1 - mu*e^{i(2*pi*t-alpha)}),
so it is real-analytic and 1-periodic; mu = 0 gives the unperturbed cat map.
The skew structure makes the inverse exact in closed form, which keeps long
backward orbits free of iteration error.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

from .extprec import (
    DomainError,
    Mat2,
    ParameterError,
    Real,
    Vec2,
    mod1,
    real,
    torus_delta,
)


@dataclass(frozen=True)
class MapParams:
    """Deformation amplitude mu in [0,1) and phase alpha in [-pi, pi)."""

    mu: Real
    alpha: Real

    def __post_init__(self):
        mu = real(self.mu)
        alpha = real(self.alpha)
        if not (0 <= mu < 1):
            raise ParameterError(f"mu must lie in [0,1), got {mu}")
        pi = gmpy2.const_pi()
        if not (-pi <= alpha < pi):
            raise ParameterError(f"alpha must lie in [-pi, pi), got {alpha}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class TorusPoint:
    """Point on the unit torus, canonical representatives in [0,1)."""

    theta1: Real
    theta2: Real

    def __post_init__(self):
        t1 = real(self.theta1)
        t2 = real(self.theta2)
        if not (0 <= t1 < 1 and 0 <= t2 < 1):
            raise DomainError(f"torus coordinates must lie in [0,1), got ({t1}, {t2})")
        object.__setattr__(self, "theta1", t1)
        object.__setattr__(self, "theta2", t2)


def reference_params() -> MapParams:
    """The default study parameters mu = 0.7, alpha = 0.3."""
    return MapParams(real("0.7"), real("0.3"))


def torus_dist(p: TorusPoint, q: TorusPoint) -> Real:
    """Euclidean distance on the torus (minimal representatives per coordinate)."""
    d1 = torus_delta(p.theta1, q.theta1)
    d2 = torus_delta(p.theta2, q.theta2)
    return gmpy2.sqrt(d1 * d1 + d2 * d2)


# Raw scalar kernels.  The splitting module iterates these thousands of times,
# so they avoid constructing TorusPoint/Mat2 wrappers.

def _f(mu: Real, alpha: Real, t: Real) -> Real:
    pi = gmpy2.const_pi()
    phi = (pi + pi) * t - alpha
    s, c = gmpy2.sin_cos(phi)
    # denominator 1 - mu*cos >= 1 - mu > 0, so atan2 stays on the principal branch
    return gmpy2.atan2(mu * s, 1 - mu * c) / pi

def _fprime(mu: Real, alpha: Real, t: Real) -> Real:
    pi = gmpy2.const_pi()
    c = gmpy2.cos((pi + pi) * t - alpha)
    mc = mu * c
    return 2 * (mc - mu * mu) / (1 - (mc + mc) + mu * mu)

def _apply(mu: Real, alpha: Real, t1: Real, t2: Real) -> tuple[Real, Real]:
    a = t1 + t2 + _f(mu, alpha, t1)
    return mod1(a + t1), mod1(a)

def _apply_inverse(mu: Real, alpha: Real, q1: Real, q2: Real) -> tuple[Real, Real]:
    t1 = mod1(q1 - q2)
    t2 = mod1(q2 - t1 - _f(mu, alpha, t1))
    return t1, t2


def deformation_f(theta: Real, params: MapParams) -> Real:
    """f(theta) in (-1/2, 1/2); 1-periodic, real-analytic."""
    if not (0 <= theta < 1):
        raise DomainError(f"theta must lie in [0,1), got {theta}")
    return _f(params.mu, params.alpha, theta)


def deformation_f_prime(theta: Real, params: MapParams) -> Real:
    """Analytic derivative f'(theta) = 2(mu*cos(phi) - mu^2)/(1 - 2mu*cos(phi) + mu^2).

    Obtained by differentiating -(1/pi)*arg(1 - mu*e^{i*phi}); cross-validated
    against central difference quotients in the verification suite.
    """
    if not (0 <= theta < 1):
        raise DomainError(f"theta must lie in [0,1), got {theta}")
    return _fprime(params.mu, params.alpha, theta)


def apply(params: MapParams, p: TorusPoint) -> TorusPoint:
    """One forward map step, coordinates wrapped to [0,1)."""
    t1, t2 = _apply(params.mu, params.alpha, p.theta1, p.theta2)
    return TorusPoint(t1, t2)


def apply_inverse(params: MapParams, q: TorusPoint) -> TorusPoint:
    """Exact closed-form inverse: t1 = q1 - q2, t2 = q2 - t1 - f(t1), both mod 1."""
    t1, t2 = _apply_inverse(params.mu, params.alpha, q.theta1, q.theta2)
    return TorusPoint(t1, t2)


def jacobian(params: MapParams, p: TorusPoint) -> Mat2:
    """DT(p) = [[2 + f'(t1), 1], [1 + f'(t1), 1]]; det = 1 identically."""
    fp = _fprime(params.mu, params.alpha, p.theta1)
    return Mat2(2 + fp, mpfr(1), 1 + fp, mpfr(1))


def fixed_point(params: MapParams) -> TorusPoint:
    """The unique fixed point ((1/pi)*atan(mu*sin(alpha)/(1 + mu*cos(alpha))), 0)."""
    s, c = gmpy2.sin_cos(params.alpha)
    t1 = gmpy2.atan2(params.mu * s, 1 + params.mu * c) / gmpy2.const_pi()
    return TorusPoint(mod1(t1), mpfr(0))


def fixed_point_trace(params: MapParams) -> Real:
    """Closed-form trace of the Jacobian at the fixed point: 1 + 2(1+mu*cos(alpha))/(1-mu^2)."""
    denom = 1 - params.mu * params.mu
    if denom == 0:
        raise ParameterError("trace formula requires mu < 1")
    return 1 + 2 * (1 + params.mu * gmpy2.cos(params.alpha)) / denom


@dataclass(frozen=True)
class ConeReport:
    """Result of scanning f' for the standard-quadrant invariant cone condition.

    cone_preserved means min f' > -1, which makes every entry of DT strictly
    positive, so DT maps the open positive quadrant strictly into itself
    (and its transpose inverse preserves the complementary cone).
    margin is min(2 + f', 1 + f') = 1 + min f'.
    """

    grid_n: int
    min_fprime: Real
    argmin_theta: Real
    closed_form_min: Real
    cone_preserved: bool
    margin: Real


def verify_cone_condition(params: MapParams, grid_n: int) -> ConeReport:
    """Scan f' on a uniform grid, refine around the minimizer, report the margin.

    The refined minimum is cross-checkable against the closed form
    2(-mu - mu^2)/(1 + 2mu + mu^2), attained where cos(2*pi*theta - alpha) = -1.
    A failed condition yields cone_preserved=False, not an exception.
    """
    if grid_n < 2:
        raise ParameterError(f"grid_n must be >= 2, got {grid_n}")
    mu, alpha = params.mu, params.alpha

    def g(t: Real) -> Real:
        return _fprime(mu, alpha, mod1(t))

    n = grid_n
    best_i = 0
    best_v = g(mpfr(0))
    for i in range(1, n):
        v = g(mpfr(i) / n)
        if v < best_v:
            best_v, best_i = v, i
    center = mpfr(best_i) / n
    width = mpfr(1) / n

    # coarse zoom passes shrink the bracket until it is safely unimodal
    for _ in range(4):
        best_t, best_v = center, g(center)
        for j in range(-4, 5):
            t = center + j * width / 4
            v = g(t)
            if v < best_v:
                best_v, best_t = v, t
        center, width = best_t, width / 4

    # golden-section refinement to ~1e-30 bracket width
    invphi = (gmpy2.sqrt(mpfr(5)) - 1) / 2
    a, b = center - width, center + width
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(160):
        if gc < gd:
            b, d, gd = d, c, gc
            c = b - invphi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + invphi * (b - a)
            gd = g(d)
    argmin = mod1((a + b) / 2)
    vmin = g(argmin)
    if best_v < vmin:
        argmin, vmin = mod1(center), best_v

    closed = 2 * (-mu - mu * mu) / (1 + 2 * mu + mu * mu)
    margin = 1 + vmin
    return ConeReport(
        grid_n=grid_n,
        min_fprime=vmin,
        argmin_theta=argmin,
        closed_form_min=closed,
        cone_preserved=bool(vmin > -1),
        margin=margin,
    )
