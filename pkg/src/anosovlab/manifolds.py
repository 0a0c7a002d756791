"""Finite-length stable/unstable manifolds of the fixed point.

A fundamental segment [eps, rate*eps] along the eigendirection is iterated
(forward map for the unstable manifold, exact inverse for the stable one, in
which case rate = 1/lambda_s); successive iterates of the segment tile the
manifold without gaps.  Adaptive bisection of the seed parameter keeps
consecutive image points within the requested torus-metric spacing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import gmpy2
from gmpy2 import mpfr

from .blaschke import MapParams, TorusPoint, _apply, _apply_inverse, fixed_point, jacobian
from .extprec import ParameterError, Real, Vec2, mod1, normalize, torus_delta

MAX_BISECTION_DEPTH = 60


class NonHyperbolicError(ArithmeticError):
    """Fixed-point Jacobian has no real eigenvalue gap (tr^2 <= 4)."""


class SpacingUnreachableError(RuntimeError):
    """Bisection could not reach the requested spacing within the depth limit."""

    def __init__(self, which: str, t_lo: Real, t_hi: Real):
        self.which = which
        self.t_lo = t_lo
        self.t_hi = t_hi
        super().__init__(
            f"spacing unreachable on {which} manifold between parameters {t_lo} and {t_hi}"
        )

    def __reduce__(self):
        return (type(self), (self.which, self.t_lo, self.t_hi))


@dataclass(frozen=True)
class ManifoldCurve:
    """Ordered trace of one manifold branch.

    points[i] sits at global parameter params[i] (= seed offset stretched by
    the accumulated eigenrate); breaks[i] marks that the curve wrapped around
    a torus boundary between i-1 and i, so plots should start a new segment.
    """

    which: Literal["stable", "unstable"]
    seed_eps: Real
    spacing: Real
    points: list[TorusPoint] = field(default_factory=list)
    params: list[Real] = field(default_factory=list)
    depths: list[int] = field(default_factory=list)
    breaks: list[bool] = field(default_factory=list)


def eigen_rates_at_fixed_point(params: MapParams) -> tuple[Real, Real]:
    """(lambda_u*, lambda_s*) of DT at the fixed point, from trace and det = 1."""
    dt = jacobian(params, fixed_point(params))
    tr = dt.trace()
    disc = tr * tr - 4
    if disc <= 0:
        raise NonHyperbolicError(f"tr^2 - 4 = {disc} <= 0 at the fixed point")
    root = gmpy2.sqrt(disc)
    return (tr + root) / 2, (tr - root) / 2


def eigen_directions_at_fixed_point(params: MapParams) -> tuple[Vec2, Vec2]:
    """Unit eigenvectors (e_u*, e_s*) of the fixed-point Jacobian.

    Sign conventions match the splitting module: e_u* has nonnegative
    components, e_s* has first component <= 0 and second >= 0.
    """
    dt = jacobian(params, fixed_point(params))
    lam_u, lam_s = eigen_rates_at_fixed_point(params)
    # rows (a11 - lam, a12) give eigenvector (1, lam - a11) since a12 = 1
    e_u, _ = normalize(Vec2(mpfr(1), lam_u - dt.a11))
    e_s, _ = normalize(Vec2(mpfr(1), lam_s - dt.a11))
    if e_u.x + e_u.y < 0:
        e_u = -e_u
    if e_s.y < 0 or (e_s.y == 0 and e_s.x > 0):
        e_s = -e_s
    return e_u, e_s


def _torus_gap(a: tuple[Real, Real], b: tuple[Real, Real]) -> Real:
    d1 = torus_delta(a[0], b[0])
    d2 = torus_delta(a[1], b[1])
    return gmpy2.sqrt(d1 * d1 + d2 * d2)


def trace_manifold(
    params: MapParams,
    which: Literal["stable", "unstable"],
    seed_eps: Real,
    spacing: Real,
    max_points: int,
) -> ManifoldCurve:
    """Trace one manifold branch of the fixed point out to max_points points.

    Points are ordered by the global parameter t * rate^depth; consecutive
    points are within `spacing` in the torus metric (this is exactly the
    bisection termination criterion).
    """
    seed_eps = mpfr(seed_eps)
    spacing = mpfr(spacing)
    if which not in ("stable", "unstable"):
        raise ParameterError(f"which must be 'stable' or 'unstable', got {which!r}")
    if not (0 < seed_eps <= mpfr("1e-6")):
        raise ParameterError(f"seed_eps must lie in (0, 1e-6], got {seed_eps}")
    if not spacing > 0:
        raise ParameterError(f"spacing must be positive, got {spacing}")
    if max_points < 2:
        raise ParameterError(f"max_points must be >= 2, got {max_points}")

    mu, alpha = params.mu, params.alpha
    star = fixed_point(params)
    e_u, e_s = eigen_directions_at_fixed_point(params)
    lam_u, lam_s = eigen_rates_at_fixed_point(params)
    if which == "unstable":
        direction, rate, step = e_u, lam_u, _apply
    else:
        direction, rate, step = e_s, 1 / lam_s, _apply_inverse

    def image(depth: int, t: Real) -> tuple[Real, Real]:
        c1 = mod1(star.theta1 + t * direction.x)
        c2 = mod1(star.theta2 + t * direction.y)
        for _ in range(depth):
            c1, c2 = step(mu, alpha, c1, c2)
        return c1, c2

    t_lo, t_hi = seed_eps, seed_eps * rate
    out_points: list[tuple[Real, Real]] = []
    out_params: list[Real] = []
    out_depths: list[int] = []

    def bisect(depth, ta, pa, tb, pb, level, scale):
        # emits the open interval (ta, tb]; caller has already emitted ta
        if _torus_gap(pa, pb) <= spacing:
            # midpoint probe: a dense curve can fold back within `spacing` of
            # itself, so a short chord alone does not prove the gap is resolved
            if level >= MAX_BISECTION_DEPTH:
                out_points.append(pb)
                out_params.append(tb * scale)
                out_depths.append(depth)
                return
            tm = (ta + tb) / 2
            pm = image(depth, tm)
            if _torus_gap(pa, pm) <= spacing and _torus_gap(pm, pb) <= spacing:
                out_points.append(pb)
                out_params.append(tb * scale)
                out_depths.append(depth)
                return
        else:
            if level >= MAX_BISECTION_DEPTH:
                raise SpacingUnreachableError(which, ta, tb)
            tm = (ta + tb) / 2
            pm = image(depth, tm)
        bisect(depth, ta, pa, tm, pm, level + 1, scale)
        if len(out_points) >= max_points:
            return
        bisect(depth, tm, pm, tb, pb, level + 1, scale)

    depth = 0
    scale = mpfr(1)
    while len(out_points) < max_points:
        pa = image(depth, t_lo)
        pb = image(depth, t_hi)
        if depth == 0:
            out_points.append(pa)
            out_params.append(t_lo)
            out_depths.append(0)
        bisect(depth, t_lo, pa, t_hi, pb, 0, scale)
        depth += 1
        scale = scale * rate

    out_points = out_points[:max_points]
    out_params = out_params[:max_points]
    out_depths = out_depths[:max_points]

    points = [TorusPoint(c1, c2) for c1, c2 in out_points]
    breaks = [False]
    half = mpfr("0.5")
    for i in range(1, len(points)):
        jump1 = abs(points[i].theta1 - points[i - 1].theta1) > half
        jump2 = abs(points[i].theta2 - points[i - 1].theta2) > half
        breaks.append(bool(jump1 or jump2))
    return ManifoldCurve(
        which=which,
        seed_eps=seed_eps,
        spacing=spacing,
        points=points,
        params=out_params,
        depths=out_depths,
        breaks=breaks,
    )
