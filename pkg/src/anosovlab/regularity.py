"""Expansion-rate fields and finite-difference regularity diagnostics.

Central pieces: lambda_u on uniform phase-space grids, the symmetric first
difference quotient

    d1(h) = [lambda_u(t1, t2+h) - lambda_u(t1, t2-h)] / (2h)

and the second difference quotient

    d2(h) = [lambda_u(t1, t2+h) + lambda_u(t1, t2-h) - 2 lambda_u(t1, t2)] / h^2,

both taken in the t2 direction with offsets mod 1.  d1 converges to a limit
at rate O(h); d2 is a diverging diagnostic (logarithmic growth as h -> 0),
never a derivative.  Offsets must respect the cancellation floors: lambda_u
carries roundoff of order 2^(20-prec), which division by h or h^2 amplifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Literal

import gmpy2
from gmpy2 import mpfr

from .blaschke import MapParams, TorusPoint
from .extprec import DomainError, ParameterError, Real, mod1, real, ulp_scale
from .splitting import unstable_data


class PrecisionFloorError(ValueError):
    """Offset below the cancellation floor of the working precision."""

    def __init__(self, h: Real, min_h: Real, order: int):
        self.h = h
        self.min_h = min_h
        self.order = order
        super().__init__(
            f"offset h = {h} is below the order-{order} difference floor at "
            f"{gmpy2.get_context().precision} bits; minimum usable h is {min_h}"
        )

    def __reduce__(self):  # survive the pool-worker pickle round trip
        return (type(self), (self.h, self.min_h, self.order))


@dataclass(frozen=True)
class GridSpec:
    """Uniform n1 x n2 lattice on [0,1)^2, anchored at cell corners or centers."""

    n1: int
    n2: int
    offset_mode: Literal["cell_corner", "cell_center"] = "cell_corner"

    def __post_init__(self):
        if self.n1 < 1 or self.n2 < 1:
            raise ParameterError(f"grid dimensions must be >= 1, got {self.n1} x {self.n2}")
        if self.offset_mode not in ("cell_corner", "cell_center"):
            raise ParameterError(f"unknown offset_mode {self.offset_mode!r}")


@dataclass(frozen=True)
class DiffRecord:
    """Difference quotients of lambda_u at one (point, offset) pair."""

    point: TorusPoint
    h: Real
    d1: Real
    d2: Real
    lambda_u: Real


@dataclass(frozen=True)
class PointScan:
    """All offsets at one point: records sorted by descending h, plus the
    reference quotient at h_ref and the fitted log-log convergence slope.

    fit_degenerate is set when fewer than 3 offsets rise above the noise
    window, in which case fitted_slope is None (e.g. the unperturbed map,
    where d1 is pure roundoff)."""

    point: TorusPoint
    lambda_u: Real
    d1_ref: Real
    records: list[DiffRecord]
    fitted_slope: Real | None
    fit_degenerate: bool


@dataclass(frozen=True)
class ScanResult:
    scans: list[PointScan]
    h_ref: Real
    orbit_len: int


def grid_points(grid: GridSpec) -> list[TorusPoint]:
    """Row-major lattice points, (i + off)/n1 by (j + off)/n2."""
    off = mpfr(0) if grid.offset_mode == "cell_corner" else mpfr("0.5")
    pts = []
    for i in range(grid.n1):
        t1 = (i + off) / grid.n1
        for j in range(grid.n2):
            pts.append(TorusPoint(t1, (j + off) / grid.n2))
    return pts


def expansion_grid(
    params: MapParams,
    grid: GridSpec,
    L: int,
    map_fn: Callable = map,
) -> list[tuple[TorusPoint, Real]]:
    """lambda_u at every grid point, row-major.  map_fn may be a pool mapper;
    results are assembled in deterministic grid order regardless."""
    pts = grid_points(grid)
    rates = list(map_fn(_RateJob(params, L), pts))
    return list(zip(pts, rates))


class _RateJob:
    """Picklable lambda_u evaluator for pool workers."""

    def __init__(self, params: MapParams, L: int):
        self.params = params
        self.L = L

    def __call__(self, p: TorusPoint) -> Real:
        return unstable_data(self.params, p, self.L)[0]


def min_offset(order: int) -> Real:
    """Smallest usable h for the given difference order at the working precision.

    First differences need h >= 2^(40-prec); second differences divide by h^2,
    so h^2 >= 2^(40-prec)."""
    if order == 1:
        return ulp_scale(40)
    if order == 2:
        return gmpy2.exp2(mpfr(40 - gmpy2.get_context().precision) / 2)
    raise ParameterError(f"difference order must be 1 or 2, got {order}")


def _check_offset(h: Real, order: int) -> Real:
    h = real(h)
    if not (h > 0 and h < mpfr("0.5")):
        raise DomainError(f"offset h must lie in (0, 0.5), got {h}")
    floor = min_offset(order)
    if h < floor:
        raise PrecisionFloorError(h, floor, order)
    return h


def _shifted(p: TorusPoint, h: Real, axis: int) -> TorusPoint:
    if axis == 2:
        return TorusPoint(p.theta1, mod1(p.theta2 + h))
    if axis == 1:
        return TorusPoint(mod1(p.theta1 + h), p.theta2)
    raise ParameterError(f"axis must be 1 or 2, got {axis}")


def diff1(params: MapParams, p: TorusPoint, h: Real, L: int, axis: int = 2) -> Real:
    """Symmetric first difference quotient of lambda_u at offset h."""
    h = _check_offset(h, 1)
    lam_p, _ = unstable_data(params, _shifted(p, h, axis), L)
    lam_m, _ = unstable_data(params, _shifted(p, -h, axis), L)
    return (lam_p - lam_m) / (2 * h)


def diff2(params: MapParams, p: TorusPoint, h: Real, L: int, axis: int = 2) -> Real:
    """Second difference quotient of lambda_u at offset h (diverging diagnostic)."""
    h = _check_offset(h, 2)
    lam_p, _ = unstable_data(params, _shifted(p, h, axis), L)
    lam_m, _ = unstable_data(params, _shifted(p, -h, axis), L)
    lam_0, _ = unstable_data(params, p, L)
    return (lam_p + lam_m - 2 * lam_0) / (h * h)


def noise_floor_d1(h: Real) -> Real:
    """Roundoff scale of d1: lambda_u carries ~2^(20-prec), divided by h."""
    return ulp_scale(20) / h


def _fit_slope(
    h_list: list[Real], d1_list: list[Real], d1_ref: Real, h_ref: Real
) -> tuple[Real | None, bool]:
    """Least-squares slope of ln|d1 - d1_ref| against ln h.

    Offsets inside 10x the noise floor or within a factor 100 of h_ref are
    excluded; fewer than 3 surviving offsets flags the fit degenerate."""
    xs, ys = [], []
    for h, d1 in zip(h_list, d1_list):
        err = abs(d1 - d1_ref)
        if err == 0 or err <= 10 * noise_floor_d1(h):
            continue
        if h <= 100 * h_ref:
            continue
        xs.append(gmpy2.log(h))
        ys.append(gmpy2.log(err))
    if len(xs) < 3:
        return None, True
    n = len(xs)
    xbar = sum(xs) / n
    ybar = sum(ys) / n
    sxx = sum((x - xbar) ** 2 for x in xs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    return sxy / sxx, False


def point_scan(
    params: MapParams,
    p: TorusPoint,
    h_list: Iterable[Real],
    h_ref: Real,
    L: int,
    axis: int = 2,
) -> PointScan:
    """Reference quotient plus (d1, d2) for each offset at one point.

    lambda_u at the center is evaluated once and shared by all second
    differences, matching pointwise diff2 output bitwise."""
    hs = sorted((real(h) for h in h_list), reverse=True)
    if not hs:
        raise ParameterError("h_list must be nonempty")
    h_ref = real(h_ref)
    if not h_ref < hs[-1]:
        raise ParameterError(f"h_ref = {h_ref} must be smaller than min(h_list) = {hs[-1]}")
    lam_0, _ = unstable_data(params, p, L)
    d1_ref = diff1(params, p, h_ref, L, axis)
    records = []
    d1s = []
    for h in hs:
        h = _check_offset(h, 2)
        lam_p, _ = unstable_data(params, _shifted(p, h, axis), L)
        lam_m, _ = unstable_data(params, _shifted(p, -h, axis), L)
        d1 = (lam_p - lam_m) / (2 * h)
        d2 = (lam_p + lam_m - 2 * lam_0) / (h * h)
        records.append(DiffRecord(point=p, h=h, d1=d1, d2=d2, lambda_u=lam_0))
        d1s.append(d1)
    slope, degenerate = _fit_slope(hs, d1s, d1_ref, h_ref)
    return PointScan(
        point=p,
        lambda_u=lam_0,
        d1_ref=d1_ref,
        records=records,
        fitted_slope=slope,
        fit_degenerate=degenerate,
    )


def h_scan(
    params: MapParams,
    grid: GridSpec,
    h_list: Iterable[Real],
    h_ref: Real,
    L: int,
    map_fn: Callable = map,
) -> ScanResult:
    """point_scan over a whole grid, row-major order."""
    hs = [real(h) for h in h_list]
    h_ref = real(h_ref)
    pts = grid_points(grid)
    scans = list(map_fn(_ScanJob(params, hs, h_ref, L), pts))
    return ScanResult(scans=scans, h_ref=h_ref, orbit_len=L)


class _ScanJob:
    def __init__(self, params: MapParams, hs: list[Real], h_ref: Real, L: int):
        self.params = params
        self.hs = hs
        self.h_ref = h_ref
        self.L = L

    def __call__(self, p: TorusPoint) -> PointScan:
        return point_scan(self.params, p, self.hs, self.h_ref, self.L)


def highlight_points() -> list[TorusPoint]:
    """Five fixed generic points emphasized in offset-sweep outputs."""
    coords = [("0.1", "0.1"), ("0.3", "0.7"), ("0.5", "0.5"), ("0.7", "0.3"), ("0.9", "0.9")]
    return [TorusPoint(real(a), real(b)) for a, b in coords]


def decade_offsets(h_max: Real, h_min: Real, points_per_decade: int = 1) -> list[Real]:
    """Logarithmically spaced offsets from h_max down to h_min, inclusive."""
    h_max, h_min = real(h_max), real(h_min)
    if not (0 < h_min <= h_max < 1):
        raise ParameterError(f"need 0 < h_min <= h_max < 1, got {h_min}, {h_max}")
    if points_per_decade < 1:
        raise ParameterError("points_per_decade must be >= 1")
    e_hi = gmpy2.log10(h_max)
    e_lo = gmpy2.log10(h_min)
    n = int(gmpy2.ceil((e_hi - e_lo) * points_per_decade)) + 1
    if n == 1:
        return [h_max]
    out = []
    for k in range(n):
        e = e_hi + (e_lo - e_hi) * k / (n - 1)
        out.append(gmpy2.exp10(e))
    return out
