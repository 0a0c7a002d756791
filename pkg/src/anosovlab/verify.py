"""Self-contained invariant suites: exact identities of the map family checked
at the working precision, plus the unperturbed-map oracle.

Each check returns a CheckResult with the observed worst case and its bound;
bounds are expressed through ulp_scale so they tighten automatically at higher
working precision (literal bounds are kept only where a check certifies a
fixed number of digits, e.g. the closed-form derivative validation).
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
import numpy as np
from gmpy2 import mpfr

from . import blaschke
from .blaschke import (
    MapParams,
    TorusPoint,
    apply,
    apply_inverse,
    fixed_point,
    fixed_point_trace,
    jacobian,
    torus_dist,
    verify_cone_condition,
)
from .extprec import format_sci, get_precision, precision, ulp_scale
from .regularity import GridSpec, diff2, grid_points
from .splitting import compute_sample, unstable_data

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class CheckResult:
    """One invariant suite outcome; observed/bound kept as strings so results
    survive precision changes."""

    name: str
    passed: bool
    observed: str
    bound: str
    detail: str = ""


def _result(name: str, worst, bound, detail: str = "") -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(worst < bound),
        observed=format_sci(worst, 3),
        bound=format_sci(bound, 3),
        detail=detail,
    )


def _random_points(n: int, seed: int) -> list[TorusPoint]:
    rng = np.random.default_rng(seed)
    return [TorusPoint(mpfr(a), mpfr(b)) for a, b in rng.random((n, 2))]


def check_fixed_point(params: MapParams) -> CheckResult:
    star = fixed_point(params)
    d = torus_dist(apply(params, star), star)
    return _result("fixed-point residual", d, ulp_scale(13), detail=f"theta* = {star.theta1}")


def check_trace(params: MapParams) -> CheckResult:
    closed = fixed_point_trace(params)
    numeric = jacobian(params, fixed_point(params)).trace()
    rel = abs(closed - numeric) / abs(closed)
    return _result("trace identity", rel, ulp_scale(13))


def check_jacobian_det(params: MapParams, n: int = 1000, seed: int = DEFAULT_SEED) -> CheckResult:
    worst = mpfr(0)
    for p in _random_points(n, seed):
        worst = max(worst, abs(jacobian(params, p).det() - 1))
    return _result("area preservation (det = 1)", worst, ulp_scale(13), detail=f"{n} points")


def check_round_trip(params: MapParams, n: int = 1000, seed: int = DEFAULT_SEED) -> CheckResult:
    worst = mpfr(0)
    for p in _random_points(n, seed):
        worst = max(worst, torus_dist(apply_inverse(params, apply(params, p)), p))
    return _result("inverse round trip", worst, ulp_scale(13), detail=f"{n} points")


def check_fprime(params: MapParams, n: int = 50, seed: int = DEFAULT_SEED) -> CheckResult:
    """Closed-form derivative of the deformation against a central difference.

    The quotient at h = 1e-20 is evaluated at 4x the working precision;
    at the working precision itself the cancellation would swamp the bound.
    """
    pts = _random_points(n, seed)
    closed = [blaschke._fprime(params.mu, params.alpha, p.theta1) for p in pts]
    worst = mpfr(0)
    with precision(4 * get_precision()):
        h = mpfr("1e-20")
        for p, c in zip(pts, closed):
            quot = (
                blaschke._f(params.mu, params.alpha, p.theta1 + h)
                - blaschke._f(params.mu, params.alpha, p.theta1 - h)
            ) / (2 * h)
            worst = max(worst, abs(quot - mpfr(c)))
        bound = mpfr("1e-25")
        result = _result("deformation derivative formula", worst, bound, detail=f"{n} points")
    return result


def check_cone(params: MapParams, grid_n: int = 4096) -> CheckResult:
    report = verify_cone_condition(params, grid_n)
    if report.closed_form_min == 0:
        agree = abs(report.min_fprime - report.closed_form_min)
    else:
        agree = abs(report.min_fprime - report.closed_form_min) / abs(report.closed_form_min)
    ok = report.cone_preserved and agree < mpfr("1e-10")
    return CheckResult(
        name="invariant cone condition",
        passed=bool(ok),
        observed=format_sci(report.min_fprime, 12),
        bound="min f' > -1, closed form to 10 digits",
        detail=f"margin 1 + min f' = {format_sci(report.margin, 3)}",
    )


def check_mu0_oracle(L: int = 100) -> CheckResult:
    """Unperturbed map: constant rate (3 + sqrt 5)/2 and exactly flat field."""
    cat = MapParams(mpfr(0), mpfr(0))
    lam_exact = (3 + gmpy2.sqrt(mpfr(5))) / 2
    worst = mpfr(0)
    for p in grid_points(GridSpec(3, 3, "cell_center")):
        lam, _ = unstable_data(cat, p, L)
        worst = max(worst, abs(lam - lam_exact))
    d2 = diff2(cat, TorusPoint(mpfr("0.5"), mpfr("0.5")), mpfr("1e-4"), L)
    ok = worst < ulp_scale(13) and abs(d2) < mpfr("1e-20")
    return CheckResult(
        name="linear-map oracle",
        passed=bool(ok),
        observed=format_sci(worst, 3),
        bound=format_sci(ulp_scale(13), 3),
        detail=f"|second difference| = {format_sci(abs(d2), 3)} < 1e-20",
    )


def check_residuals(
    params: MapParams, n: int = 20, L: int = 200, seed: int = DEFAULT_SEED
) -> CheckResult:
    worst = mpfr(0)
    for p in _random_points(n, seed):
        s = compute_sample(params, p, L)
        worst = max(worst, s.residual_u, s.residual_s)
    return _result(
        "splitting invariance residuals", worst, ulp_scale(30), detail=f"{n} points, L = {L}"
    )


def run_all(params: MapParams, orbit_len: int = 200, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    return [
        check_fixed_point(params),
        check_trace(params),
        check_jacobian_det(params, seed=seed),
        check_round_trip(params, seed=seed),
        check_fprime(params, seed=seed),
        check_cone(params),
        check_mu0_oracle(),
        check_residuals(params, L=orbit_len, seed=seed),
    ]


def format_report(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"[{status}] {r.name:<{width}}  observed {r.observed}  bound {r.bound}"
        if r.detail:
            line += f"  ({r.detail})"
        lines.append(line)
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} checks passed")
    return "\n".join(lines)
