"""Independent mpmath reference implementations used to freeze expected values.

Everything here is deliberately built on mpmath primitives only (complex
argument, matrix inverse, atan2) and never imports the package under test, so
agreement between the two routes is meaningful.  Run
scripts/compute_reference_values.py to print the frozen constants.
"""

import mpmath as mp

DPS = 50


def set_dps(d: int = DPS) -> None:
    mp.mp.dps = d


def mod1(x):
    return x - mp.floor(x)


def deformation(theta, mu, alpha):
    """-(1/pi) arg(1 - mu e^{i(2 pi theta - alpha)}); the complex-arg route."""
    phi = 2 * mp.pi * theta - alpha
    return -mp.arg(1 - mu * mp.expj(phi)) / mp.pi


def deformation_prime(theta, mu, alpha):
    phi = 2 * mp.pi * theta - alpha
    c = mp.cos(phi)
    return 2 * (mu * c - mu**2) / (1 - 2 * mu * c + mu**2)


def apply_map(p, mu, alpha):
    t1, t2 = p
    ft = deformation(t1, mu, alpha)
    return (mod1(2 * t1 + t2 + ft), mod1(t1 + t2 + ft))


def apply_inverse(q, mu, alpha):
    q1, q2 = q
    t1 = mod1(q1 - q2)
    t2 = mod1(q2 - t1 - deformation(t1, mu, alpha))
    return (t1, t2)


def jacobian(theta1, mu, alpha):
    fp = deformation_prime(theta1, mu, alpha)
    return mp.matrix([[2 + fp, 1], [1 + fp, 1]])


def fixed_point(mu, alpha):
    t1 = mod1(mp.atan2(mu * mp.sin(alpha), 1 + mu * mp.cos(alpha)) / mp.pi)
    return (t1, mp.mpf(0))


def fixed_point_trace(mu, alpha):
    # closed form independent of the Jacobian route
    return (3 - mu**2 + 2 * mu * mp.cos(alpha)) / (1 - mu**2)


def fixed_point_eigen(mu, alpha):
    """(lam_u, lam_s, e_u, e_s) at the fixed point, unit eigenvectors with the
    sign conventions of the package (e_u componentwise >= 0; e_s x <= 0 <= y)."""
    tr = fixed_point_trace(mu, alpha)
    root = mp.sqrt(tr * tr - 4)
    lam_u, lam_s = (tr + root) / 2, (tr - root) / 2
    t1 = fixed_point(mu, alpha)[0]
    a11 = 2 + deformation_prime(t1, mu, alpha)

    def unit(lam):
        v = mp.matrix([1, lam - a11])
        return v / mp.norm(v)

    e_u, e_s = unit(lam_u), unit(lam_s)
    if e_u[0] + e_u[1] < 0:
        e_u = -e_u
    if e_s[1] < 0:
        e_s = -e_s
    return lam_u, lam_s, e_u, e_s


def unstable_pair(p, mu, alpha, L=150):
    """(lambda_u(p), e_u(p)) by power iteration along the backward orbit."""
    orbit = [tuple(p)]
    for _ in range(L):
        orbit.append(apply_inverse(orbit[-1], mu, alpha))
    v = mp.matrix([1, 1]) / mp.sqrt(2)
    for k in range(L, 0, -1):
        # DT at orbit[k] carries tangent vectors at T^{-k}p to T^{-k+1}p
        v = jacobian(orbit[k][0], mu, alpha) * v
        v = v / mp.norm(v)
    if v[0] + v[1] < 0:
        v = -v
    w = jacobian(p[0], mu, alpha) * v
    return mp.norm(w), v


def stable_pair(p, mu, alpha, L=150):
    """(lambda_s(p), e_s(p)) by power iteration of the explicit matrix inverse
    along the forward orbit (mpmath's inverse, not an adjugate shortcut)."""
    orbit = [tuple(p)]
    for _ in range(L):
        orbit.append(apply_map(orbit[-1], mu, alpha))
    v = mp.matrix([-1, 1]) / mp.sqrt(2)
    for k in range(L, 0, -1):
        v = jacobian(orbit[k - 1][0], mu, alpha) ** -1 * v
        v = v / mp.norm(v)
    if v[1] < 0:
        v = -v
    w = jacobian(p[0], mu, alpha) * v
    return mp.norm(w), v


def diff1_oracle(p, h, mu, alpha, L=150):
    """Symmetric first difference of lambda_u in the theta2 direction."""
    lam_p, _ = unstable_pair((p[0], mod1(p[1] + h)), mu, alpha, L)
    lam_m, _ = unstable_pair((p[0], mod1(p[1] - h)), mu, alpha, L)
    return (lam_p - lam_m) / (2 * h)


def cat_constants():
    lam = (3 + mp.sqrt(5)) / 2
    return lam, mp.log(lam)
