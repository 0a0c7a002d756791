#!/usr/bin/env python3
"""Print the frozen reference constants used in the test suite.

All values come from the mpmath oracle in tests/oracles.py (an implementation
independent of the package); anything this prints is pasted into tests as a
string constant, so rerunning it documents where those digits came from.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "tests"))

import mpmath as mp

import oracles

oracles.set_dps(50)

MU = mp.mpf("0.7")
ALPHA = mp.mpf("0.3")


def show(name, value, digits=40):
    print(f"{name} = {mp.nstr(value, digits)}")


def main():
    print(f"# oracle precision: {mp.mp.dps} decimal digits")
    print("# reference parameters mu = 0.7, alpha = 0.3 unless stated")
    show("f(0)", oracles.deformation(mp.mpf(0), MU, ALPHA))
    show("f'(0)", oracles.deformation_prime(mp.mpf(0), MU, ALPHA))
    show("min f' (= -2 mu/(1+mu))", -2 * MU / (1 + MU))
    t1_star = oracles.fixed_point(MU, ALPHA)[0]
    show("theta1*", t1_star)
    show("trace at theta*", oracles.fixed_point_trace(MU, ALPHA))
    lam_u, lam_s, e_u, e_s = oracles.fixed_point_eigen(MU, ALPHA)
    show("lambda_u*", lam_u)
    show("lambda_s*", lam_s)
    show("e_u*[0]", e_u[0])
    show("e_u*[1]", e_u[1])
    show("e_s*[0]", e_s[0])
    show("e_s*[1]", e_s[1])

    for pt in [("0.25", "0.5"), ("0.1", "0.1")]:
        p = (mp.mpf(pt[0]), mp.mpf(pt[1]))
        lu, _ = oracles.unstable_pair(p, MU, ALPHA, L=150)
        ls, _ = oracles.stable_pair(p, MU, ALPHA, L=150)
        show(f"lambda_u{pt}", lu)
        show(f"lambda_s{pt}", ls)

    d1 = oracles.diff1_oracle((mp.mpf("0.1"), mp.mpf("0.1")), mp.mpf("1e-4"), MU, ALPHA, L=150)
    show("d1 at (0.1,0.1), h=1e-4", d1)

    lam_cat, log_lam = oracles.cat_constants()
    show("cat-map lambda_u", lam_cat)
    show("ln cat-map lambda_u", log_lam)


if __name__ == "__main__":
    main()
