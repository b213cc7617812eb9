#!/usr/bin/env python3
"""Regenerate the frozen high-precision reference values used by the test suite.

Writes CSV fixtures into crates/core/tests/data/. Requires mpmath.
"""
import os
import random

import mpmath as mp

mp.mp.dps = 30
OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "data")


def fmt(x):
    return mp.nstr(mp.mpf(x), 20, min_fixed=-30, max_fixed=30)


def zeta_jets():
    rng = random.Random(20240501)
    rows = []
    for _ in range(500):
        sigma = rng.uniform(-2.0, 4.0)
        t = rng.uniform(-1000.0, 1000.0)
        s = mp.mpc(sigma, t)
        vals = [mp.zeta(s, 1, k) for k in range(4)]
        rows.append([sigma, t] + [c for v in vals for c in (v.real, v.imag)])
    with open(os.path.join(OUT, "zeta_jets.csv"), "w") as f:
        f.write("sigma,t,z0_re,z0_im,z1_re,z1_im,z2_re,z2_im,z3_re,z3_im\n")
        for r in rows:
            f.write(",".join([repr(r[0]), repr(r[1])] + [fmt(x) for x in r[2:]]) + "\n")


def log_gammas():
    pts = [(5, 3), (0.25, 1000), (0.3, -20), (-3.7, 2.2), (12.5, -0.5), (1e-3, 1e-3), (-0.5, 0.0), (1050.0, 1800.0)]
    with open(os.path.join(OUT, "log_gamma.csv"), "w") as f:
        f.write("re,im,lg_re,lg_im,psi_re,psi_im,psi1_re,psi1_im\n")
        for a, b in pts:
            z = mp.mpc(a, b)
            lg = mp.loggamma(z)
            p0 = mp.digamma(z)
            p1 = mp.psi(1, z)
            f.write(",".join([repr(float(a)), repr(float(b))] + [fmt(x) for x in (lg.real, lg.imag, p0.real, p0.imag, p1.real, p1.imag)]) + "\n")


def constants():
    with open(os.path.join(OUT, "constants.csv"), "w") as f:
        f.write("name,value\n")
        f.write("euler," + fmt(mp.euler) + "\n")
        f.write("stieltjes1," + fmt(mp.stieltjes(1)) + "\n")
        f.write("zpp_over_zp_at_0," + fmt(mp.zeta(0, 1, 2) / mp.zeta(0, 1, 1)) + "\n")


def real_prime_zeros():
    with open(os.path.join(OUT, "real_zeta_prime_zeros.csv"), "w") as f:
        f.write("n,value\n")
        total = mp.mpf(0)
        for n in range(1, 31):
            lo, hi = mp.mpf(-2 * n - 2), mp.mpf(-2 * n)
            flo = mp.zeta(lo, 1, 1)
            for _ in range(120):
                mid = (lo + hi) / 2
                fm = mp.zeta(mid, 1, 1)
                if (fm < 0) == (flo < 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            r = (lo + hi) / 2
            assert -2 * n - 2 < r < -2 * n
            total += 1 / r + mp.mpf(1) / (2 * n)
            f.write("%d,%s\n" % (n, fmt(r)))
    print("30-term real sum", total)


def riemann_zeros():
    with open(os.path.join(OUT, "riemann_zeros.csv"), "w") as f:
        f.write("index,gamma\n")
        n = 1
        while True:
            g = mp.zetazero(n).imag
            if g > 1030:
                break
            f.write("%d,%s\n" % (n, fmt(g)))
            n += 1
    print("zeros below 1000:", mp.nzeros(1000))


def prime_zeros_low():
    seeds = [(2.46, 23.30), (1.29, 31.71), (2.31, 38.85), (1.38, 42.96)]
    with open(os.path.join(OUT, "zeta_prime_zeros_low.csv"), "w") as f:
        f.write("beta,gamma\n")
        for b, g in seeds:
            r = mp.findroot(lambda s: mp.zeta(s, 1, 1), mp.mpc(b, g))
            f.write("%s,%s\n" % (fmt(r.real), fmt(r.imag)))


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    constants()
    log_gammas()
    real_prime_zeros()
    prime_zeros_low()
    riemann_zeros()
    zeta_jets()
