"""Arbitrary-precision golden values for the 1D interval problems.

Solves the 2x2 interface system for (C_l, C_r) directly with mpmath (60 digits plus
headroom for the exponentials), and the homogeneous 1D problem with prescribed end values, then
writes tests/data/golden_exact1d.json.  The library never imports this file.

    python3 scripts/golden_exact1d.py
"""
import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 60

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "golden_exact1d.json"

# (name, b_l, b_r, f_l, f_r, a)
INTERVAL_CASES = [
    ("film_k0_a1e-4", "0", "3", "0.5", "0.99", "1e-4"),
    ("film_k0_a1e-6", "0", "3", "0.5", "0.99", "1e-6"),
    ("film_k0_a1e-2", "0", "3", "0.5", "0.99", "1e-2"),
    ("asym_a1e-2", "0", "1.3", "0.2", "0.5", "1e-2"),
    ("sym_box_a1e-4", "-1", "1", "-0.5", "0.5", "1e-4"),
    ("wide_a1", "-2", "5", "0.1", "0.35", "1"),
]

# (name, b_l, b_r, f_l, f_r, a, c_l, c_r): -a d'' + d = 0 in the void, d'' = 0 in the
# film, d(b_l) = c_l, d(b_r) = c_r.
HOMOGENEOUS_CASES = [
    ("hom_sym_box_a1e-2", "-1", "1", "-0.5", "0.5", "1e-2", "1", "0"),
    ("hom_sym_box_a1e-1", "-1", "1", "-0.5", "0.5", "1e-1", "1", "-0.5"),
]


def _working_digits(b_l, b_r, f_l, f_r, a):
    # exp(alpha + beta) entries need that many extra decimal digits to stay resolvable
    span = (float(b_r) - float(b_l)) / float(a) ** 0.5
    return 60 + int(span / 2.0)


def interval_case(b_l, b_r, f_l, f_r, a):
    mp.mp.dps = _working_digits(b_l, b_r, f_l, f_r, a)
    b_l, b_r, f_l, f_r, a = map(mp.mpf, (b_l, b_r, f_l, f_r, a))
    sa = mp.sqrt(a)
    T = f_r - f_l
    al = (f_l - b_l) / sa
    be = (b_r - f_r) / sa
    k = T / sa
    M = mp.matrix([[mp.sinh(al) + k * mp.cosh(al), mp.sinh(be)],
                   [mp.sinh(al), mp.sinh(be) + k * mp.cosh(be)]])
    C = mp.lu_solve(M, mp.matrix([k / sa, k / sa]))
    C_l, C_r = C[0], C[1]
    slope = (C_l * mp.sinh(al) + C_r * mp.sinh(be)) / T
    h = 2 / (sa * slope)

    def s(y):
        y = mp.mpf(y)
        if y <= f_l:
            return -C_l * mp.sinh((y - b_l) / sa)
        if y >= f_r:
            return -C_r * mp.sinh((y - b_r) / sa)
        return -C_l * mp.sinh(al) + slope * (y - f_l)

    probes = [b_l + (f_l - b_l) * mp.mpf(t) for t in ("0.25", "0.9", "0.999")]
    probes += [f_l + T * mp.mpf("0.5")]
    probes += [f_r + (b_r - f_r) * mp.mpf(t) for t in ("0.001", "0.1", "0.75")]
    return {
        "C_l": mp.nstr(C_l, 30),
        "C_r": mp.nstr(C_r, 30),
        "slope": mp.nstr(slope, 30),
        "h": mp.nstr(h, 30),
        "h_minus_T": mp.nstr(h - T, 30),
        "probes": [[mp.nstr(y, 30), mp.nstr(s(y), 30)] for y in probes],
    }


def homogeneous_case(b_l, b_r, f_l, f_r, a, c_l, c_r):
    mp.mp.dps = _working_digits(b_l, b_r, f_l, f_r, a)
    b_l, b_r, f_l, f_r, a, c_l, c_r = map(mp.mpf, (b_l, b_r, f_l, f_r, a, c_l, c_r))
    sa = mp.sqrt(a)
    T = f_r - f_l
    al = (f_l - b_l) / sa
    be = (b_r - f_r) / sa
    # left: c_l cosh(xi) + P sinh(xi), xi = (y - b_l)/sa
    # right: c_r cosh(zeta) + Q sinh(zeta), zeta = (b_r - y)/sa
    # film: linear, slope matches both one-sided derivatives
    # slope = (c_l sinh al + P cosh al)/sa = -(c_r sinh be + Q cosh be)/sa
    # slope * T = d(f_r) - d(f_l)
    # unknowns (P, Q); equations:
    # (c_l sh_a + P ch_a)/sa + (c_r sh_b + Q ch_b)/sa = 0
    # T (c_l sh_a + P ch_a)/sa = (c_r ch_b + Q sh_b) - (c_l ch_a + P sh_a)
    sh_a, ch_a, sh_b, ch_b = mp.sinh(al), mp.cosh(al), mp.sinh(be), mp.cosh(be)
    A = mp.matrix([[ch_a, ch_b],
                   [T * ch_a / sa + sh_a, -sh_b]])
    rhs = mp.matrix([-(c_l * sh_a + c_r * sh_b),
                     c_r * ch_b - c_l * ch_a - T * c_l * sh_a / sa])
    P, Q = mp.lu_solve(A, rhs)
    slope = (c_l * sh_a + P * ch_a) / sa

    def left(y):
        xi = (y - b_l) / sa
        return c_l * mp.cosh(xi) + P * mp.sinh(xi)

    def right(y):
        ze = (b_r - y) / sa
        return c_r * mp.cosh(ze) + Q * mp.sinh(ze)

    void_l2 = mp.quad(lambda y: left(y) ** 2, [b_l, f_l]) + mp.quad(lambda y: right(y) ** 2, [f_r, b_r])
    return {
        "slope": mp.nstr(slope, 30),
        "film_grad_sq": mp.nstr(T * slope ** 2, 30),
        "void_l2_sq": mp.nstr(void_l2, 30),
        "d_f_l": mp.nstr(left(f_l), 30),
        "d_f_r": mp.nstr(right(f_r), 30),
    }


def main():
    out = {"interval": {}, "homogeneous": {}}
    for name, *args in INTERVAL_CASES:
        out["interval"][name] = {"params": list(args), **interval_case(*args)}
    for name, *args in HOMOGENEOUS_CASES:
        out["homogeneous"][name] = {"params": list(args), **homogeneous_case(*args)}
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(out, indent=2) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
