"""Arbitrary-precision golden values for the spin-density closed forms.

Evaluates both production channels at pinned (beta, z) points with 60
significant digits and prints Rust array literals consumed by
tests/golden.rs. Re-run with `python3 gen_spin_golden.py` (needs mpmath).
"""
from mpmath import mp, mpf, sqrt, nstr

mp.dps = 60

POINTS = [
    ("0", "0.5"), ("0.1", "-0.3"), ("0.25", "0.9"), ("0.4", "0"),
    ("0.5", "0.5"), ("0.6", "-0.75"), ("0.75", "0.2"), ("0.9", "-0.95"),
    ("0.99", "0.4"), ("1", "0"),
]


def qq_coefficients(b, z):
    d = 2 - b**2 * (1 - z**2)
    s = sqrt(1 - b**2)
    kk = (-1 + z**2) * (-b**2 + 2 * z**2 * (-2 + b**2 + 2 * s)) / d
    kr = -2 * z * sqrt(1 - z**2) * (1 - b**2 - s + z**2 * (-2 + b**2 + 2 * s)) / d
    nn = (-1 + z**2) * b**2 / d
    rr = (2 - b**2 - 2 * z**4 * (-2 + b**2 + 2 * s) + z**2 * (-4 + 3 * b**2 + 4 * s)) / d
    return kk, kr, nn, rr


def gg_coefficients(b, z):
    # Corrected gluon-fusion set (see crate docs): beta^2 in the denominator's
    # last term, z^4 beta^2 in C_kk, beta^2 in C_kr's z^4 bracket, z^6 beta^4 in C_rr.
    d = 2 - 2 * z**4 * b**4 + 4 * (-1 + z**2) * b**2 * (-1 + b**2)
    s = sqrt(1 - b**2)
    kk = (-2 + 4 * b**2 - 2 * (2 - 2 * z**2 + z**4) * b**4
          + 4 * (1 - z**2) * b**2 * (-1 + z**4 * b**2 + 2 * z**2 * (-1 + z**2) * s
                                     - 2 * (-1 + z**2) * (z**2 + b**2))) / d
    kr = 4 * z * sqrt(1 - z**2) * b**2 * (-2 + 2 * b**2 + s + z**2 * (3 - 2 * b**2 - 3 * s)
                                          + z**4 * (-2 + b**2 + 2 * s)) / d
    nn = (-2 + 4 * b**2 - 2 * (2 - 2 * z**2 + z**4) * b**4) / d
    rr = (-2 - 2 * (2 - 6 * z**2 + 5 * z**4) * b**4 + 4 * z**6 * b**4
          + 8 * (-1 + z**2) * b**2 * (-1 + z**2 * (-1 + z**2) * (-1 + s))) / d
    return kk, kr, nn, rr


def qq_direct(b, z):
    d = 4 + 2 * (-1 + z**2) * b**2
    r11 = (1 + (-1 + z**2) * b**2) / d
    return r11, 1 / d, abs(1 + (-1 + z**2) * b**2) / d, 1 / d


def gg_direct(b, z):
    q = 2 - 2 * z**2 + z**4
    d = -2 + 4 * (-1 + z**2) * b**2 + 2 * q * b**4
    r11 = b**2 * (-2 + z**2 + q * b**2) / d
    r14 = -sqrt(b**4 * (4 - 8 * z**2 + 5 * z**4 + 2 * (-4 + 8 * z**2 - 6 * z**4 + z**6) * b**2
                        + q**2 * b**4)) / d
    r22 = (-1 + z**2 * b**2) / d
    r23 = (1 + (-2 + z**2) * b**2) / d
    return r11, r22, r14, r23


def fmt(xs):
    return "[" + ", ".join(nstr(x, 20, min_fixed=-1, max_fixed=1) for x in xs) + "]"


for name, coef, direct in [("QQ", qq_coefficients, qq_direct), ("GG", gg_coefficients, gg_direct)]:
    print(f"const {name}_GOLDEN: [([f64; 2], [f64; 4], [f64; 4]); {len(POINTS)}] = [")
    for b, z in POINTS:
        b, z = mpf(b), mpf(z)
        print(f"    ([{nstr(b, 3)}, {nstr(z, 3)}], {fmt(coef(b, z))}, {fmt(direct(b, z))}),")
    print("];")
