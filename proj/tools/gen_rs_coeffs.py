#!/usr/bin/env python3
"""Emit Taylor coefficients (in x = p - 1/2) of the Riemann-Siegel
correction functions C0..C4 as a C++ header.

Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) is entire; its Taylor
coefficients about p = 1/2 are taken from a Cauchy contour integral at high
precision and the Ck follow from the classical derivative combinations.
"""
import sys
import mpmath as mp

mp.mp.dps = 60
DEG = 70
M = 512
R = mp.mpf(1)


def psi(p):
    return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)


samples = [psi(mp.mpf(1) / 2 + R * mp.expj(2 * mp.pi * m / M)) for m in range(M)]
taylor = []
for j in range(DEG + 1 + 12):
    acc = mp.mpc(0)
    for m in range(M):
        acc += samples[m] * mp.expj(-2 * mp.pi * j * m / M)
    taylor.append(mp.re(acc) / M / R**j)


def deriv(coeffs, order):
    out = list(coeffs)
    for _ in range(order):
        out = [out[j + 1] * (j + 1) for j in range(len(out) - 1)]
    return out


def combo(terms):
    n = DEG + 1
    res = [mp.mpf(0)] * n
    for scale, order in terms:
        d = deriv(taylor, order)
        for j in range(n):
            res[j] += scale * d[j]
    return res


pi = mp.pi
C = [
    combo([(1, 0)]),
    combo([(-1 / (96 * pi**2), 3)]),
    combo([(1 / (64 * pi**2), 2), (1 / (18432 * pi**4), 6)]),
    combo([(-1 / (64 * pi**2), 1), (-1 / (3840 * pi**4), 5),
           (-1 / (5308416 * pi**6), 9)]),
    combo([(1 / (128 * pi**2), 0), (19 / (24576 * pi**4), 4),
           (11 / (5898240 * pi**6), 8), (1 / (2038431744 * pi**8), 12)]),
]


def trimmed(coeffs):
    last = 0
    for j, c in enumerate(coeffs):
        if abs(c) * mp.mpf(2) ** (-j) > mp.mpf(10) ** -22:
            last = j
    return coeffs[: last + 1]


out = sys.stdout
out.write("// Generated by tools/gen_rs_coeffs.py. Do not edit.\n")
out.write("#pragma once\n\n#include <array>\n\nnamespace jladder::detail {\n\n")
out.write("// Taylor coefficients of the Riemann-Siegel corrections C0..C4 in x = p - 1/2.\n")
for k, coeffs in enumerate(C):
    t = trimmed(coeffs)
    out.write(f"inline constexpr std::array<double, {len(t)}> kRsC{k} = {{\n")
    for c in t:
        if abs(c) < mp.mpf(10) ** -40:
            c = mp.mpf(0)
        out.write(f"    {mp.nstr(c, 20, min_fixed=1, max_fixed=0)},\n")
    out.write("};\n\n")
out.write("}  // namespace jladder::detail\n")
