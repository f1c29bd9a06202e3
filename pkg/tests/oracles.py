"""Definitional brute-force oracles, independent of the library's fast paths.

Everything here works on plain Python lists with explicit loops and the
group law written out directly, so these values can back acceptance anchors.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def add(factors, a, b):
    """Mixed-radix addition of canonical indices (row-major encoding)."""
    coords = []
    ra, rb = a, b
    for m in reversed(factors):
        coords.append(((ra % m) + (rb % m)) % m)
        ra //= m
        rb //= m
    coords.reverse()
    idx = 0
    for c, m in zip(coords, factors):
        idx = idx * m + c
    return idx


def neg(factors, a):
    coords = []
    r = a
    for m in reversed(factors):
        coords.append((-(r % m)) % m)
        r //= m
    coords.reverse()
    idx = 0
    for c, m in zip(coords, factors):
        idx = idx * m + c
    return idx


def order(factors):
    return math.prod(factors)


def convolve_star(factors, f, g):
    n = order(factors)
    return [
        sum(f[y] * g[add(factors, x, neg(factors, y))] for y in range(n))
        for x in range(n)
    ]


def convolve_circ(factors, f, g):
    n = order(factors)
    return [sum(f[y] * g[add(factors, y, x)] for y in range(n)) for x in range(n)]


def fourier_coeff(factors, f, r):
    """sum_x f(x) conj(chi_r(x)) by direct character evaluation."""
    import cmath

    n = order(factors)
    total = 0j
    rc = []
    rr = r
    for m in reversed(factors):
        rc.append(rr % m)
        rr //= m
    rc.reverse()
    for x in range(n):
        xc = []
        xx = x
        for m in reversed(factors):
            xc.append(xx % m)
            xx //= m
        xc.reverse()
        phase = sum(rcj * xcj / m for rcj, xcj, m in zip(rc, xc, factors))
        total += f[x] * cmath.exp(-2j * cmath.pi * phase)
    return total


def generalized_conv_value(factors, fs, xs):
    """C_l(f_1..f_l)(x_1..x_l) = sum_z prod_j f_j(z + x_j)."""
    n = order(factors)
    total = 0
    for z in range(n):
        p = 1
        for f, x in zip(fs, xs):
            p *= f[add(factors, z, x)]
        total += p
    return total


def reduced_conv_value(factors, f, ys):
    """C'_l(f)(y_1..y_{l-1}) = sum_z f(z) prod f(z+y_i)."""
    n = order(factors)
    total = 0
    for z in range(n):
        p = f[z]
        for y in ys:
            p *= f[add(factors, z, y)]
        total += p
    return total


def box_energy(factors, f, shape):
    """Full definitional box sum over G^(k_1+...+k_r); no symmetry tricks."""
    n = order(factors)
    r = len(shape)
    total = 0
    axes = [list(itertools.product(range(n), repeat=kj)) for kj in shape]
    box = list(itertools.product(*[range(kj) for kj in shape]))
    for grids in itertools.product(*axes):
        p = 1
        for omega in box:
            arg = 0
            for j in range(r):
                arg = add(factors, arg, grids[j][omega[j]])
            p *= f[arg]
            if p == 0:
                break
        total += p
    return total


def box_multi_product(factors, shape, family):
    """<f^omega> with family[omega] a value list, omega 0-based."""
    n = order(factors)
    r = len(shape)
    total = 0
    axes = [list(itertools.product(range(n), repeat=kj)) for kj in shape]
    box = list(itertools.product(*[range(kj) for kj in shape]))
    for grids in itertools.product(*axes):
        p = 1
        for omega in box:
            arg = 0
            for j in range(r):
                arg = add(factors, arg, grids[j][omega[j]])
            p *= family[omega][arg]
        total += p
    return total


def energy_via_cl(factors, f, k, l):
    """E^k_l via the C_l tensor route (second independent route)."""
    n = order(factors)
    total = 0
    for xs in itertools.product(range(n), repeat=l):
        total += generalized_conv_value(factors, [f] * l, xs) ** k
    return total


def balanced_list(factors, members):
    n = order(factors)
    d = Fraction(len(members), n)
    s = set(members)
    return [Fraction(1) - d if x in s else -d for x in range(n)]


def uniformity_power(factors, members, k, l):
    """epsilon^(kl) = E^k_l(f_A) / (delta^(kl) N^(k+l)) as an exact Fraction."""
    n = order(factors)
    fa = balanced_list(factors, members)
    e = energy_via_cl(factors, fa, k, l)
    d = Fraction(len(members), n)
    return Fraction(e) / (d ** (k * l) * Fraction(n) ** (k + l))


def shifted_intersection_members(factors, members, zs):
    s = set(members)
    out = set(s)
    for z in zs:
        out &= {add(factors, a, neg(factors, z)) for a in s}
    return sorted(out)
