"""Independent reference routines used to freeze expected values.

Nothing here imports the package under test.  Bessel values come from the
ascending power series summed in 40-digit arithmetic, zeros from plain
bisection on sign changes of that series.
"""
import math

import mpmath

mpmath.mp.dps = 40


def series_j(k, x):
    x = mpmath.mpf(x)
    half = x / 2
    term = half**k / mpmath.factorial(k)
    total = term
    j = 0
    while True:
        j += 1
        term *= -(half * half) / (j * (j + k))
        total += term
        if abs(term) < mpmath.mpf(10) ** -30 and j > x:
            return total


def series_j_prime(k, x):
    if k == 0:
        return -series_j(1, x)
    return (series_j(k - 1, x) - series_j(k + 1, x)) / 2


def bisect(f, lo, hi, tol=1e-13):
    lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
    f_lo = f(lo)
    assert f_lo * f(hi) < 0, (lo, hi)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        f_mid = f(mid)
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def scan_zeros(f, count, start=1e-3, step=0.25):
    """First ``count`` sign changes of ``f`` on a fine grid, refined by bisection."""
    zeros = []
    x, fx = start, f(start)
    while len(zeros) < count:
        y = x + step
        fy = f(y)
        if fx * fy < 0:
            zeros.append(bisect(f, x, y))
        x, fx = y, fy
    return zeros


def bessel_zeros(k, count):
    return scan_zeros(lambda x: series_j(k, x), count, start=max(k, 1e-3))


def bessel_prime_zeros(k, count):
    return scan_zeros(lambda x: series_j_prime(k, x), count, start=max(k - 0.5, 1e-3))


def brute_force_torus(F_max, eps, zp, z, kmax=5, nmax=3, mmax=6):
    """Perturbative toroidal levels below ``F_max`` from explicit zero tables."""
    out = []
    for k in range(kmax + 1):
        for n in range(1, nmax + 1):
            for m in range(mmax + 1):
                if k >= 1:
                    for parity in (1, -1):
                        F = math.sqrt(zp[k, n] ** 2 + (m * m - parity / 4) * (eps / math.pi) ** 2)
                        if F <= F_max:
                            out.append((("TE", parity, k, n, m), F))
                F = math.sqrt(z[k, n] ** 2 + (m * m + 0.75) * (eps / math.pi) ** 2)
                if F <= F_max:
                    out.append((("TM", 0, k, n, m), F))
    return out
