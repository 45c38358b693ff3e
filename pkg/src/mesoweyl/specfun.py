"""Special functions behind the closed-form results.

Generalized Laguerre polynomials with an integer upper index of either sign
(displacement matrix elements need L_n^{m-n} for both orderings of m and n),
and integer-order Bessel functions J_n / I_n evaluated by Miller's downward
recurrence with normalization.  Everything is double precision; only integer
orders and moderate arguments occur in this package.
"""

import math
from fractions import Fraction
from functools import lru_cache

__all__ = ["laguerre", "bessel_j", "bessel_i", "bessel_j_all", "bessel_i_all"]


@lru_cache(maxsize=4096)
def _laguerre_coeffs(n: int, alpha: int) -> tuple:
    """Exact coefficients c_m of L_n^alpha(x) = sum_m c_m x^m, as floats.

    c_m = (-1)^m binom(n+alpha, n-m) / m!, with the binomial read as a
    falling factorial so a negative integer upper index is the polynomial
    continuation: L_n^{-k}(x) = (-x)^k (n-k)!/n! L_{n-k}^k(x).
    """
    coeffs = []
    for m in range(n + 1):
        k = n - m
        num = 1
        for i in range(k):
            num *= (n + alpha - i)
        c = Fraction(num, math.factorial(k) * math.factorial(m))
        if m % 2:
            c = -c
        coeffs.append(float(c))
    return tuple(coeffs)


@lru_cache(maxsize=4096)
def _laguerre_coeffs_exact(n: int, alpha: int) -> tuple:
    coeffs = []
    for m in range(n + 1):
        k = n - m
        num = 1
        for i in range(k):
            num *= (n + alpha - i)
        c = Fraction(num, math.factorial(k) * math.factorial(m))
        coeffs.append(-c if m % 2 else c)
    return tuple(coeffs)


def laguerre(n: int, alpha: int, x: float) -> float:
    """L_n^alpha(x) for integer degree n >= 0, integer alpha of any sign.

    Evaluated as a float series; near zero crossings, where the alternating
    series cancels catastrophically, the sum is redone in exact rational
    arithmetic (the float argument is exactly representable), so the result
    is correct to roundoff everywhere.
    """
    if n < 0:
        raise ValueError("Laguerre degree must be nonnegative")
    coeffs = _laguerre_coeffs(int(n), int(alpha))
    xp = 1.0
    terms = []
    for c in coeffs:
        terms.append(c * xp)
        xp *= x
    val = math.fsum(terms)
    err_bound = (n + 2) * 2.3e-16 * math.fsum(abs(t) for t in terms)
    if err_bound > 1e-13 * abs(val):
        xf = Fraction(x)
        total = Fraction(0)
        xp = Fraction(1)
        for c in _laguerre_coeffs_exact(int(n), int(alpha)):
            total += c * xp
            xp *= xf
        return float(total)
    return val


def _parity(n: int) -> int:
    return -1 if n & 1 else 1


def bessel_j_all(nmax: int, x: float) -> list:
    """[J_0(x), ..., J_nmax(x)] for x > 0, by one normalized Miller pass."""
    m = max(nmax, int(x)) + 18 + int(2.5 * math.sqrt(max(nmax, x, 1.0)))
    if m % 2:
        m += 1
    f = [0.0] * (m + 2)
    f[m] = 1e-300
    for k in range(m, 0, -1):
        f[k - 1] = (2.0 * k / x) * f[k] - f[k + 1]
        if abs(f[k - 1]) > 1e280:
            for i in range(k - 1, m + 2):
                f[i] *= 1e-280
    norm = f[0] + 2.0 * math.fsum(f[k] for k in range(2, m + 1, 2))
    return [v / norm for v in f[: nmax + 1]]


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind, integer order (any sign)."""
    n = int(n)
    x = float(x)
    if x < 0.0:
        return _parity(n) * bessel_j(n, -x)
    if n < 0:
        return _parity(n) * bessel_j(-n, x)
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    return bessel_j_all(n, x)[n]


def bessel_i_all(nmax: int, x: float) -> list:
    """[I_0(x), ..., I_nmax(x)] for x > 0, normalized by e^x = I_0 + 2 sum I_k."""
    m = max(nmax, int(x)) + 18 + int(2.5 * math.sqrt(max(nmax, x, 1.0)))
    f = [0.0] * (m + 2)
    f[m] = 1e-300
    for k in range(m, 0, -1):
        f[k - 1] = (2.0 * k / x) * f[k] + f[k + 1]
        if abs(f[k - 1]) > 1e280:
            for i in range(k - 1, m + 2):
                f[i] *= 1e-280
    norm = f[0] + 2.0 * math.fsum(f[1 : m + 1])
    scale = math.exp(x) / norm
    return [v * scale for v in f[: nmax + 1]]


def bessel_i(n: int, x: float) -> float:
    """Modified Bessel function of the first kind, integer order (any sign)."""
    n = abs(int(n))  # I_{-n} = I_n
    x = float(x)
    if x < 0.0:
        return _parity(n) * bessel_i(n, -x)
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    return bessel_i_all(n, x)[n]
