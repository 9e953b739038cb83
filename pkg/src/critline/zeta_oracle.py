"""Ground-truth numerics: zeta, its logarithmic derivative, and digamma.

Everything here is independent of the bound machinery it is used to check.
zeta is evaluated by Euler-Maclaurin summation with the standard remainder
bound verified at runtime; digamma by upward recurrence plus the asymptotic
series.  Supported window: 0 <= Re s (pole at s=1 excluded), |Im s| <= 1e6.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from math import fsum

import numpy as np

from .errors import (
    DomainError,
    NearZeroOfZeta,
    PoleAtNonpositiveInteger,
    PoleAtOne,
    WindowExceeded,
)

IM_WINDOW = 1e6
ZERO_GUARD = 1e-8  # |zeta| below this counts as "at a zero"
CRIT_GUARD_RADIUS = 1e-4  # ordinate distance guard on the critical line


def _bernoulli_even(n_pairs: int):
    """B_2, B_4, ..., B_{2 n_pairs} as floats (exact recurrence, then rounded)."""
    n_max = 2 * n_pairs
    b = [Fraction(0)] * (n_max + 1)
    b[0] = Fraction(1)
    for m in range(1, n_max + 1):
        s = sum(math.comb(m + 1, k) * b[k] for k in range(m))
        b[m] = Fraction(-s, m + 1)
    return [float(b[2 * j]) for j in range(1, n_pairs + 1)]


_B2J = _bernoulli_even(30)  # B_2 .. B_60
_J_MAX = len(_B2J) - 1


def _csum(arr: np.ndarray) -> complex:
    """Compensated sum of a complex array: pairwise chunks, exact fsum across."""
    n = len(arr)
    k = 4096
    if n <= k:
        return complex(fsum(arr.real), fsum(arr.imag))
    m = (n // k) * k
    chunks = arr[:m].reshape(-1, k).sum(axis=1)
    re = fsum(chunks.real) + fsum(arr[m:].real)
    im = fsum(chunks.imag) + fsum(arr[m:].imag)
    return complex(re, im)


def _check_window(s: complex):
    if s.real < 0:
        raise WindowExceeded(f"Re s = {s.real} < 0 unsupported")
    if abs(s.imag) > IM_WINDOW:
        raise WindowExceeded(f"|Im s| = {abs(s.imag)} > {IM_WINDOW}")
    if abs(s - 1) < 1e-10:
        raise PoleAtOne("zeta has a pole at s = 1")


def zeta_em(s: complex, target: float = 1e-12, min_m: int = 0) -> complex:
    """zeta(s) by Euler-Maclaurin summation.

        zeta(s) = sum_{n<M} n^-s + M^{1-s}/(s-1) + M^-s/2
                  + sum_{j<=J} B_{2j}/(2j)! M^{1-s-2j} (s)_{2j-1} + R_J

    with |R_J| <= |B_{2J+2}/(2J+2)! (s)_{2J+1} M^{1-Re s-2J-2}| * |s+2J+1|/(Re s+2J+1).
    M starts at max(2|Im s|, 10, min_m) and doubles until the bound meets the
    target.  The truncation bound is enforced at runtime; floating rounding
    adds ~1e-16 * |Im s| from phase arithmetic, negligible below |Im s| ~ 1e4
    and ~5e-10 at the top of the window, where downstream tolerances are
    orders of magnitude looser.
    """
    s = complex(s)
    _check_window(s)
    sigma = s.real
    M = max(int(math.ceil(2 * abs(s.imag))), 10, min_m)
    while True:
        n = np.arange(1, M, dtype=float)
        head = _csum(np.exp(-s * np.log(n)))
        val = head + M ** (1 - s) / (s - 1) + 0.5 * M ** (-s)
        rising = s  # (s)_1
        ok = False
        for j in range(1, _J_MAX + 1):
            term = _B2J[j - 1] / math.factorial(2 * j) * M ** (1 - s - 2 * j) * rising
            val += term
            rising_next = rising * (s + 2 * j - 1) * (s + 2 * j)
            bound = (abs(_B2J[j]) / math.factorial(2 * j + 2)
                     * M ** (1 - sigma - 2 * j - 2) * abs(rising_next)
                     * abs(s + 2 * j + 1) / (sigma + 2 * j + 1))
            if bound <= target / 10:
                ok = True
                break
            rising = rising_next
        if ok:
            return val
        M *= 2
        if M > 2 ** 25:
            raise WindowExceeded("Euler-Maclaurin failed to converge in the window")


def zeta_deriv_em(s: complex, target: float = 1e-10) -> complex:
    """zeta'(s) by term-by-term differentiation of the Euler-Maclaurin formula.

    Truncation is driven at runtime by the magnitude of the first omitted
    differentiated correction term (kept below target/10).
    """
    s = complex(s)
    _check_window(s)
    sigma = s.real
    M = max(int(math.ceil(2 * abs(s.imag))), 10)
    lnM = math.log(M)
    while True:
        n = np.arange(1, M, dtype=float)
        ln = np.log(n)
        head = _csum(-ln * np.exp(-s * ln))
        t1 = M ** (1 - s) / (s - 1)
        val = head - lnM * t1 - t1 / (s - 1) - 0.5 * lnM * M ** (-s)
        rising = s
        harmonic = 1 / s  # sum_{i=0}^{2j-2} 1/(s+i)
        ok = False
        for j in range(1, _J_MAX + 1):
            cj = _B2J[j - 1] / math.factorial(2 * j) * M ** (1 - s - 2 * j)
            val += cj * rising * (harmonic - lnM)
            rising_next = rising * (s + 2 * j - 1) * (s + 2 * j)
            harmonic_next = harmonic + 1 / (s + 2 * j - 1) + 1 / (s + 2 * j)
            nxt = (abs(_B2J[j]) / math.factorial(2 * j + 2)
                   * M ** (1 - sigma - 2 * j - 2) * abs(rising_next)
                   * (abs(harmonic_next) + lnM))
            if nxt <= target / 10:
                ok = True
                break
            rising, harmonic = rising_next, harmonic_next
        if ok:
            return val
        M *= 2
        if M > 2 ** 25:
            raise WindowExceeded("Euler-Maclaurin failed to converge in the window")


def zeta_logderiv(s: complex, target: float = 1e-10) -> complex:
    """zeta'(s)/zeta(s), guarded away from zeros and the pole."""
    z = zeta_em(s, target=min(target, 1e-12))
    if abs(z) <= ZERO_GUARD:
        raise NearZeroOfZeta(f"|zeta({s})| = {abs(z):.2e}")
    return zeta_deriv_em(s, target=target) / z


def log_abs_zeta_crit(t: float, zeros=None) -> float:
    """log|zeta(1/2+it)| for t >= 10; refuses points too close to a zero.

    When an ordinate table is supplied, any t within 1e-4 of a listed
    ordinate is rejected up front; the |zeta| guard applies regardless.
    """
    if t < 10:
        raise DomainError("supported for t >= 10")
    if zeros is not None:
        d = zeros.distance_to_nearest(t)
        if d < CRIT_GUARD_RADIUS:
            raise NearZeroOfZeta(f"t={t} within {d:.2e} of a tabulated ordinate")
    z = zeta_em(complex(0.5, t))
    a = abs(z)
    if a <= ZERO_GUARD:
        raise NearZeroOfZeta(f"|zeta(1/2+{t}i)| = {a:.2e}")
    return math.log(a)


# ---------------------------------------------------------------------------
# digamma
# ---------------------------------------------------------------------------

_PSI_SHIFT = 10.0
_PSI_B2J = _B2J[:8]  # B_2 .. B_16; at |w| >= 10 the omitted term is < 5e-17


def digamma(z):
    """psi(z) for complex scalars or ndarrays, error <= 1e-12.

    Upward recurrence pushes Re z above 10, then the asymptotic series
    log w - 1/(2w) - sum B_2j/(2j w^{2j}) applies.
    """
    arr = np.asarray(z, dtype=complex)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    re = arr.real
    on_real_axis = np.abs(arr.imag) == 0
    near_int = np.abs(arr.real - np.round(arr.real)) == 0
    if np.any(on_real_axis & near_int & (re <= 0)):
        raise PoleAtNonpositiveInteger("digamma pole at a non-positive integer")
    shift = int(max(0.0, math.ceil(_PSI_SHIFT - re.min())))
    acc = np.zeros_like(arr)
    for k in range(shift):
        acc += 1.0 / (arr + k)
    w = arr + shift
    winv2 = 1.0 / (w * w)
    series = np.zeros_like(arr)
    power = winv2.copy()
    for j, b in enumerate(_PSI_B2J, start=1):
        series += b / (2 * j) * power
        power = power * winv2
    out = np.log(w) - 0.5 / w - series - acc
    return complex(out[0]) if scalar else out


def re_digamma_quarter(y):
    """Re psi(1/4 + i y/2) for real y (vectorized); even in y."""
    y = np.asarray(y, dtype=float)
    return digamma(0.25 + 0.5j * y).real


# ---------------------------------------------------------------------------
# numeric bindings for the symbolic ring
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def zeta_real(m: int) -> float:
    """zeta(m) for integer m >= 2, accurate to ~1e-16 relative.

    The large base cutoff keeps the Euler-Maclaurin correction terms tiny, so
    rounding stays at machine level (bindings must be good to 1e-15).
    """
    if m < 2:
        raise ValueError("need m >= 2")
    if m > 60:
        return 1.0 + 2.0 ** -m + 3.0 ** -m
    return zeta_em(complex(m, 0), target=1e-14, min_m=256).real


@lru_cache(maxsize=None)
def constant_env(max_odd: int = 7):
    """Bindings {L, Z3, Z5, ...} for coeff_eval, all sourced from this module."""
    env = {"L": math.log(2)}
    for k in range(3, max_odd + 1, 2):
        env[f"Z{k}"] = zeta_real(k)
    return env
