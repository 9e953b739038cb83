"""Von Mangoldt sieve and weighted prime-power sums.

The table stores each prime power n = p^m as the exact pair (p, m); log p is
taken in floating point only at use sites.  Lambda-weighted sums use exact
compensated summation (math.fsum) because downstream Dirichlet polynomials
cancel heavily.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum

import numpy as np

from .errors import LimitTooLarge

SIEVE_CAP = 10 ** 8


@dataclass(frozen=True)
class LambdaTable:
    """Exact von Mangoldt table up to ``limit``: prime[n], power[n] with
    n = prime[n]**power[n] at prime powers and prime[n] == 0 elsewhere."""
    limit: int
    prime: np.ndarray
    power: np.ndarray

    def lam(self, n: int) -> float:
        """Lambda(n) = log p if n = p^m else 0."""
        if not 1 <= n <= self.limit:
            raise IndexError(f"n={n} outside table limit {self.limit}")
        p = int(self.prime[n])
        return math.log(p) if p else 0.0

    def prime_powers(self, up_to: float | None = None) -> np.ndarray:
        """Indices n <= up_to with Lambda(n) != 0, ascending."""
        hi = self.limit if up_to is None else min(self.limit, int(math.floor(up_to)))
        idx = np.nonzero(self.prime[: hi + 1])[0]
        return idx

    def log_p(self, ns: np.ndarray) -> np.ndarray:
        """Lambda over an array of prime-power indices."""
        return np.log(self.prime[ns].astype(float))


def lambda_sieve(x: int, cap: int = SIEVE_CAP) -> LambdaTable:
    """Exact table by Eratosthenes plus explicit prime-power marking."""
    if x < 2:
        raise ValueError("x must be >= 2")
    if x > cap:
        raise LimitTooLarge(f"x={x} above cap {cap}")
    is_prime = np.ones(x + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(x) + 1):
        if is_prime[p]:
            is_prime[p * p:: p] = False
    prime = np.zeros(x + 1, dtype=np.int64)
    power = np.zeros(x + 1, dtype=np.int16)
    primes = np.nonzero(is_prime)[0]
    prime[primes] = primes
    power[primes] = 1
    for p in primes[primes <= math.isqrt(x)]:
        v = int(p) * int(p)
        m = 2
        while v <= x:
            prime[v] = p
            power[v] = m
            v *= int(p)
            m += 1
    return LambdaTable(limit=x, prime=prime, power=power)


def weighted_psi(x: int, table: LambdaTable | None = None) -> float:
    """sum_{n<=x} Lambda(n)/sqrt(n); under RH this is 2 sqrt(x) + O(log^3 x)."""
    if table is None or table.limit < x:
        table = lambda_sieve(x)
    ns = table.prime_powers(x)
    vals = table.log_p(ns) / np.sqrt(ns.astype(float))
    return fsum(vals)


def chebyshev_psi(x: int, table: LambdaTable | None = None) -> float:
    """sum_{n<=x} Lambda(n)."""
    if table is None or table.limit < x:
        table = lambda_sieve(x)
    ns = table.prime_powers(x)
    return fsum(table.log_p(ns))


def dirichlet_cos_sum(table: LambdaTable, x: float, t: float,
                      weights: np.ndarray | None = None) -> float:
    """Re sum_{n<=x} Lambda(n) n^{-1/2-it} w_n  =  sum Lambda(n) cos(t log n) w_n / sqrt(n).

    The shared evaluation kernel for every Dirichlet polynomial in the
    package; ``weights`` aligns with ``table.prime_powers(x)``.
    """
    ns = table.prime_powers(x)
    if len(ns) == 0:
        return 0.0
    nsf = ns.astype(float)
    ln = np.log(nsf)
    vals = table.log_p(ns) * np.cos(t * ln) / np.sqrt(nsf)
    if weights is not None:
        vals = vals * weights
    return fsum(vals)
