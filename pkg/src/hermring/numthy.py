"""Scalar number theory: the character chi_{-4}, Bernoulli data, divisor sums."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

__all__ = [
    "chi_m4",
    "bernoulli",
    "bernoulli_poly",
    "bernoulli_chi",
    "divisors",
    "sigma",
    "sigma_chi",
    "sigma_chi_star",
    "g_k",
]


def chi_m4(n: int) -> int:
    """Kronecker character (-4/n); zero for n <= 0 (never needed there)."""
    if n <= 0 or n % 2 == 0:
        return 0
    return 1 if n % 4 == 1 else -1


@lru_cache(maxsize=None)
def _bernoulli_table(m: int) -> tuple[Fraction, ...]:
    table = [Fraction(1)]
    for n in range(1, m + 1):
        s = sum(comb(n + 1, j) * table[j] for j in range(n))
        table.append(-s / (n + 1))
    return tuple(table)


def bernoulli(m: int) -> Fraction:
    """B_m with B_1 = -1/2."""
    if m < 0:
        raise ValueError("bernoulli index must be nonnegative")
    return _bernoulli_table(m)[m]


def bernoulli_poly(m: int, x: Fraction) -> Fraction:
    return sum(comb(m, j) * bernoulli(j) * x ** (m - j) for j in range(m + 1))


@lru_cache(maxsize=None)
def bernoulli_chi(m: int) -> Fraction:
    """Generalized Bernoulli number B_{m, chi_{-4}} (conductor 4)."""
    if m < 1:
        raise ValueError("generalized Bernoulli index must be positive")
    f = 4
    total = sum(chi_m4(a) * bernoulli_poly(m, Fraction(a, f)) for a in range(1, f + 1))
    return Fraction(f) ** (m - 1) * total


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError(f"divisors of non-positive integer {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def sigma(k: int, n: int) -> int:
    return sum(d**k for d in divisors(n))


def sigma_chi(m: int, n: int) -> int:
    return sum(chi_m4(d) * d**m for d in divisors(n))


def sigma_chi_star(m: int, n: int) -> int:
    return sum(chi_m4(n // d) * d**m for d in divisors(n))


@lru_cache(maxsize=65536)
def g_k(m: int, n: int) -> int:
    """The divisor-sum function G_K(m, N) entering the rank-2 Eisenstein coefficients."""
    diff = sigma_chi(m, n) - sigma_chi_star(m, n)
    q, r = divmod(diff, 1 + abs(chi_m4(n)))
    if r:
        raise ArithmeticError(f"G_K({m}, {n}): inexact division of {diff}")
    return q
