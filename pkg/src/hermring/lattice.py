"""Fourier index sets: half-integral Hermitian matrices over Z[i] and their Siegel analogues.

A Hermitian index ``(m, r, s, n)`` stands for the matrix with diagonal ``m, n``
and off-diagonal entry ``(r + s i) / 2``; a Siegel index ``(m, r, n)`` has
off-diagonal entry ``r / 2``.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt
from typing import NamedTuple


class HermitianIndex(NamedTuple):
    m: int
    r: int
    s: int
    n: int

    def four_det(self) -> int:
        return 4 * self.m * self.n - self.r * self.r - self.s * self.s

    def is_psd(self) -> bool:
        return self.m >= 0 and self.n >= 0 and self.four_det() >= 0

    def __add__(self, other):  # type: ignore[override]
        return HermitianIndex(self.m + other.m, self.r + other.r, self.s + other.s, self.n + other.n)


class SiegelIndex(NamedTuple):
    m: int
    r: int
    n: int

    def four_det(self) -> int:
        return 4 * self.m * self.n - self.r * self.r

    def __add__(self, other):  # type: ignore[override]
        return SiegelIndex(self.m + other.m, self.r + other.r, self.n + other.n)


ZERO = HermitianIndex(0, 0, 0, 0)


def content(h: HermitianIndex) -> int:
    """Largest l with h / l still half-integral, i.e. gcd(m, r, s, n)."""
    g = gcd(gcd(h.m, h.r), gcd(h.s, h.n))
    if g == 0:
        raise ValueError("content of the zero index is undefined")
    return g


def rank(h: HermitianIndex) -> int:
    if h == ZERO:
        return 0
    return 1 if h.four_det() == 0 else 2


@lru_cache(maxsize=None)
def enumerate_hermitian(trunc: int) -> tuple[HermitianIndex, ...]:
    """All psd indices with 0 <= m, n <= trunc, sorted by (m + n, m, r, s)."""
    if trunc < 0:
        raise ValueError("truncation must be nonnegative")
    out = []
    for m in range(trunc + 1):
        for n in range(trunc + 1):
            bound = 4 * m * n
            rmax = isqrt(bound)
            for r in range(-rmax, rmax + 1):
                smax = isqrt(bound - r * r)
                for s in range(-smax, smax + 1):
                    out.append(HermitianIndex(m, r, s, n))
    out.sort(key=lambda h: (h.m + h.n, h.m, h.r, h.s))
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_siegel(trunc: int) -> tuple[SiegelIndex, ...]:
    if trunc < 0:
        raise ValueError("truncation must be nonnegative")
    out = []
    for m in range(trunc + 1):
        for n in range(trunc + 1):
            rmax = isqrt(4 * m * n)
            out.extend(SiegelIndex(m, r, n) for r in range(-rmax, rmax + 1))
    out.sort(key=lambda t: (t.m + t.n, t.m, t.r))
    return tuple(out)


def hermitian_sort_key(h: HermitianIndex) -> tuple[int, int, int, int]:
    return (h.m + h.n, h.m, h.r, h.s)


def siegel_sort_key(t: SiegelIndex) -> tuple[int, int, int]:
    return (t.m + t.n, t.m, t.r)


def _orbit_moves(h: HermitianIndex):
    m, r, s, n = h
    yield HermitianIndex(m, -r, s, n)
    yield HermitianIndex(m, s, -r, n)
    yield HermitianIndex(n, r, -s, m)


def symmetry_orbit(h: HermitianIndex) -> frozenset[HermitianIndex]:
    """Orbit under transpose, the diagonal unit action and the coordinate swap."""
    seen = {h}
    todo = [h]
    while todo:
        for g in _orbit_moves(todo.pop()):
            if g not in seen:
                seen.add(g)
                todo.append(g)
    return frozenset(seen)


def siegel_orbit(t: SiegelIndex) -> frozenset[SiegelIndex]:
    m, r, n = t
    return frozenset({SiegelIndex(m, r, n), SiegelIndex(m, -r, n), SiegelIndex(n, r, m), SiegelIndex(n, -r, m)})
