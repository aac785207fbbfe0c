"""Closed-formula constructors: Hermitian Eisenstein series, the Gamma_0(4) ring, plus space, Maass lift."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import isqrt, prod

from .lattice import content, enumerate_hermitian, rank
from .numthy import bernoulli, bernoulli_chi, chi_m4, divisors, g_k, sigma
from .series import EllipticSeries, HermitianSeries, _norm

__all__ = [
    "UnsupportedWeightError",
    "NeedsMoreTermsError",
    "UnsupportedConstantTermError",
    "WeightMismatchError",
    "eisenstein_prefactors",
    "hermitian_eisenstein",
    "theta_sq",
    "f2",
    "PlusFormRecipe",
    "H13",
    "H15",
    "H17",
    "RECIPES",
    "recipe_expand",
    "op_U",
    "op_V",
    "op_Tchi",
    "gamma0_index",
    "sturm_bound_elliptic",
    "PlusSpaceVerdict",
    "plus_space_check",
    "maass_lift",
    "published_table",
    "table_mismatch",
]


class UnsupportedWeightError(ValueError):
    pass


class NeedsMoreTermsError(ValueError):
    pass


class UnsupportedConstantTermError(ValueError):
    pass


class WeightMismatchError(ValueError):
    pass


def eisenstein_prefactors(k: int) -> tuple[Fraction, Fraction]:
    """(rank-1 prefactor, rank-2 prefactor) of the weight-k Eisenstein coefficients."""
    if k % 2 or k < 4:
        raise UnsupportedWeightError(f"Hermitian Eisenstein series need even k >= 4, got {k}")
    bk = bernoulli(k)
    return -2 * k / bk, 4 * k * (k - 1) / (bk * bernoulli_chi(k - 1))


def hermitian_eisenstein(k: int, trunc: int) -> HermitianSeries:
    c1, c2 = eisenstein_prefactors(k)
    coeffs = {}
    for h in enumerate_hermitian(trunc):
        rk = rank(h)
        if rk == 0:
            coeffs[h] = 1
        elif rk == 1:
            coeffs[h] = _norm(c1 * sigma(k - 1, content(h)))
        else:
            eps, fd = content(h), h.four_det()
            total = sum(d ** (k - 1) * g_k(k - 2, fd // (d * d)) for d in divisors(eps))
            if total:
                coeffs[h] = _norm(c2 * total)
    return HermitianSeries(coeffs, trunc, k, f"E{k}", check=False)


def theta_sq(trunc: int) -> EllipticSeries:
    """theta^2, whose n-th coefficient counts representations n = a^2 + b^2."""
    counts = [0] * (trunc + 1)
    a_max = isqrt(trunc)
    for a in range(-a_max, a_max + 1):
        b_max = isqrt(trunc - a * a)
        for b in range(-b_max, b_max + 1):
            counts[a * a + b * b] += 1
    return EllipticSeries.from_list(counts, weight=1, name="theta2")


def f2(trunc: int) -> EllipticSeries:
    """The weight-2 form sum_{n odd} sigma_1(n) q^n on Gamma_0(4).

    Summing over all n gives the quasimodular E_2 combination instead, and the
    h13/h15/h17 recipes then leave the plus space.
    """
    return EllipticSeries({n: sigma(1, n) for n in range(1, trunc + 1, 2)}, trunc, 2, "f2", check=False)


@dataclass(frozen=True)
class PlusFormRecipe:
    """A weight-homogeneous polynomial in theta^2 (weight 1) and f2 (weight 2).

    ``terms`` holds ``(coefficient, theta_exponent, f2_exponent)`` where the
    theta exponent counts powers of theta itself and so is even.
    """

    name: str
    weight: int
    terms: tuple[tuple[int, int, int], ...]

    def check_homogeneous(self) -> None:
        for c, te, fe in self.terms:
            if te % 2 or te // 2 + 2 * fe != self.weight:
                raise WeightMismatchError(
                    f"{self.name}: term {c}*theta^{te}*f2^{fe} has weight {te / 2 + 2 * fe}, not {self.weight}")


H13 = PlusFormRecipe("h13", 13, ((2, 14, 3), (-60, 10, 4), (448, 6, 5)))
H15 = PlusFormRecipe("h15", 15, ((1, 14, 4), (-28, 10, 5), (192, 6, 6)))
H17 = PlusFormRecipe("h17", 17, ((1, 18, 4), (-36, 14, 5), (368, 10, 6), (-768, 6, 7)))
RECIPES = {r.name: r for r in (H13, H15, H17)}


def recipe_expand(recipe: PlusFormRecipe, trunc: int) -> EllipticSeries:
    recipe.check_homogeneous()
    th, ff = theta_sq(trunc), f2(trunc)
    total = EllipticSeries.zero(trunc, recipe.weight)
    for c, te, fe in recipe.terms:
        total = total + c * (th ** (te // 2)) * (ff ** fe)
    return total.renamed(recipe.name, recipe.weight)


def op_U(f: EllipticSeries, l: int) -> EllipticSeries:
    """f | U(l); exact up to floor(trunc / l)."""
    t = f.trunc // l
    coeffs = {n: f.coeffs[l * n] for n in range(t + 1) if l * n in f.coeffs}
    return EllipticSeries(coeffs, t, f.weight, check=False)


def op_V(f: EllipticSeries, l: int) -> EllipticSeries:
    """f | V(l); exact up to l * trunc, which is the truncation it carries."""
    coeffs = {l * n: c for n, c in f.coeffs.items()}
    return EllipticSeries(coeffs, l * f.trunc, f.weight, check=False)


def op_Tchi(f: EllipticSeries) -> EllipticSeries:
    coeffs = {n: chi_m4(n) * c for n, c in f.coeffs.items() if chi_m4(n)}
    return EllipticSeries(coeffs, f.trunc, f.weight, check=False)


def gamma0_index(level: int) -> Fraction:
    """[SL_2(Z) : Gamma_0(level)] = level * prod_{p | level} (1 + 1/p)."""
    primes = [p for p in range(2, level + 1) if level % p == 0 and all(p % q for q in range(2, isqrt(p) + 1))]
    return level * prod((1 + Fraction(1, p) for p in primes), start=Fraction(1))


def sturm_bound_elliptic(k: int, level: int) -> int:
    b = Fraction(k, 12) * gamma0_index(level)
    if b.denominator != 1:
        raise ArithmeticError(f"non-integral Sturm bound {b} for weight {k}, level {level}")
    return int(b)


@dataclass(frozen=True)
class PlusSpaceVerdict:
    passed: bool
    bound: int
    witness: int | None = None
    value: object = None

    def __str__(self):
        if self.passed:
            return f"PASS (bound {self.bound})"
        return f"FAIL (bound {self.bound}; coefficient {self.value} at q^{self.witness})"


def plus_space_check(f: EllipticSeries, k: int, level_for_bound: int = 32) -> PlusSpaceVerdict:
    """Certify vanishing at exponents 1 mod 4 through f + f|T_chi - f|U(2)V(2) up to the Sturm bound."""
    bound = sturm_bound_elliptic(k, level_for_bound)
    if 2 * (f.trunc // 2) < bound:
        raise NeedsMoreTermsError(f"plus-space check at weight {k} needs {bound} terms, series has {f.trunc}")
    g = f + op_Tchi(f) - op_V(op_U(f, 2), 2)
    for n in range(bound + 1):
        if g[n]:
            return PlusSpaceVerdict(False, bound, n, g[n])
    return PlusSpaceVerdict(True, bound)


def maass_lift(h: EllipticSeries, k: int, trunc: int) -> HermitianSeries:
    """Weight-k Hermitian lift of a cuspidal plus form h of weight k - 1."""
    need = 4 * trunc * trunc
    if h.trunc < need:
        raise NeedsMoreTermsError(f"lift to truncation {trunc} needs h up to q^{need}, have q^{h.trunc}")
    if h[0]:
        raise UnsupportedConstantTermError("only forms with vanishing constant term can be lifted")
    coeffs = {}
    for H in enumerate_hermitian(trunc):
        if rank(H) < 2:
            continue
        fd = H.four_det()
        total = Fraction(0)
        for d in divisors(content(H)):
            arg = fd // (d * d)
            total += Fraction(d ** (k - 1) * h[arg], 1 + abs(chi_m4(arg)))
        if total:
            coeffs[H] = _norm(total)
    return HermitianSeries(coeffs, trunc, k, check=False)


def published_table(name: str) -> dict[int, int]:
    """Reference coefficients of h13, h15 or h17 as printed, exponent -> coefficient."""
    text = resources.files("hermring").joinpath(f"data/{name}_table.txt").read_text()
    return {int(n): int(c) for n, c in (line.split() for line in text.splitlines() if line.strip())}


def table_mismatch(h: EllipticSeries, table: dict[int, int]):
    """First exponent where h disagrees with the table (listed and unlisted exponents up to its end)."""
    last = max(table)
    if h.trunc < last:
        raise NeedsMoreTermsError(f"table runs to q^{last}, series to q^{h.trunc}")
    for n in range(last + 1):
        if h[n] != table.get(n, 0):
            return n, h[n], table.get(n, 0)
    return None
