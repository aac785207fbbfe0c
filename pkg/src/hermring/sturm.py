"""Sturm-type verdicts: congruences mod p and exact vanishing from finitely many coefficients."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .checks import fmt_index
from .eisenlift import NeedsMoreTermsError
from .lattice import enumerate_hermitian, enumerate_siegel
from .series import HermitianSeries, SiegelSeries

__all__ = [
    "InternalConsistencyError",
    "hermitian_sturm_bound",
    "siegel_sturm_bound",
    "hermitian_regime",
    "CongruenceVerdict",
    "VanishingVerdict",
    "check_congruence_hermitian",
    "check_congruence_siegel",
    "check_vanishing_hermitian",
    "FALSIFIER_GENERATORS",
    "weight_monomials",
    "FalsifierReport",
    "falsifier_harness",
]

# theorem tags carried by verdicts
HERMITIAN_4K = "hermitian-sturm(4|k, all p)"
HERMITIAN_P5 = "hermitian-sturm(k even, p>=5)"
HERMITIAN_Q = "hermitian-vanishing(over Q)"
SIEGEL = "siegel-sturm(all p)"
ADVISORY = "unsupported-regime(advisory-only)"


class InternalConsistencyError(AssertionError):
    """A finite check contradicted a proved theorem: this is a bug, not mathematics."""


def hermitian_sturm_bound(k: int) -> int:
    if k < 0:
        raise ValueError("weight must be nonnegative")
    return k // 8


def siegel_sturm_bound(k: int) -> int:
    if k < 0:
        raise ValueError("weight must be nonnegative")
    return k // 10


def hermitian_regime(k: int, p: int) -> str:
    if k % 4 == 0:
        return HERMITIAN_4K
    if k % 2 == 0 and p >= 5:
        return HERMITIAN_P5
    return ADVISORY


@dataclass(frozen=True)
class CongruenceVerdict:
    theorem: str
    weight: int
    prime: int
    bound: int
    verdict: str
    witness: tuple | None = None
    witness_value: int | None = None
    empirical_extension: str = "PASS"
    extension_witness: tuple | None = None
    trunc: int | None = None

    def __post_init__(self):
        if self.verdict == "FAIL" and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    @property
    def certified(self) -> bool:
        return self.passed and self.theorem != ADVISORY

    @property
    def alarm(self) -> bool:
        """PASS below the bound but a nonzero reduced coefficient above it."""
        return self.certified and self.empirical_extension == "FAIL"

    def certificate(self) -> str:
        lines = [
            "# congruence certificate",
            f"theorem={self.theorem}",
            f"weight={self.weight}",
            f"prime={self.prime}",
            f"bound={self.bound}",
            f"trunc={self.trunc}",
            f"verdict={self.verdict}",
            f"witness={'none' if self.witness is None else fmt_index(self.witness)}",
        ]
        if self.witness is not None:
            lines.append(f"witness_value_mod_p={self.witness_value}")
        lines.append(f"empirical_extension={self.empirical_extension}")
        if self.extension_witness is not None:
            lines.append(f"extension_witness={fmt_index(self.extension_witness)}")
        return "\n".join(lines) + "\n"


def _congruence(F, k: int, p: int, bound: int, theorem: str, within) -> CongruenceVerdict:
    if F.trunc < bound:
        raise NeedsMoreTermsError(f"weight {k} needs truncation {bound}, series has {F.trunc}")
    reduced = F.reduce_mod(p)
    inside = [(i, v) for i, v in sorted(reduced.coeffs.items(), key=lambda kv: F._sort_key(kv[0])) if within(i)]
    outside = sorted((i for i in reduced.coeffs), key=F._sort_key)
    return CongruenceVerdict(
        theorem=theorem,
        weight=k,
        prime=p,
        bound=bound,
        verdict="FAIL" if inside else "PASS",
        witness=tuple(inside[0][0]) if inside else None,
        witness_value=inside[0][1] if inside else None,
        empirical_extension="FAIL" if outside else "PASS",
        extension_witness=tuple(outside[0]) if outside else None,
        trunc=F.trunc,
    )


def check_congruence_hermitian(F: HermitianSeries, k: int, p: int) -> CongruenceVerdict:
    """Scan m, n <= floor(k/8) mod p; every stored coefficient is reduced as well."""
    bound = hermitian_sturm_bound(k)
    return _congruence(F, k, p, bound, hermitian_regime(k, p), lambda h: h.m <= bound and h.n <= bound)


def check_congruence_siegel(F: SiegelSeries, k: int, p: int) -> CongruenceVerdict:
    bound = siegel_sturm_bound(k)
    return _congruence(F, k, p, bound, SIEGEL, lambda t: t.m <= bound and t.n <= bound)


@dataclass(frozen=True)
class VanishingVerdict:
    passed: bool
    weight: int
    bound: int
    witness: tuple | None = None
    value: object = None

    def __str__(self):
        if self.passed:
            return f"PASS: vanishes identically (weight {self.weight}, bound {self.bound})"
        return f"FAIL: coefficient {self.value} at {fmt_index(self.witness)}"


def check_vanishing_hermitian(F: HermitianSeries, k: int) -> VanishingVerdict:
    """Zero coefficients for all m, n <= floor(k/8) force F = 0 as a modular form."""
    bound = hermitian_sturm_bound(k)
    if F.trunc < bound:
        raise NeedsMoreTermsError(f"weight {k} needs truncation {bound}, series has {F.trunc}")
    for h in enumerate_hermitian(bound):
        if F[h]:
            return VanishingVerdict(False, k, bound, tuple(h), F[h])
    return VanishingVerdict(True, k, bound)


# -- falsifier harness -----------------------------------------------------------

FALSIFIER_GENERATORS = ("H4", "E6", "H8", "F10", "H12", "I12", "J12", "K14", "H16", "I16", "K18", "H20")


def weight_monomials(weights: dict[str, int], k: int) -> list[tuple[str, ...]]:
    """All multisets of generator names whose weights sum to k, in a fixed order."""
    names = sorted(weights, key=lambda n: (weights[n], n))
    out = []
    for length in range(1, k // min(weights.values()) + 1):
        for combo in combinations_with_replacement(names, length):
            if sum(weights[n] for n in combo) == k:
                out.append(combo)
    return out


@dataclass(frozen=True)
class FalsifierReport:
    prime: int
    weight: int
    trials: int
    kernel_dimension: int
    monomials: int
    nontrivial: int
    violations: int

    def line(self) -> str:
        status = "PASS" if self.violations == 0 else "FAIL"
        return (f"falsifier p={self.prime} k={self.weight} {status} trials={self.trials} "
                f"monomials={self.monomials} kernel_dim={self.kernel_dimension} "
                f"nontrivial={self.nontrivial} violations={self.violations}")


def _nullspace_mod_p(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    from sympy import GF
    from sympy.polys.matrices import DomainMatrix

    K = GF(p)
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    M = DomainMatrix([[K(x) for x in row] for row in rows], (len(rows), ncols), K)
    return [[int(x) % p for x in vec] for vec in M.nullspace().to_list()]


def falsifier_harness(ledger, p: int, k: int, trials: int = 50, seed: int = 0) -> FalsifierReport:
    """Random integral combinations of weight-k monomials that vanish mod p below the bound.

    Each combination must then vanish mod p at every stored index; anything else
    contradicts the Sturm bound and raises :class:`InternalConsistencyError`.
    """
    bound = hermitian_sturm_bound(k)
    weights = {n: ledger.weight(n) for n in FALSIFIER_GENERATORS if ledger.weight(n) <= k}
    monos = weight_monomials(weights, k)
    series = []
    for combo in monos:
        s = ledger[combo[0]]
        for n in combo[1:]:
            s = s * ledger[n]
        series.append(s)
    low = list(enumerate_hermitian(bound))
    rows = [[int(s[h]) % p for s in series] for h in low]
    basis = _nullspace_mod_p(rows, len(series), p)
    rng = random.Random(f"{seed}-{p}-{k}")
    nontrivial = violations = 0
    for _ in range(trials):
        coeffs = [rng.randrange(-3, 4) * p for _ in series]
        for vec in basis:
            t = rng.randrange(p)
            coeffs = [c + t * v for c, v in zip(coeffs, vec)]
        if any(c % p for c in coeffs):
            nontrivial += 1
        F = HermitianSeries.zero(ledger.trunc, k)
        for c, s in zip(coeffs, series):
            if c:
                F = F + c * s
        verdict = check_congruence_hermitian(F, k, p)
        if not verdict.passed:
            raise InternalConsistencyError(f"kernel element fails the low scan at {verdict.witness}")
        if verdict.alarm:
            violations += 1
    report = FalsifierReport(p, k, trials, len(basis), len(monos), nontrivial, violations)
    if violations:
        raise InternalConsistencyError(report.line())
    return report
