"""The generator ledger: base forms, the integral generators and their S/U/V certificates.

Every form is defined once, as a function whose parameter names are the forms
it depends on.  The same definitions are evaluated over truncated Fourier
expansions (:class:`GeneratorLedger`) and over the free polynomial ring on the
five algebraically independent base forms (:func:`symbolic_value`).
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass
from fractions import Fraction as F
from functools import lru_cache
from importlib import resources
from typing import Callable

from .checks import Check, check, describe_difference, fmt_index
from .eisenlift import H13, H15, H17, hermitian_eisenstein, maass_lift, recipe_expand
from .series import HermitianSeries

__all__ = [
    "LedgerBuildError",
    "LemmaViolationError",
    "ConfigurationError",
    "Definition",
    "DEFINITIONS",
    "BASE_NAMES",
    "THEOREM_NAMES",
    "AUXILIARY_NAMES",
    "SUV_POLYNOMIAL_NAMES",
    "GeneratorLedger",
    "LedgerEntry",
    "load_suv_polynomials",
    "evaluate_polynomial",
    "symbolic_value",
    "is_cusp_at_trunc",
    "build_base",
    "build_suv",
    "build_all",
]


class LedgerBuildError(ArithmeticError):
    pass


class LemmaViolationError(LedgerBuildError):
    pass


class ConfigurationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Definition:
    name: str
    weight: int | None
    formula: str
    func: Callable
    deps: tuple[str, ...]
    integral: bool = True
    lemma: bool = False


DEFINITIONS: dict[str, Definition] = {}


def define(weight: int | None, formula: str, *, integral: bool = True, lemma: bool = False):
    def register(func):
        deps = tuple(inspect.signature(func).parameters)
        DEFINITIONS[func.__name__] = Definition(func.__name__, weight, formula, func, deps, integral, lemma)
        return func

    return register


# -- base forms from Eisenstein series --------------------------------------


@define(4, "H4 := E4")
def H4(E4):
    return E4


@define(8, "H8 := -61/(2^10 3^2 5^2) (E8 - H4^2)")
def H8(E8, H4):
    return F(-61, 2**10 * 3**2 * 5**2) * (E8 - H4**2)


@define(10, "F10 := -277/(2^9 3^3 5^2 7) (E10 - H4 E6)")
def F10(E10, H4, E6):
    return F(-277, 2**9 * 3**3 * 5**2 * 7) * (E10 - H4 * E6)


@define(12, "H12 := -(19 691 2659)/(2^11 3^7 5^3 7^2 73) (E12 - 441/691 H4^3 - 250/691 E6^2 "
            "+ 2^9 3^4 5^2 7^2 6791/(19 691 2659) H4 H8)")
def H12(E12, H4, E6, H8):
    c = F(-19 * 691 * 2659, 2**11 * 3**7 * 5**3 * 7**2 * 73)
    d = F(2**9 * 3**4 * 5**2 * 7**2 * 6791, 19 * 691 * 2659)
    return c * (E12 - F(441, 691) * H4**3 - F(250, 691) * E6**2 + d * H4 * H8)


# -- substitution series ------------------------------------------------------


@define(None, "S := (H4 - 1)/(2^4 3)", lemma=True)
def S(H4):
    return (H4 - 1) / 48


@define(None, "U := (E6 - 1 - 2^3 3^2 S)/(2^5 3^3)", lemma=True)
def U(E6, S):
    return (E6 - 1 - 72 * S) / 864


@define(None, "V := (6 H12 + H4^2 H8 - F10)/(2^3 3^2)", lemma=True)
def V(H12, H4, H8, F10):
    return (6 * H12 + H4**2 * H8 - F10) / 72


# -- generators of weight 12 to 24 -------------------------------------------


@define(12, "I12 := 2^-6 3^-3 (H4^3 - E6^2) + 2^4 3^2 H12")
def I12(H4, E6, H12):
    return F(1, 2**6 * 3**3) * (H4**3 - E6**2) + 144 * H12


@define(12, "J12 := E6^2")
def J12(E6):
    return E6**2


@define(16, "H16 := 2^-1 3^-1 (E6 F10 - H4^2 H8)")
def H16(E6, F10, H4, H8):
    return F(1, 6) * (E6 * F10 - H4**2 * H8)


@define(16, "I16 := 2^-2 3^-1 (H4 H12 - H16)")
def I16(H4, H12, H16):
    return F(1, 12) * (H4 * H12 - H16)


@define(20, "H20 := 2^-2 3^-2 (F10^2 - H4 H8^2 - 2^2 3 H8 H12)")
def H20(F10, H4, H8, H12):
    return F(1, 36) * (F10**2 - H4 * H8**2 - 12 * H8 * H12)


@define(24, "H24 := 2^-3 3^-1 (H12^2 - H4 H20) - 2^-1 3^-1 H8 I16")
def H24(H12, H4, H20, H8, I16):
    return F(1, 24) * (H12**2 - H4 * H20) - F(1, 6) * H8 * I16


# -- auxiliary K/L forms ------------------------------------------------------


@define(14, "K14 := 2^-1 3^-1 (H4 F10 - E6 H8)")
def K14(H4, F10, E6, H8):
    return F(1, 6) * (H4 * F10 - E6 * H8)


@define(18, "K18 := 2^-2 3^-1 (E6 H12 - H4 K14)")
def K18(E6, H12, H4, K14):
    return F(1, 12) * (E6 * H12 - H4 * K14)


@define(22, "K22 := 2^-1 3^-1 (F10 H12 - H8 K14)")
def K22(F10, H12, H8, K14):
    return F(1, 6) * (F10 * H12 - H8 * K14)


@define(26, "K26 := 2^-1 3^-1 (F10 I16 - H8 K18)")
def K26(F10, I16, H8, K18):
    return F(1, 6) * (F10 * I16 - H8 * K18)


@define(30, "K30 := 2^-1 3^-1 (E6 H24 - K14 I16) + 3^-1 H8 F10 I12")
def K30(E6, H24, K14, I16, H8, F10, I12):
    return F(1, 6) * (E6 * H24 - K14 * I16) + F(1, 3) * H8 * F10 * I12


@define(30, "L30 := 2^-1 3^-1 (F10 H20 - H8 K22)")
def L30(F10, H20, H8, K22):
    return F(1, 6) * (F10 * H20 - H8 * K22)


@define(34, "K34 := 2^-1 3^-1 (F10 H24 - H8 K26)")
def K34(F10, H24, H8, K26):
    return F(1, 6) * (F10 * H24 - H8 * K26)


@define(38, "K38 := its S/U/V polynomial (no closed definition)")
def K38(H12, H8, S, U, V):
    return evaluate_polynomial("K38", certificate_values(H12, H8, S, U, V))


@define(42, "K42 := 2^-2 3^-1 (H12 K30 - K14 H28) - 2^-1 H8 I12 K22")
def K42(H12, K30, K14, H28, H8, I12, K22):
    return F(1, 12) * (H12 * K30 - K14 * H28) - F(1, 2) * H8 * I12 * K22


# -- remaining generators -----------------------------------------------------


@define(24, "I24 := E6 K18")
def I24(E6, K18):
    return E6 * K18


@define(28, "I28 := 2^-1 3^-1 (F10 K18 - H4 H8 I16)")
def I28(F10, K18, H4, H8, I16):
    return F(1, 6) * (F10 * K18 - H4 * H8 * I16)


@define(28, "H28 := 2^-1 3^-1 (H4 H24 - I28) - 3^-1 H8^2 I12")
def H28(H4, H24, I28, H8, I12):
    return F(1, 6) * (H4 * H24 - I28) - F(1, 3) * H8**2 * I12


@define(36, "H36 := 2^-1 3^-2 (H12 H24 - H20 I16) + 7 3^-2 H8 H28 + 3^-1 H8^3 H12")
def H36(H12, H24, H20, I16, H8, H28):
    return F(1, 18) * (H12 * H24 - H20 * I16) + F(7, 9) * H8 * H28 + F(1, 3) * H8**3 * H12


@define(36, "I36 := K18^2")
def I36(K18):
    return K18**2


@define(36, "J36 := E6 K30")
def J36(E6, K30):
    return E6 * K30


@define(40, "H40 := 2^-2 (H4 H36 - (2 3)^-1 F10 K30) - 5 2^-3 3^-1 H4 H8 H28 + 2^-2 H8^3 H16 + 2^-1 H8 I12 H20")
def H40(H4, H36, F10, K30, H8, H28, H16, I12, H20):
    return (F(1, 4) * (H4 * H36 - F(1, 6) * F10 * K30) - F(5, 24) * H4 * H8 * H28
            + F(1, 4) * H8**3 * H16 + F(1, 2) * H8 * I12 * H20)


@define(40, "I40 := 2^-1 3^-1 (F10 K30 - H4 H8 H28)")
def I40(F10, K30, H4, H8, H28):
    return F(1, 6) * (F10 * K30 - H4 * H8 * H28)


@define(48, "H48 := 2^-2 (H12 H36 - H24^2) - 2^-3 H8 (H12 H28 + 2 H40 + 4 F10^2 H12 H8 - 2 H20 H4 H8^2 "
            "- 2 H12 H4 H8^3 + 4 H20 H8 I12 + 2 H12 H8^2 I12 - H24 I16 - 2 H8^3 I16 + 2 I40)")
def H48(H12, H36, H24, H8, H28, H40, F10, H20, H4, I12, I16, I40):
    inner = (H12 * H28 + 2 * H40 + 4 * F10**2 * H12 * H8 - 2 * H20 * H4 * H8**2 - 2 * H12 * H4 * H8**3
             + 4 * H20 * H8 * I12 + 2 * H12 * H8**2 * I12 - H24 * I16 - 2 * H8**3 * I16 + 2 * I40)
    return F(1, 4) * (H12 * H36 - H24**2) - F(1, 8) * H8 * inner


@define(48, "I48 := K18 K30")
def I48(K18, K30):
    return K18 * K30


@define(52, "H52 := 2^-1 3^-1 (F10 K42 - 2 F10^2 H12^2 H8 - 2^2 H12 H20 H8 I12 - 5 F10 K22 H8 I12 "
            "- H28 H8 I16 - H8^3 I12 I16)")
def H52(F10, K42, H12, H8, H20, I12, K22, H28, I16):
    return F(1, 6) * (F10 * K42 - 2 * F10**2 * H12**2 * H8 - 4 * H12 * H20 * H8 * I12
                      - 5 * F10 * K22 * H8 * I12 - H28 * H8 * I16 - H8**3 * I12 * I16)


@define(60, "H60 := K30^2")
def H60(K30):
    return K30**2


@define(60, "I60 := K18 K42")
def I60(K18, K42):
    return K18 * K42


@define(72, "H72 := K30 K42")
def H72(K30, K42):
    return K30 * K42


@define(84, "H84 := K42^2")
def H84(K42):
    return K42**2


BASE_NAMES = ("H4", "E6", "H8", "F10", "H12")
THEOREM_NAMES = (
    "H4", "H8", "H12", "I12", "J12", "H16", "I16", "H20", "H24", "I24", "H28", "I28",
    "H36", "I36", "J36", "H40", "I40", "H48", "I48", "H52", "H60", "I60", "H72", "H84",
)
AUXILIARY_NAMES = ("K14", "K18", "K22", "K26", "K30", "L30", "K34", "K38", "K42")
SUV_NAMES = ("S", "U", "V")
WEIGHTS = {name: d.weight for name, d in DEFINITIONS.items()}
WEIGHTS["E6"] = 6


def _is_eisenstein(name: str) -> bool:
    return name.startswith("E") and name[1:].isdigit()


def _dependency_order(targets, leaves) -> list[str]:
    order: list[str] = []
    state: dict[str, int] = {}

    def visit(name, path):
        if name in leaves or _is_eisenstein(name) or state.get(name) == 2:
            return
        if state.get(name) == 1:
            raise ConfigurationError("dependency cycle: " + " -> ".join((*path, name)))
        if name not in DEFINITIONS:
            raise ConfigurationError(f"no definition for {name!r}")
        state[name] = 1
        for dep in DEFINITIONS[name].deps:
            visit(dep, (*path, name))
        state[name] = 2
        order.append(name)

    for t in targets:
        visit(t, ())
    return order


# -- S/U/V polynomial certificates ------------------------------------------

POLY_VARS = ("H12", "H8", "S", "U", "V")


@lru_cache(maxsize=None)
def load_suv_polynomials() -> dict[str, tuple[tuple[int, tuple[int, ...]], ...]]:
    """Integer polynomials in H12, H8, S, U, V, keyed by the form they certify."""
    text = resources.files("hermring").joinpath("data/suv_polynomials.txt").read_text()
    polys: dict[str, list] = {}
    current = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("["):
            current = polys.setdefault(line.strip("[]"), [])
            continue
        c, *exps = map(int, line.split())
        current.append((c, tuple(exps)))
    return {k: tuple(v) for k, v in polys.items()}


# the weight-52 certificate is labelled K52 in the source list; it certifies H52
SUV_POLYNOMIAL_TARGETS = {name: ("H52" if name == "K52" else name) for name in load_suv_polynomials()}
# H20's expansion comes from the integrality argument rather than the certificate list
SUV_POLYNOMIAL_NAMES = tuple(t for t in SUV_POLYNOMIAL_TARGETS.values() if t != "H20")

# The certificates are written in the variable -V: expanding F10 = 6 H12 + H4^2 H8 + 72 V'
# reproduces them, while the stated normalization has -72 V.
CERTIFICATE_V_SIGN = -1


def certificate_values(H12, H8, S, U, V) -> dict:
    return {"H12": H12, "H8": H8, "S": S, "U": U, "V": CERTIFICATE_V_SIGN * V}


def evaluate_polynomial(name: str, values: dict, *, terms=None, memo: dict | None = None):
    """Evaluate a stored S/U/V polynomial in any ring, sharing monomials through ``memo``."""
    if terms is None:
        key = {v: k for k, v in SUV_POLYNOMIAL_TARGETS.items()}.get(name, name)
        terms = load_suv_polynomials()[key]
    if memo is None:
        memo = {}
    zero_exps = (0,) * len(POLY_VARS)

    def monomial(exps):
        if exps in memo:
            return memo[exps]
        j = next(i for i, e in enumerate(exps) if e)
        lower = exps[:j] + (exps[j] - 1,) + exps[j + 1:]
        val = values[POLY_VARS[j]] if lower == zero_exps else monomial(lower) * values[POLY_VARS[j]]
        memo[exps] = val
        return val

    total = None
    for c, exps in terms:
        term = c * monomial(exps) if any(exps) else c
        total = term if total is None else total + term
    return total


# -- symbolic route -----------------------------------------------------------


@lru_cache(maxsize=None)
def _symbolic_ring():
    from sympy import QQ
    from sympy.polys.rings import ring

    R, *gens = ring(",".join(BASE_NAMES), QQ)
    return R, dict(zip(BASE_NAMES, gens))


_SYMBOLIC_CACHE: dict[str, object] = {}


def symbolic_value(name: str):
    """A definition as an exact polynomial in the five base forms."""
    _, gens = _symbolic_ring()
    if name in gens:
        return gens[name]
    if name in _SYMBOLIC_CACHE:
        return _SYMBOLIC_CACHE[name]
    for n in _dependency_order([name], gens):
        if n not in _SYMBOLIC_CACHE:
            d = DEFINITIONS[n]
            args = [gens[a] if a in gens else _SYMBOLIC_CACHE[a] for a in d.deps]
            _SYMBOLIC_CACHE[n] = d.func(*args)
    return _SYMBOLIC_CACHE[name]


def symbolic_polynomial(name: str):
    _, gens = _symbolic_ring()
    return evaluate_polynomial(name, certificate_values(*(symbolic_value(v) for v in POLY_VARS)))


# -- the ledger -----------------------------------------------------------------


@dataclass(frozen=True)
class LedgerEntry:
    name: str
    series: HermitianSeries
    weight: int | None
    provenance: str


class GeneratorLedger:
    """Lazily built, cached registry of named Hermitian expansions at one truncation.

    Besides the defined forms it resolves Eisenstein series ``E<k>``, the lifts
    ``Lift(h13)``, ``Lift(h15)``, ``Lift(h17)`` and ``poly:<name>`` (the S/U/V
    certificate evaluated as a series).
    """

    def __init__(self, trunc: int, store=None):
        if trunc < 1:
            raise ValueError("ledger truncation must be at least 1")
        self.trunc = trunc
        self.store = store
        self._series: dict[str, HermitianSeries] = {}
        self._monomials: dict = {}

    # lookup

    def __contains__(self, name: str) -> bool:
        return name in self._series

    def __getitem__(self, name: str) -> HermitianSeries:
        return self.get(name)

    def weight(self, name: str) -> int | None:
        if name in WEIGHTS:
            return WEIGHTS[name]
        if _is_eisenstein(name):
            return int(name[1:])
        if name.startswith("Lift(h"):
            return int(name[6:-1]) + 1
        if name.startswith("poly:"):
            return self.weight(name[5:])
        raise KeyError(name)

    def provenance(self, name: str) -> str:
        if name in DEFINITIONS:
            return DEFINITIONS[name].formula
        if name.startswith("E"):
            return f"{name} := Hermitian Eisenstein series (Krieg coefficient formula)"
        if name.startswith("Lift("):
            return f"{name} := Maass lift of the plus form {name[5:-1]}"
        if name.startswith("poly:"):
            return f"{name} := S/U/V certificate polynomial for {name[5:]}"
        return name

    def entry(self, name: str) -> LedgerEntry:
        return LedgerEntry(name, self.get(name), self.weight(name), self.provenance(name))

    def get(self, name: str) -> HermitianSeries:
        if name in self._series:
            return self._series[name]
        weight = self.weight(name)
        series = None
        if self.store is not None:
            series = self.store.load("hermitian", name, self.trunc, weight)
        if series is None:
            series = self._compute(name)
            if name in DEFINITIONS:
                self._check_integral(name, series)
            series = series.renamed(name, weight)
            if self.store is not None:
                self.store.save(series, name, self.provenance(name))
        else:
            series = series.renamed(name, weight)
        self._series[name] = series
        return series

    def derived(self, name: str, weight: int | None, compute: Callable[[], HermitianSeries]) -> HermitianSeries:
        """A cached intermediate series that is not itself a named form."""
        key = f"derived:{name}"
        if key in self._series:
            return self._series[key]
        series = self.store.load("hermitian", key, self.trunc, weight) if self.store is not None else None
        if series is None:
            series = compute().renamed(key, weight)
            if self.store is not None:
                self.store.save(series, key, name)
        self._series[key] = series
        return series

    def _compute(self, name: str) -> HermitianSeries:
        M = self.trunc
        if _is_eisenstein(name):
            return hermitian_eisenstein(int(name[1:]), M)
        if name.startswith("Lift(h"):
            recipe = {"h13": H13, "h15": H15, "h17": H17}[name[5:-1]]
            h = recipe_expand(recipe, 4 * M * M)
            return maass_lift(h, recipe.weight + 1, M)
        if name.startswith("poly:"):
            values = certificate_values(*(self.get(v) for v in POLY_VARS))
            return evaluate_polynomial(name[5:], values, memo=self._monomials)
        if name not in DEFINITIONS:
            raise KeyError(f"unknown form {name!r}")
        d = DEFINITIONS[name]
        for dep in _dependency_order([name], ())[:-1]:
            self.get(dep)
        args = [self.get(dep) for dep in d.deps]
        if name == "K38":
            return evaluate_polynomial("K38", certificate_values(*args), memo=self._monomials)
        result = d.func(*args)
        if not isinstance(result, HermitianSeries):
            result = HermitianSeries.constant(result, M)
        return result

    @staticmethod
    def _check_integral(name: str, series: HermitianSeries) -> None:
        bad = series.first_nonintegral()
        if bad is None:
            return
        idx, c = bad
        err = LemmaViolationError if DEFINITIONS[name].lemma else LedgerBuildError
        raise err(f"{name} has non-integral coefficient {c} at {fmt_index(idx)}")

    # bulk construction

    def build(self, names) -> "GeneratorLedger":
        for name in names:
            self.get(name)
        return self

    def build_all(self) -> "GeneratorLedger":
        return self.build(BASE_NAMES + SUV_NAMES + THEOREM_NAMES + AUXILIARY_NAMES)

    @property
    def names(self) -> list[str]:
        return list(self._series)

    # verification

    def verify_integrality(self, names=None) -> list[Check]:
        names = names or (BASE_NAMES + SUV_NAMES + THEOREM_NAMES + AUXILIARY_NAMES)
        out = []
        for name in names:
            try:
                s = self.get(name)
            except LedgerBuildError as exc:
                out.append(check(f"integral {name}", False, str(exc)))
                continue
            bad = s.first_nonintegral()
            detail = "" if bad is None else f"non-integral {bad[1]} at {fmt_index(bad[0])}"
            out.append(check(f"integral {name}", bad is None, detail))
        return out

    def rigorous_at(self, weight: int) -> bool:
        """Whether vanishing of a weight-k form up to the truncation forces it to vanish."""
        return self.trunc >= weight // 8

    def verify_suv_polynomial(self, name: str, terms=None) -> Check:
        """Compare a certificate polynomial with the ledger entry at the truncation.

        ``terms`` overrides the stored polynomial (used for negative controls).
        A passing check is rigorous when the identity also holds in the free
        polynomial ring on the base forms.
        """
        label = f"suv {name}"
        if terms is not None:
            values = certificate_values(*(self.get(v) for v in POLY_VARS))
            poly_series = evaluate_polynomial(name, values, terms=terms)
        else:
            poly_series = self.get(f"poly:{name}")
        target = self.get(name)
        if poly_series != target:
            detail = describe_difference(poly_series, target)
            if terms is None and poly_series == -target:
                detail += "; the listed polynomial equals the negative of the form"
            return check(label, False, detail)
        if name == "K38":
            return check(label, True, "vacuous: the polynomial is the definition", rigorous=False)
        rigorous = terms is None and symbolic_identity(name)
        return check(label, True, "identity in Q[H4,E6,H8,F10,H12]" if rigorous else "", rigorous)

    def _identity(self, label: str, lhs, rhs, weight: int) -> Check:
        if lhs != rhs:
            return check(label, False, describe_difference(lhs, rhs))
        return check(label, True, f"vanishing bound m,n <= {weight // 8}", self.rigorous_at(weight))

    def verify_i12_expansion(self) -> Check:
        """2^-6 3^-3 (H4^3 - E6^2) against S^2 + 64 S^3 - U - 72 S U - 432 U^2."""
        S, U = self["S"], self["U"]
        lhs = self.derived("I12-lhs", 12, lambda: F(1, 2**6 * 3**3) * (self["H4"] ** 3 - self["E6"] ** 2))
        rhs = self.derived("I12-rhs", None, lambda: S**2 + 64 * S**3 - U - 72 * S * U - 432 * U**2)
        if lhs != rhs:
            return check("I12 S/U expansion", False, describe_difference(lhs, rhs))
        # the identity is polynomial in H4 and E6, so it holds exactly
        return check("I12 S/U expansion", True, "polynomial identity in H4, E6", True)

    def verify_lift_identities(self) -> list[Check]:
        H8, F10 = self["H8"], self["F10"]
        h8sq = self.derived("H8^2", 16, lambda: H8 * H8)
        h8f10 = self.derived("H8*F10", 18, lambda: H8 * F10)
        return [
            self._identity("K14 = Lift(h13)", self["K14"], self["Lift(h13)"], 14),
            self._identity("I16 = Lift(h15) - 56 H8^2", self["I16"], self["Lift(h15)"] - 56 * h8sq, 16),
            self._identity("K18 = Lift(h17) + 256 H8 F10", self["K18"], self["Lift(h17)"] + 256 * h8f10, 18),
        ]

    def verify_constructions(self) -> list[Check]:
        """The base forms: H8's leading block, cuspidality, and the S/U/V normalizations."""
        from .lattice import HermitianIndex

        H8 = self["H8"]
        block = {(1, 0, 0, 1): 4, (1, 1, 0, 1): -2, (1, -1, 0, 1): -2, (1, 0, 1, 1): -2, (1, 0, -1, 1): -2,
                 (1, 1, 1, 1): 1, (1, 1, -1, 1): 1, (1, -1, 1, 1): 1, (1, -1, -1, 1): 1}
        bad = next((h for h, c in block.items() if H8[HermitianIndex(*h)] != c), None)
        out = [check("H8 leading block", bad is None,
                     "" if bad is None else f"a{fmt_index(bad)} = {H8[HermitianIndex(*bad)]}, expected {block[bad]}",
                     True if bad is None else None)]
        e10_comb = self.derived("E10-E4*E6", 10, lambda: self["E10"] - self["E4"] * self["E6"])
        for label, f in (("E10 - E4 E6", e10_comb), ("H8", H8), ("F10", self["F10"]), ("H12", self["H12"])):
            c = is_cusp_at_trunc(f)
            out.append(Check(f"cusp {label}", c.status, c.detail, c.rigorous))
        S, U, V = self["S"], self["U"], self["V"]
        h4sq_h8 = self.derived("H4^2*H8", 16, lambda: self["H4"] ** 2 * H8)
        out.append(check("H4 = 1 + 48 S", self["H4"] == 1 + 48 * S, "", True))
        out.append(check("E6 = 1 + 72 S + 864 U", self["E6"] == 1 + 72 * S + 864 * U, "", True))
        out.append(check("F10 = 6 H12 + H4^2 H8 - 72 V", self["F10"] == 6 * self["H12"] + h4sq_h8 - 72 * V, "", True))
        return out

    def verify_identities(self) -> list[Check]:
        out = self.verify_constructions()
        out.append(self.verify_i12_expansion())
        out += self.verify_lift_identities()
        out += [self.verify_suv_polynomial(n) for n in SUV_POLYNOMIAL_NAMES + ("H20",)]
        return out

    def lemma_modulus_report(self) -> Check:
        """Is 6 H12 + H4^2 H8 - F10 divisible by 2^3 3^3, not only by 2^3 3^2?

        Reported as an observation; the check passes when the answer is known.
        """
        V = self["V"]
        bad = next(((i, c) for i, c in V.items() if c % 3), None)
        if bad is None:
            return check("V mod 3", True, "6 H12 + H4^2 H8 - F10 vanishes mod 2^3 3^3 at truncation", False)
        return check("V mod 3", True,
                     f"6 H12 + H4^2 H8 - F10 is not 0 mod 2^3 3^3: V has {bad[1]} at {fmt_index(bad[0])}")


@lru_cache(maxsize=None)
def symbolic_identity(name: str) -> bool:
    return symbolic_polynomial(name) == symbolic_value(name)


# -- module-level conveniences -------------------------------------------------


def build_base(trunc: int, store=None) -> GeneratorLedger:
    return GeneratorLedger(trunc, store).build(BASE_NAMES)


def build_suv(ledger: GeneratorLedger) -> tuple[HermitianSeries, HermitianSeries, HermitianSeries]:
    return ledger["S"], ledger["U"], ledger["V"]


def build_all(trunc: int, store=None) -> GeneratorLedger:
    return GeneratorLedger(trunc, store).build_all()


def is_cusp_at_trunc(f: HermitianSeries) -> Check:
    for idx, c in f.items():
        if idx.four_det() == 0:
            return check("cusp", False, f"coefficient {c} at rank<=1 index {fmt_index(idx)}")
    return check("cusp", True)
