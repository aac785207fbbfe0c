"""Siegel side: Igusa's generators recovered by restriction, and the restriction claims."""

from __future__ import annotations

from fractions import Fraction as F

from .checks import Check, check, describe_difference, fmt_index
from .genring import GeneratorLedger, LedgerBuildError
from .lattice import SiegelIndex
from .series import SiegelSeries, restrict_to_siegel

__all__ = [
    "RestrictionNormalizationError",
    "IgusaLedger",
    "IGUSA_NAMES",
    "SIEGEL_PRODUCTS",
    "HSU_PAIRS",
    "K_RESTRICTIONS",
    "build_base_siegel",
    "build_igusa",
    "verify_restriction_proposition",
    "siegel_vanishing_bound",
]


class RestrictionNormalizationError(LedgerBuildError):
    pass


def siegel_vanishing_bound(k: int) -> int:
    return k // 10


def build_base_siegel(her: GeneratorLedger) -> dict[str, SiegelSeries]:
    """X4, X6, X10, X12 as restrictions of H4, E6, F10 / 6 and H12."""
    f10 = restrict_to_siegel(her["F10"])
    bad = next(((i, c) for i, c in f10.items() if F(c) / 6 != int(F(c) / 6)), None)
    if bad is not None:
        raise RestrictionNormalizationError(
            f"F10 restriction coefficient {bad[1]} at {fmt_index(bad[0])} is not divisible by 6")
    return {
        "X4": restrict_to_siegel(her["H4"]).renamed("X4", 4),
        "X6": restrict_to_siegel(her["E6"]).renamed("X6", 6),
        "X10": (f10 / 6).renamed("X10", 10),
        "X12": restrict_to_siegel(her["H12"]).renamed("X12", 12),
    }


# Igusa's combinations, each a function of already-built entries
_COMBINATIONS = {
    "Y12": lambda X: F(1, 2**6 * 3**3) * (X["X4"] ** 3 - X["X6"] ** 2) + 144 * X["X12"],
    "X16": lambda X: F(1, 12) * (X["X4"] * X["X12"] - X["X6"] * X["X10"]),
    "X18": lambda X: F(1, 12) * (X["X6"] * X["X12"] - X["X4"] ** 2 * X["X10"]),
    "X24": lambda X: F(1, 24) * (X["X12"] ** 2 - X["X4"] * X["X10"] ** 2),
    "X28": lambda X: F(1, 6) * (X["X4"] * X["X24"] - X["X10"] * X["X18"]),
    "X30": lambda X: F(1, 6) * (X["X6"] * X["X24"] - X["X4"] * X["X10"] * X["X16"]),
    "X36": lambda X: F(1, 18) * (X["X12"] * X["X24"] - X["X10"] ** 2 * X["X16"]),
    "X40": lambda X: F(1, 4) * (X["X4"] * X["X36"] - X["X10"] * X["X30"]),
    "X42": lambda X: F(1, 12) * (X["X12"] * X["X30"] - X["X4"] * X["X10"] * X["X28"]),
    "X48": lambda X: F(1, 4) * (X["X12"] * X["X36"] - X["X24"] ** 2),
}

IGUSA_NAMES = ("X4", "X6", "X10", "X12") + tuple(_COMBINATIONS)

SIEGEL_PRODUCTS: dict[str, tuple[str, ...]] = {
    "S4": ("X4",), "S12": ("X12",), "T12": ("Y12",), "U12": ("X6", "X6"), "S16": ("X10", "X6"),
    "T16": ("X16",), "S20": ("X10", "X10"), "S24": ("X24",), "T24": ("X6", "X18"),
    "S28": ("X28",), "T28": ("X10", "X18"), "S36": ("X36",), "T36": ("X18", "X18"),
    "U36": ("X6", "X30"), "S40": ("X40",), "T40": ("X10", "X30"), "S48": ("X48",),
    "T48": ("X18", "X30"), "S52": ("X42", "X10"), "S60": ("X30", "X30"), "T60": ("X18", "X42"),
    "S72": ("X30", "X42"), "S84": ("X42", "X42"),
}

# Hermitian generator -> Siegel generator; weight 32 has no named Hermitian form
HSU_PAIRS: tuple[tuple[str | None, str, int], ...] = (
    *((f"H{k}", f"S{k}", k) for k in (4, 12, 16, 20, 24, 28)),
    (None, "S32", 32),
    *((f"H{k}", f"S{k}", k) for k in (36, 40, 48, 52, 60, 72, 84)),
    *((f"I{k}", f"T{k}", k) for k in (12, 16, 24, 28, 36, 40, 48, 60)),
    ("J12", "U12", 12),
    ("J36", "U36", 36),
)

K_RESTRICTIONS: tuple[tuple[str, tuple[str, ...], int], ...] = (
    ("K14", ("X4", "X10"), 14),
    ("K18", ("X18",), 18),
    ("K22", ("X10", "X12"), 22),
    ("K26", ("X6", "X16"), 26),
    ("K30", ("X30",), 30),
    ("L30", ("X10", "X10", "X10"), 30),
    ("K34", ("X10", "X24"), 34),
    ("K42", ("X42",), 42),
)


class IgusaLedger:
    def __init__(self, her: GeneratorLedger):
        self.her = her
        self.trunc = her.trunc
        self.entries: dict[str, SiegelSeries] = {}

    def __getitem__(self, name: str) -> SiegelSeries:
        return self.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def get(self, name: str) -> SiegelSeries:
        if name in self.entries:
            return self.entries[name]
        store = self.her.store
        weight = self.weight(name)
        series = store.load("siegel", name, self.trunc, weight) if store is not None else None
        if series is None:
            series = self._compute(name).renamed(name, weight)
            bad = series.first_nonintegral()
            if bad is not None:
                raise LedgerBuildError(f"{name} has non-integral coefficient {bad[1]} at {fmt_index(bad[0])}")
            if store is not None:
                store.save(series, name, self.provenance(name))
        self.entries[name] = series.renamed(name, weight)
        return self.entries[name]

    @staticmethod
    def weight(name: str) -> int:
        if name.endswith("|"):
            return GeneratorLedger(1).weight(name[:-1])
        return int(name[1:])

    @staticmethod
    def provenance(name: str) -> str:
        if name in SIEGEL_PRODUCTS:
            return f"{name} := " + " ".join(SIEGEL_PRODUCTS[name])
        if name.endswith("|"):
            return f"restriction of {name[:-1]}"
        if name in ("X4", "X6", "X12"):
            return f"{name} := restriction of " + {"X4": "H4", "X6": "E6", "X12": "H12"}[name]
        if name == "X10":
            return "X10 := restriction of F10 divided by 6"
        return f"{name} := Igusa combination"

    def _compute(self, name: str) -> SiegelSeries:
        if name.endswith("|"):
            return restrict_to_siegel(self.her[name[:-1]])
        if name in ("X4", "X6", "X10", "X12"):
            return build_base_siegel(self.her)[name]
        if name in _COMBINATIONS:
            return _COMBINATIONS[name](self)
        if name in SIEGEL_PRODUCTS:
            return product([self[f] for f in SIEGEL_PRODUCTS[name]])
        raise KeyError(f"unknown Siegel form {name!r}")

    def build_all(self) -> "IgusaLedger":
        for name in IGUSA_NAMES + tuple(SIEGEL_PRODUCTS):
            self.get(name)
        return self

    def verify_integrality(self) -> list[Check]:
        out = []
        for name in IGUSA_NAMES + tuple(SIEGEL_PRODUCTS):
            try:
                self.get(name)
                out.append(check(f"integral {name}", True))
            except LedgerBuildError as exc:
                out.append(check(f"integral {name}", False, str(exc)))
        return out


def product(factors: list[SiegelSeries]) -> SiegelSeries:
    result = factors[0]
    for f in factors[1:]:
        result = result * f
    return result


def build_igusa(her: GeneratorLedger) -> IgusaLedger:
    return IgusaLedger(her).build_all()


def _pair(label: str, lhs: SiegelSeries, rhs: SiegelSeries, k: int, trunc: int) -> Check:
    if lhs != rhs:
        detail = describe_difference(lhs, rhs)
        if lhs.weight is not None and rhs.weight is not None and lhs.weight != rhs.weight:
            detail += f"; weights differ ({lhs.weight} vs {rhs.weight})"
        return check(label, False, detail)
    return check(label, True, f"vanishing bound m,n <= {siegel_vanishing_bound(k)}",
                 trunc >= siegel_vanishing_bound(k))


def verify_restriction_proposition(her: GeneratorLedger, sie: IgusaLedger | None = None) -> list[Check]:
    """Every stated restriction pairing, with the rigor flag of the Siegel vanishing bound."""
    sie = sie or IgusaLedger(her)
    if sie.trunc != her.trunc:
        raise ValueError("Hermitian and Siegel ledgers must share the truncation")
    M = her.trunc
    out: list[Check] = []

    # facts about the base forms
    out.append(_pair("H4| = X4", sie["H4|"], sie["X4"], 4, M))
    out.append(_pair("E6| = X6", sie["E6|"], sie["X6"], 6, M))
    h8 = sie["H8|"]
    out.append(check("H8| = 0", h8.is_zero(), describe_difference(h8, SiegelSeries.zero(M)), True))
    out.append(_pair("F10| = 6 X10", sie["F10|"], 6 * sie["X10"], 10, M))
    out.append(_pair("H12| = X12", sie["H12|"], sie["X12"], 12, M))
    one = SiegelIndex(1, 1, 1)
    for name in ("X10", "X12"):
        value = sie[name][one]
        out.append(check(f"a_{name}(1,1,1) = 1", value == 1, f"value {value}", True if value == 1 else None))

    for hname, sname, k in HSU_PAIRS:
        if hname is None:
            out.append(Check(f"weight {k} pairing", "SKIP", "no Hermitian generator of this weight is defined"))
            continue
        out.append(_pair(f"{hname}| = {sname}", sie[hname + "|"], sie[sname], k, M))

    for kname, factors, k in K_RESTRICTIONS:
        target = product([sie[f] for f in factors])
        c = _pair(f"{kname}| = {''.join(factors)}", sie[kname + "|"], target, k, M)
        if not c.passed and kname == "K26":
            alt = sie["X10"] * sie["X16"]
            if sie["K26|"] == alt:
                c = Check(c.label, c.status, c.detail + "; K26| equals X10X16 instead")
        out.append(c)
    return out


def verify_two_path(her: GeneratorLedger, sie: IgusaLedger | None = None) -> list[Check]:
    """X18, X30, X42 from Igusa's combinations against the restrictions of K18, K30, K42."""
    sie = sie or IgusaLedger(her)
    return [_pair(f"{x} two paths", sie[x], sie[k + "|"], int(x[1:]), her.trunc)
            for x, k in (("X18", "K18"), ("X30", "K30"), ("X42", "K42"))]
