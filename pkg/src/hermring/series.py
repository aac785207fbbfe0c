"""Truncated Fourier expansions with exact rational coefficients.

Three rings share one implementation: Hermitian expansions indexed by
``(m, r, s, n)``, Siegel expansions indexed by ``(m, r, n)`` and elliptic
``q``-expansions indexed by ``n``.  Truncation always bounds the diagonal
entries, ``m, n <= trunc`` (resp. ``n <= trunc``), which makes products
exact up to the smaller truncation of the two factors.

Products go through Kronecker substitution: each factor is packed into a
single big integer, the integers are multiplied with GMP, and the product
coefficients are read back out of fixed-width bit slots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from numbers import Rational
from typing import Callable, ClassVar, Iterable, Iterator, Mapping

import gmpy2

from .lattice import (
    HermitianIndex,
    SiegelIndex,
    enumerate_hermitian,
    enumerate_siegel,
    hermitian_sort_key,
    siegel_sort_key,
)

__all__ = [
    "HermitianSeries",
    "SiegelSeries",
    "EllipticSeries",
    "ReducedSeries",
    "NotPIntegralError",
    "restrict_to_siegel",
    "naive_mul",
    "ord_p",
    "multiplication_count",
    "reset_multiplication_count",
]

FORMAT_VERSION = 1

# incremented once per series product, read by the CLI's --stats flag
_MUL_COUNT = 0


def multiplication_count() -> int:
    return _MUL_COUNT


def reset_multiplication_count() -> None:
    global _MUL_COUNT
    _MUL_COUNT = 0


class NotPIntegralError(ValueError):
    pass


def _norm(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        return _norm(Fraction(x.numerator, x.denominator))
    raise TypeError(f"coefficients must be exact rationals, got {type(x).__name__}")


def ord_p(x, p: int) -> float | int:
    """p-adic valuation of a rational; +inf for zero."""
    if x == 0:
        return float("inf")
    x = Fraction(x)
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


class _Series:
    kind: ClassVar[str]
    n_index: ClassVar[int]

    __slots__ = ("trunc", "coeffs", "weight", "name")

    def __init__(self, coeffs: Mapping | None = None, trunc: int = 0, weight: int | None = None,
                 name: str | None = None, *, check: bool = True):
        if trunc < 0:
            raise ValueError("truncation must be nonnegative")
        self.trunc = trunc
        self.weight = weight
        self.name = name
        if coeffs is None:
            coeffs = {}
        if check:
            clean = {}
            for idx, c in coeffs.items():
                idx = self._make_index(idx)
                if not self._valid(idx, trunc):
                    raise ValueError(f"index {tuple(idx) if not isinstance(idx, int) else idx} "
                                     f"outside the support at truncation {trunc}")
                c = _norm(c)
                if c:
                    clean[idx] = c
            coeffs = clean
        self.coeffs = coeffs

    # -- hooks ---------------------------------------------------------------

    @staticmethod
    def _make_index(idx):
        raise NotImplementedError

    @staticmethod
    def _valid(idx, trunc: int) -> bool:
        raise NotImplementedError

    @staticmethod
    def _sort_key(idx):
        raise NotImplementedError

    @classmethod
    def _support(cls, trunc: int) -> Iterable:
        raise NotImplementedError

    @classmethod
    def _unit_index(cls):
        raise NotImplementedError

    @classmethod
    def _mul_coeffs(cls, a: dict, b: dict, trunc: int) -> dict:
        raise NotImplementedError

    # -- construction --------------------------------------------------------

    def _new(self, coeffs: dict, trunc: int, weight: int | None = None):
        return type(self)(coeffs, trunc, weight, check=False)

    @classmethod
    def zero(cls, trunc: int, weight: int | None = None):
        return cls({}, trunc, weight, check=False)

    @classmethod
    def one(cls, trunc: int):
        return cls({cls._unit_index(): 1}, trunc, 0, check=False)

    @classmethod
    def constant(cls, c, trunc: int):
        c = _norm(c)
        return cls({cls._unit_index(): c} if c else {}, trunc, 0, check=False)

    def truncate(self, trunc: int):
        if trunc > self.trunc:
            raise ValueError(f"cannot raise truncation from {self.trunc} to {trunc}")
        if trunc == self.trunc:
            return self
        coeffs = {i: c for i, c in self.coeffs.items() if self._valid(i, trunc)}
        return type(self)(coeffs, trunc, self.weight, self.name, check=False)

    def renamed(self, name: str | None, weight: int | None = None):
        return type(self)(self.coeffs, self.trunc, self.weight if weight is None else weight, name, check=False)

    # -- access --------------------------------------------------------------

    def __getitem__(self, idx):
        return self.coeffs.get(self._make_index(idx), 0)

    def items(self) -> Iterator:
        """Nonzero coefficients in the deterministic enumeration order."""
        for idx in sorted(self.coeffs, key=self._sort_key):
            yield idx, self.coeffs[idx]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs.values())

    def first_nonintegral(self):
        for idx, c in self.items():
            if not isinstance(c, int):
                return idx, c
        return None

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.kind, self.trunc, frozenset(self.coeffs.items())))

    def __repr__(self):
        label = self.name or self.kind
        return f"<{type(self).__name__} {label} weight={self.weight} trunc={self.trunc} terms={len(self.coeffs)}>"

    def first_difference(self, other):
        """First index (in enumeration order) where two series differ, with both values."""
        t = min(self.trunc, other.trunc)
        a, b = self.truncate(t).coeffs, other.truncate(t).coeffs
        keys = sorted(set(a) | set(b), key=self._sort_key)
        for k in keys:
            if a.get(k, 0) != b.get(k, 0):
                return k, a.get(k, 0), b.get(k, 0)
        return None

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, _Series):
            if type(other) is not type(self):
                raise TypeError(f"cannot combine {self.kind} and {other.kind} series")
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return self.constant(other, self.trunc)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = min(self.trunc, other.trunc)
        a = self.truncate(t).coeffs
        out = dict(a)
        for i, c in other.truncate(t).coeffs.items():
            v = out.get(i, 0) + c
            if v:
                out[i] = _norm(v)
            else:
                out.pop(i, None)
        w = self.weight if self.weight == other.weight else None
        return self._new(out, t, w)

    __radd__ = __add__

    def __neg__(self):
        return self._new({i: -c for i, c in self.coeffs.items()}, self.trunc, self.weight)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _norm(c)
        if not c:
            return self.zero(self.trunc, self.weight)
        return self._new({i: _norm(c * v) for i, v in self.coeffs.items()}, self.trunc, self.weight)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return self.scale(other)
        if not isinstance(other, _Series):
            return NotImplemented
        if type(other) is not type(self):
            raise TypeError(f"cannot multiply {self.kind} and {other.kind} series")
        global _MUL_COUNT
        _MUL_COUNT += 1
        t = min(self.trunc, other.trunc)
        coeffs = self._mul_coeffs(self.truncate(t).coeffs, other.truncate(t).coeffs, t)
        w = None if self.weight is None or other.weight is None else self.weight + other.weight
        return self._new(coeffs, t, w)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("series exponents must be nonnegative integers")
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        if result is None:
            result = self.one(self.trunc)
        return result

    # -- valuations and reduction -------------------------------------------

    def vp(self, p: int):
        """Minimum p-adic valuation over stored coefficients (+inf for zero)."""
        return min((ord_p(c, p) for c in self.coeffs.values()), default=float("inf"))

    def reduce_mod(self, p: int) -> "ReducedSeries":
        out = {}
        for idx, c in self.items():
            if isinstance(c, Fraction):
                if c.denominator % p == 0:
                    raise NotPIntegralError(f"coefficient {c} at {_fmt_index(idx)} is not {p}-integral")
                v = c.numerator * pow(c.denominator, -1, p) % p
            else:
                v = c % p
            if v:
                out[idx] = v
        return ReducedSeries(self.kind, self.trunc, p, out)

    # -- serialization -------------------------------------------------------

    def to_text(self, name: str | None = None) -> str:
        name = name or self.name or "unnamed"
        lines = [
            f"# name={name}",
            f"# weight={'none' if self.weight is None else self.weight}",
            f"# trunc={self.trunc}",
            f"# kind={self.kind}",
            f"# version={FORMAT_VERSION}",
        ]
        for idx, c in self.items():
            c = Fraction(c)
            parts = [idx] if isinstance(idx, int) else list(idx)
            lines.append(" ".join(str(x) for x in (*parts, c.numerator, c.denominator)))
        return "\n".join(lines) + "\n"


def _fmt_index(idx) -> str:
    return str(idx) if isinstance(idx, int) else "(" + ",".join(str(x) for x in idx) + ")"


@dataclass(frozen=True)
class ReducedSeries:
    """Coefficient-wise reduction of a series modulo a prime."""

    kind: str
    trunc: int
    modulus: int
    coeffs: Mapping

    def is_zero(self) -> bool:
        return not self.coeffs


# ---------------------------------------------------------------------------
# Kronecker-substitution products
# ---------------------------------------------------------------------------


def _integer_scaled(coeffs: dict) -> tuple[dict, int]:
    den = 1
    for c in coeffs.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    if den == 1:
        return coeffs, 1
    return {i: int(c * den) for i, c in coeffs.items()}, den


def _pack(items: Iterable[tuple[int, int]], nslots: int, width: int):
    pos = bytearray(nslots * width)
    neg = None
    for e, c in items:
        if c > 0:
            pos[e * width:(e + 1) * width] = c.to_bytes(width, "little")
        else:
            if neg is None:
                neg = bytearray(nslots * width)
            neg[e * width:(e + 1) * width] = (-c).to_bytes(width, "little")
    val = gmpy2.mpz(int.from_bytes(pos, "little"))
    if neg is not None:
        val -= gmpy2.mpz(int.from_bytes(neg, "little"))
    return val


def _kronecker_product(
    a: dict,
    b: dict,
    encode: Callable[[object], int],
    outputs: Iterable,
    encode_out: Callable[[object], int],
) -> dict:
    if not a or not b:
        return {}
    ia, da = _integer_scaled(a)
    ib, db = _integer_scaled(b)
    bound = max(map(abs, ia.values())) * max(map(abs, ib.values())) * min(len(ia), len(ib))
    width = (bound.bit_length() + 2 + 7) // 8
    ea = [(encode(i), c) for i, c in ia.items()]
    eb = [(encode(i), c) for i, c in ib.items()]
    pa = _pack(ea, max(e for e, _ in ea) + 1, width)
    pb = _pack(eb, max(e for e, _ in eb) + 1, width)
    prod = pa * pb
    outputs = list(outputs)
    slots = [encode_out(o) for o in outputs]
    top = max(slots) + 1
    nbytes = top * width
    buf = int(gmpy2.f_mod_2exp(prod, 8 * nbytes)).to_bytes(nbytes, "little")
    half = 1 << (8 * width - 1)
    full = 1 << (8 * width)
    den = da * db
    out = {}
    for o, e in zip(outputs, slots):
        lo = e * width
        v = int.from_bytes(buf[lo:lo + width], "little")
        if lo and buf[lo - 1] & 0x80:
            v += 1
        if v >= half:
            v -= full
        if v:
            out[o] = v if den == 1 else _norm(Fraction(v, den))
    return out


def naive_mul(a: dict, b: dict, valid: Callable[[object], bool]) -> dict:
    """Schoolbook convolution over pairs of support entries; reference oracle for the fast path."""
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i + j
            if valid(k):
                out[k] = out.get(k, 0) + x * y
    return {k: _norm(v) for k, v in out.items() if v}


# below this many pair products the schoolbook loop beats packing
_NAIVE_CUTOFF = 4000


class HermitianSeries(_Series):
    kind = "hermitian"
    n_index = 4
    __slots__ = ()

    @staticmethod
    def _make_index(idx):
        return idx if isinstance(idx, HermitianIndex) else HermitianIndex(*idx)

    @staticmethod
    def _valid(idx, trunc):
        return 0 <= idx.m <= trunc and 0 <= idx.n <= trunc and idx.four_det() >= 0

    _sort_key = staticmethod(hermitian_sort_key)

    @classmethod
    def _support(cls, trunc):
        return enumerate_hermitian(trunc)

    @classmethod
    def _unit_index(cls):
        return HermitianIndex(0, 0, 0, 0)

    @classmethod
    def _mul_coeffs(cls, a, b, trunc):
        if len(a) * len(b) <= _NAIVE_CUTOFF:
            return naive_mul(a, b, lambda k: k.m <= trunc and k.n <= trunc)
        off = 2 * trunc
        dn, dr = 2 * trunc + 1, 8 * trunc + 1

        def encode(i):
            return ((i.m * dn + i.n) * dr + i.r + off) * dr + i.s + off

        def encode_out(i):
            return ((i.m * dn + i.n) * dr + i.r + 2 * off) * dr + i.s + 2 * off

        return _kronecker_product(a, b, encode, enumerate_hermitian(trunc), encode_out)


class SiegelSeries(_Series):
    kind = "siegel"
    n_index = 3
    __slots__ = ()

    @staticmethod
    def _make_index(idx):
        return idx if isinstance(idx, SiegelIndex) else SiegelIndex(*idx)

    @staticmethod
    def _valid(idx, trunc):
        return 0 <= idx.m <= trunc and 0 <= idx.n <= trunc and idx.four_det() >= 0

    _sort_key = staticmethod(siegel_sort_key)

    @classmethod
    def _support(cls, trunc):
        return enumerate_siegel(trunc)

    @classmethod
    def _unit_index(cls):
        return SiegelIndex(0, 0, 0)

    @classmethod
    def _mul_coeffs(cls, a, b, trunc):
        if len(a) * len(b) <= _NAIVE_CUTOFF:
            return naive_mul(a, b, lambda k: k.m <= trunc and k.n <= trunc)
        off = 2 * trunc
        dn, dr = 2 * trunc + 1, 8 * trunc + 1

        def encode(i):
            return (i.m * dn + i.n) * dr + i.r + off

        def encode_out(i):
            return (i.m * dn + i.n) * dr + i.r + 2 * off

        return _kronecker_product(a, b, encode, enumerate_siegel(trunc), encode_out)


class EllipticSeries(_Series):
    kind = "elliptic"
    n_index = 1
    __slots__ = ()

    @staticmethod
    def _make_index(idx):
        return int(idx)

    @staticmethod
    def _valid(idx, trunc):
        return 0 <= idx <= trunc

    @staticmethod
    def _sort_key(idx):
        return idx

    @classmethod
    def _support(cls, trunc):
        return range(trunc + 1)

    @classmethod
    def _unit_index(cls):
        return 0

    @classmethod
    def _mul_coeffs(cls, a, b, trunc):
        if len(a) * len(b) <= _NAIVE_CUTOFF:
            return naive_mul(a, b, lambda k: k <= trunc)
        return _kronecker_product(a, b, int, range(trunc + 1), int)

    @classmethod
    def from_list(cls, values: Iterable, weight: int | None = None, name: str | None = None):
        values = list(values)
        return cls(dict(enumerate(values)), len(values) - 1, weight, name)

    def to_list(self) -> list:
        return [self.coeffs.get(n, 0) for n in range(self.trunc + 1)]


def restrict_to_siegel(f: HermitianSeries) -> SiegelSeries:
    """Specialize to the Siegel half-space: sum out the r index, keep s as the Siegel r."""
    out: dict = {}
    for h, c in f.coeffs.items():
        t = SiegelIndex(h.m, h.s, h.n)
        out[t] = out.get(t, 0) + c
    coeffs = {t: _norm(v) for t, v in out.items() if v}
    return SiegelSeries(coeffs, f.trunc, f.weight, f.name and f.name + "|", check=False)


_KINDS = {cls.kind: cls for cls in (HermitianSeries, SiegelSeries, EllipticSeries)}


def from_text(text: str) -> _Series:
    """Parse the line-oriented text format written by :meth:`to_text`."""
    header: dict[str, str] = {}
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            header[key.strip()] = value.strip()
            continue
        try:
            rows.append([int(x) for x in line.split()])
        except ValueError:
            raise ValueError(f"line {lineno}: malformed coefficient line {line!r}") from None
    try:
        cls = _KINDS[header["kind"]]
        trunc = int(header["trunc"])
    except KeyError as exc:
        raise ValueError(f"missing or unknown header field {exc}") from None
    weight = header.get("weight", "none")
    weight = None if weight == "none" else int(weight)
    coeffs = {}
    for row in rows:
        if len(row) != cls.n_index + 2:
            raise ValueError(f"expected {cls.n_index + 2} fields per {cls.kind} coefficient line, got {row}")
        *idx, num, den = row
        key = idx[0] if cls.n_index == 1 else tuple(idx)
        coeffs[key] = Fraction(num, den)
    return cls(coeffs, trunc, weight, header.get("name"))
