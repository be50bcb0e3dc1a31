"""Rational functions in two variables whose denominators are products of linear forms.

Every denominator that shows up in the local-curve formulas is a product of
powers of a handful of linear forms in (lambda1, lambda2), so elements of
Q(lambda1, lambda2) are stored as ``sign * numerator / prod(form ** exp)``
and no polynomial GCD is ever needed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .laurent import MVLaurent, as_fraction

NVARS = 2
VAR_NAMES = ("l1", "l2")


class LinForm(tuple):
    """Canonical linear form a*lambda1 + b*lambda2.

    Canonical means content 1 and first nonzero coefficient positive; any
    integer linear form factors as ``scale * LinForm``.
    """

    __slots__ = ()

    def __new__(cls, a: int, b: int):
        if a == 0 and b == 0:
            raise ValueError("the zero form is not a valid denominator")
        g = gcd(a, b)
        if g != 1 or a < 0 or (a == 0 and b < 0):
            raise ValueError(f"({a}, {b}) is not canonical; use LinForm.split")
        return super().__new__(cls, (a, b))

    def __getnewargs__(self):
        return tuple(self)

    @classmethod
    def split(cls, a: int, b: int) -> Tuple[int, "LinForm"]:
        """Return (scale, form) with scale * form == a*l1 + b*l2."""
        if a == 0 and b == 0:
            raise ValueError("vanishing linear form")
        g = gcd(a, b)
        if a < 0 or (a == 0 and b < 0):
            g = -g
        return g, tuple.__new__(cls, (a // g, b // g))

    @property
    def a(self) -> int:
        return self[0]

    @property
    def b(self) -> int:
        return self[1]

    def poly(self) -> MVLaurent:
        return MVLaurent.linear(self)

    def evaluate(self, point: Sequence) -> Fraction:
        return self[0] * as_fraction(point[0]) + self[1] * as_fraction(point[1])

    def __repr__(self) -> str:
        return f"LinForm({self[0]}, {self[1]})"


LAMBDA1 = LinForm(1, 0)
LAMBDA2 = LinForm(0, 1)
_MONOMIAL_FORMS = {LAMBDA1: 0, LAMBDA2: 1}


@lru_cache(maxsize=4096)
def _form_power(form: LinForm, k: int) -> MVLaurent:
    if k == 0:
        return MVLaurent.one(NVARS)
    if form in _MONOMIAL_FORMS:
        exp = [0, 0]
        exp[_MONOMIAL_FORMS[form]] = k
        return MVLaurent.monomial(exp)
    half = _form_power(form, k // 2)
    sq = half * half
    return sq * form.poly() if k % 2 else sq


class LocalizedRat:
    """``sign * num / prod(form ** exp for form, exp in den)``.

    The numerator is kept a polynomial: negative powers of lambda1 or lambda2
    are moved into the denominator slots of the forms (1, 0) and (0, 1).
    Equality is by cross multiplication, so two representations of the same
    rational function compare equal even if not reduced.
    """

    __slots__ = ("num", "den", "sign")

    def __init__(self, num: MVLaurent, den: Mapping[LinForm, int] | None = None, sign: int = 1):
        if num.nvars != NVARS:
            raise ValueError("LocalizedRat lives in two variables")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        den = {f: e for f, e in (den or {}).items() if e}
        for f, e in den.items():
            if not isinstance(f, LinForm):
                raise TypeError("denominator keys must be LinForm")
            if e < 0:
                raise ValueError("denominator exponents must be positive")
        if num.is_zero():
            self.num, self.den, self.sign = num, {}, 1
            return
        lo = num.min_exponents()
        # move Laurent monomials into the denominator, and cancel monomial
        # factors of the numerator against lambda1/lambda2 slots
        shift = [0, 0]
        for form, idx in _MONOMIAL_FORMS.items():
            if lo[idx] < 0:
                shift[idx] = -lo[idx]
                den[form] = den.get(form, 0) + shift[idx]
            elif lo[idx] > 0 and den.get(form):
                k = min(lo[idx], den[form])
                shift[idx] = -k
                den[form] -= k
                if not den[form]:
                    del den[form]
        if shift != [0, 0]:
            num = num.shift(shift)
        self.num, self.den, self.sign = num, den, sign

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "LocalizedRat":
        return cls(MVLaurent.zero(NVARS))

    @classmethod
    def constant(cls, value) -> "LocalizedRat":
        return cls(MVLaurent.constant(NVARS, value))

    @classmethod
    def one(cls) -> "LocalizedRat":
        return cls.constant(1)

    @classmethod
    def from_poly(cls, poly: MVLaurent) -> "LocalizedRat":
        return cls(poly)

    @classmethod
    def power_of_linear(cls, a: int, b: int, e: int) -> "LocalizedRat":
        """(a*l1 + b*l2) ** e for any integer e."""
        scale, form = LinForm.split(a, b)
        if e >= 0:
            return cls(_form_power(form, e) * (scale ** e))
        sign = -1 if (scale < 0 and e % 2) else 1
        return cls(MVLaurent.constant(NVARS, Fraction(1, abs(scale) ** -e)), {form: -e}, sign)

    @classmethod
    def product_of_linear(cls, factors: Iterable[Tuple[Tuple[int, int], int]], coeff=1) -> "LocalizedRat":
        out = cls.constant(coeff)
        for (a, b), e in factors:
            out = out * cls.power_of_linear(a, b, e)
        return out

    # -- arithmetic ---------------------------------------------------------

    def signed_num(self) -> MVLaurent:
        return self.num if self.sign == 1 else -self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    @staticmethod
    def _coerce(other) -> "LocalizedRat":
        if isinstance(other, LocalizedRat):
            return other
        if isinstance(other, MVLaurent):
            return LocalizedRat(other)
        return LocalizedRat.constant(other)

    def _lifted(self, target: Mapping[LinForm, int]) -> MVLaurent:
        num = self.signed_num()
        for f, e in target.items():
            extra = e - self.den.get(f, 0)
            if extra:
                num = num * _form_power(f, extra)
        return num

    def __add__(self, other) -> "LocalizedRat":
        other = self._coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        return combine([self, other], "add")

    __radd__ = __add__

    def __neg__(self) -> "LocalizedRat":
        return LocalizedRat(self.num, self.den, -self.sign)

    def __sub__(self, other) -> "LocalizedRat":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LocalizedRat":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LocalizedRat":
        if not isinstance(other, (LocalizedRat, MVLaurent)):
            c = as_fraction(other)
            return LocalizedRat(self.num * c, self.den, self.sign)
        other = self._coerce(other)
        den = dict(self.den)
        for f, e in other.den.items():
            den[f] = den.get(f, 0) + e
        return LocalizedRat(self.num * other.num, den, self.sign * other.sign)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LocalizedRat":
        if isinstance(other, (LocalizedRat, MVLaurent)):
            raise TypeError("division by a general rational function is not supported")
        return self * (Fraction(1) / as_fraction(other))

    def __pow__(self, k: int) -> "LocalizedRat":
        if k < 0:
            raise ValueError("negative powers are not supported")
        return LocalizedRat(self.num ** k, {f: e * k for f, e in self.den.items()},
                            self.sign if k % 2 else 1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (LocalizedRat, MVLaurent, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        target = dict(self.den)
        for f, e in other.den.items():
            target[f] = max(target.get(f, 0), e)
        return self._lifted(target) == other._lifted(target)

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, frozenset(r.den.items())))

    # -- normalization --------------------------------------------------------

    def reduced(self) -> "LocalizedRat":
        """Lowest-terms representative with sign folded into the numerator.

        Cancellation is by trial division of the numerator by each
        denominator form; the forms are irreducible and pairwise coprime, so
        the result is unique.
        """
        num = self.signed_num()
        den = dict(self.den)
        for f in list(den):
            if f in _MONOMIAL_FORMS:
                continue  # already cancelled in __init__
            while den.get(f):
                q = num.divide_linear(f)
                if q is None:
                    break
                num = q
                den[f] -= 1
        return LocalizedRat(num, den, 1)

    def swap(self) -> "LocalizedRat":
        """Exchange lambda1 and lambda2."""
        sign = self.sign
        den: Dict[LinForm, int] = {}
        for f, e in self.den.items():
            scale, g = LinForm.split(f[1], f[0])
            if scale < 0 and e % 2:
                sign = -sign
            den[g] = den.get(g, 0) + e
        return LocalizedRat(self.num.swap(), den, sign)

    def evaluate(self, point: Sequence) -> Fraction:
        d = Fraction(1)
        for f, e in self.den.items():
            v = f.evaluate(point)
            if not v:
                raise ZeroDivisionError(f"pole of {f!r} at {tuple(point)}")
            d *= v ** e
        return self.sign * self.num.evaluate(point) / d

    def poles_at(self, point: Sequence) -> bool:
        return any(not f.evaluate(point) for f in self.den)

    def cleared_numerator(self, den: Mapping[LinForm, int]) -> MVLaurent:
        """Numerator of this value over the (larger) denominator ``den``."""
        for f, e in self.den.items():
            if den.get(f, 0) < e:
                raise ValueError("target denominator does not cover this value")
        return self._lifted(den)

    # -- display / serialization ----------------------------------------------

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "num": self.num.to_json(),
            "den": [{"form": list(f), "exp": e} for f, e in sorted(self.den.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LocalizedRat":
        num = MVLaurent.from_json(data["num"], NVARS)
        den = {}
        for item in data["den"]:
            scale, f = LinForm.split(*item["form"])
            if scale != 1:
                raise ValueError(f"non-canonical form {item['form']}")
            den[f] = item["exp"]
        return cls(num, den, data["sign"])

    def canonical_json(self) -> dict:
        return self.reduced().to_json()

    def to_str(self) -> str:
        if self.is_zero():
            return "0"
        num = self.num.to_str(VAR_NAMES)
        if not self.den:
            body = num
        else:
            parts = []
            for f, e in sorted(self.den.items()):
                lin = MVLaurent.linear(f).to_str(VAR_NAMES)
                if len(MVLaurent.linear(f)) > 1:
                    lin = f"({lin})"
                parts.append(lin if e == 1 else f"{lin}^{e}")
            body = f"({num}) / ({'*'.join(parts)})"
        return body if self.sign == 1 else f"-{body}"

    def __repr__(self) -> str:
        return f"LocalizedRat({self.to_str()})"


def combine(terms: Sequence[LocalizedRat], op: str) -> LocalizedRat:
    """Sum or product of LocalizedRat values over the least common denominator."""
    if op == "mul":
        out = LocalizedRat.one()
        for t in terms:
            out = out * t
        return out
    if op != "add":
        raise ValueError(f"unknown operation {op!r}")
    terms = [t for t in terms if not t.is_zero()]
    if not terms:
        return LocalizedRat.zero()
    if len(terms) == 1:
        return terms[0]
    target: Dict[LinForm, int] = {}
    for t in terms:
        for f, e in t.den.items():
            target[f] = max(target.get(f, 0), e)
    num = MVLaurent.zero(NVARS)
    for t in terms:
        num = num + t._lifted(target)
    return LocalizedRat(num, target)


def localized_combine(terms: Sequence[LocalizedRat], op: str, cancel: bool = True) -> LocalizedRat:
    out = combine(terms, op)
    return out.reduced() if cancel else out
