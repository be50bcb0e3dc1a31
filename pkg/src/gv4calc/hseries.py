"""Truncated power series in an auxiliary variable h with LocalizedRat coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .localized import LocalizedRat, combine

SignedForm = Tuple[int, int]


def generalized_binomial(e: int, m: int) -> Fraction:
    """C(e, m) = e (e-1) ... (e-m+1) / m! for any integer e and m >= 0."""
    out = Fraction(1)
    for i in range(m):
        out = out * (e - i) / (i + 1)
    return out


class HSeries:
    """sum_{i <= order} coeffs[i] h^i; coefficients past ``order`` are unknown."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[LocalizedRat], order: int | None = None):
        order = len(coeffs) - 1 if order is None else order
        if order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = list(coeffs[: order + 1])
        coeffs += [LocalizedRat.zero()] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def one(cls, order: int) -> "HSeries":
        return cls([LocalizedRat.one()], order)

    def __getitem__(self, i: int) -> LocalizedRat:
        return self.coeffs[i]

    def truncate(self, order: int) -> "HSeries":
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return HSeries(self.coeffs, order)

    def __add__(self, other: "HSeries") -> "HSeries":
        n = min(self.order, other.order)
        return HSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __mul__(self, other: "HSeries") -> "HSeries":
        n = min(self.order, other.order)
        out = []
        for i in range(n + 1):
            out.append(combine([self.coeffs[j] * other.coeffs[i - j]
                                for j in range(i + 1)
                                if self.coeffs[j] and other.coeffs[i - j]], "add"))
        return HSeries(out, n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def evaluate(self, point) -> List[Fraction]:
        """Coefficient list with lambda substituted by a rational point."""
        return [c.evaluate(point) for c in self.coeffs]

    def __repr__(self) -> str:
        return "HSeries(" + ", ".join(c.to_str() for c in self.coeffs) + f"; O(h^{self.order + 1}))"


def hseries_expand_factor(form: SignedForm, e: int, order: int) -> HSeries:
    """Truncated expansion of (c + h)**e where c = form[0]*l1 + form[1]*l2."""
    a, b = form
    if a == 0 and b == 0:
        raise ValueError("cannot expand (0 + h)^e around h = 0")
    if order < 0:
        raise ValueError("order must be nonnegative")
    coeffs = []
    for m in range(order + 1):
        binom = generalized_binomial(e, m)
        if not binom:
            coeffs.append(LocalizedRat.zero())
        else:
            coeffs.append(LocalizedRat.power_of_linear(a, b, e - m) * binom)
    return HSeries(coeffs, order)


def hseries_product_truncate(factors: Iterable[HSeries], order: int) -> HSeries:
    out = HSeries.one(order)
    for f in factors:
        if f.order < order:
            raise ValueError("factor is truncated below the requested order")
        out = out * f.truncate(order)
    return out


def formal_residue(k: int, factors: Sequence[Tuple[SignedForm, int]]) -> LocalizedRat:
    """Res_{h=0} h^{-k} prod (c_j + h)^{e_j}, i.e. the h^{k-1} coefficient of the product."""
    if k < 1:
        raise ValueError("residue order k must be positive")
    order = k - 1
    # zero exponents contribute 1; skipping them keeps the product short
    series = [hseries_expand_factor(c, e, order) for c, e in factors if e]
    if any(c == (0, 0) for c, _ in factors):
        raise ValueError("vanishing linear form in residue")
    if not series:
        return LocalizedRat.one() if k == 1 else LocalizedRat.zero()
    return hseries_product_truncate(series, order)[order]
