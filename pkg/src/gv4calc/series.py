"""Truncated q-series and multiple-cover arithmetic on a ray of curve classes."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Mapping, Sequence

from .laurent import as_fraction, format_fraction


class QSeries:
    """sum_{i <= order} coeffs[i] q^i over Q."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: int | None = None):
        order = len(coeffs) - 1 if order is None else order
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = [as_fraction(c) for c in list(coeffs)[: order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, power: int, order: int, coeff=1) -> "QSeries":
        cs = [0] * (order + 1)
        if power <= order:
            cs[power] = coeff
        return cls(cs, order)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return self.order + 1

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries([other], self.order)

    def __add__(self, other) -> "QSeries":
        other = self._coerce(other)
        n = min(self.order, other.order)
        return QSeries([a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])], n)

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> "QSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            c = as_fraction(other)
            return QSeries([x * c for x in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (n + 1)
        for i, x in enumerate(a[: n + 1]):
            if x:
                for j in range(n + 1 - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return QSeries(out, n)

    __rmul__ = __mul__

    def inv(self) -> "QSeries":
        a0 = self.coeffs[0]
        if not a0:
            raise ValueError("inverse needs a nonzero constant term")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = 1 / a0
        for k in range(1, n + 1):
            s = sum((self.coeffs[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
            out[k] = -s / a0
        return QSeries(out, n)

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return self * other.inv()
        return self * (1 / as_fraction(other))

    def __pow__(self, k: int) -> "QSeries":
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        base = self if k >= 0 else self.inv()
        k = abs(k)
        out = QSeries.one(self.order)
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def derivative(self) -> "QSeries":
        if self.order == 0:
            return QSeries([0], 0)
        return QSeries([i * c for i, c in enumerate(self.coeffs)][1:], self.order - 1)

    def log(self) -> "QSeries":
        """log f for f(0) = 1, via f'/f integrated termwise."""
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        n = self.order
        if n == 0:
            return QSeries([0], 0)
        ratio = self.derivative() * QSeries(self.coeffs, n - 1).inv()
        return QSeries([0] + [ratio[k - 1] / k for k in range(1, n + 1)], n)

    def exp(self) -> "QSeries":
        """exp f for f(0) = 0, from g' = f' g solved coefficient by coefficient."""
        if self.coeffs[0]:
            raise ValueError("exp needs constant term 0")
        n = self.order
        a = self.coeffs
        g = [Fraction(0)] * (n + 1)
        g[0] = Fraction(1)
        for k in range(1, n + 1):
            g[k] = sum((j * a[j] * g[k - j] for j in range(1, k + 1)), Fraction(0)) / k
        return QSeries(g, n)

    def substitute_power(self, d: int, order: int) -> "QSeries":
        """f(q^d) truncated at ``order``; needs d * self.order >= order or f exact."""
        cs = [Fraction(0)] * (order + 1)
        for i, c in enumerate(self.coeffs):
            if i * d > order:
                break
            cs[i * d] = c
        return QSeries(cs, order)

    def __eq__(self, other) -> bool:
        if isinstance(other, QSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [format_fraction(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        return cls([Fraction(c) for c in data["coeffs"]], data["order"])

    def __repr__(self) -> str:
        return f"QSeries({', '.join(str(c) for c in self.coeffs)}; O(q^{self.order + 1}))"


def qseries_arith(lhs: QSeries, rhs, op: str) -> QSeries:
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "inv":
        return lhs.inv()
    if op == "int_pow":
        return lhs ** rhs
    if op == "log":
        return lhs.log()
    if op == "exp":
        return lhs.exp()
    raise ValueError(f"unknown operation {op!r}")


def eta_power(e: int, order: int) -> QSeries:
    """prod_{k=1}^{order} (1 - q^k)^e."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    out = QSeries.one(order)
    for k in range(1, order + 1):
        out = out * (QSeries.one(order) - QSeries.monomial(k, order)) ** e
    return out


def macmahon(order: int) -> QSeries:
    """M(q) = prod_{k>=1} (1 - q^k)^(-k), the plane partition generating function."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    out = QSeries.one(order)
    for k in range(1, order + 1):
        out = out * (QSeries.one(order) - QSeries.monomial(k, order)) ** (-k)
    return out


# -- degree-indexed data ------------------------------------------------------------

class DegreeIndexedData(dict):
    """Values on multiples d * beta_0 of a primitive class, d = 1..max_degree.

    Missing degrees read as 0.
    """

    def __init__(self, values: Mapping[int, object] | None = None, max_degree: int | None = None):
        vals = {int(d): as_fraction(v) for d, v in (values or {}).items()}
        if any(d < 1 for d in vals):
            raise ValueError("degrees must be positive")
        top = max(vals, default=0)
        self.max_degree = top if max_degree is None else max_degree
        if top > self.max_degree:
            raise ValueError(f"degree {top} exceeds max_degree {self.max_degree}")
        super().__init__(vals)

    def __missing__(self, d):
        return Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, DegreeIndexedData):
            return NotImplemented
        n = max(self.max_degree, other.max_degree)
        return all(self[d] == other[d] for d in range(1, n + 1))

    __hash__ = None

    def to_json(self) -> dict:
        return {str(d): format_fraction(self[d]) for d in range(1, self.max_degree + 1)}

    @classmethod
    def from_json(cls, data: Mapping[str, str], max_degree: int | None = None) -> "DegreeIndexedData":
        return cls({int(k): Fraction(v) for k, v in data.items()}, max_degree)

    def __repr__(self):
        return f"DegreeIndexedData({ {d: str(self[d]) for d in range(1, self.max_degree + 1)} })"


def divisors(n: int) -> List[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def _weight(k: int, power: int) -> Fraction:
    return Fraction(k) ** power


def multiple_cover_forward(n: DegreeIndexedData, power: int) -> DegreeIndexedData:
    """gw(d) = sum_{k | d} k^power n(d/k)."""
    return DegreeIndexedData(
        {d: sum((_weight(k, power) * n[d // k] for k in divisors(d)), Fraction(0))
         for d in range(1, n.max_degree + 1)},
        n.max_degree,
    )


def multiple_cover_invert(gw: DegreeIndexedData, power: int) -> DegreeIndexedData:
    """Solve gw(d) = sum_{k | d} k^power n(d/k) for n, degree by degree."""
    n: Dict[int, Fraction] = {}
    for d in range(1, gw.max_degree + 1):
        rest = sum((_weight(k, power) * n[d // k] for k in divisors(d) if k > 1), Fraction(0))
        n[d] = gw[d] - rest
    return DegreeIndexedData(n, gw.max_degree)


def kp_genus0_forward(n: DegreeIndexedData, insertion_count: int) -> DegreeIndexedData:
    return multiple_cover_forward(n, insertion_count - 3)


def kp_genus0_invert(gw: DegreeIndexedData, insertion_count: int) -> DegreeIndexedData:
    """Genus-zero GV type invariants from GW invariants with ``insertion_count`` insertions."""
    if insertion_count < 0:
        raise ValueError("insertion count must be nonnegative")
    return multiple_cover_invert(gw, insertion_count - 3)


def cy3_gv_forward(n: DegreeIndexedData) -> DegreeIndexedData:
    return multiple_cover_forward(n, -3)


def cy3_gv_invert(gw: DegreeIndexedData) -> DegreeIndexedData:
    """Genus-zero GV invariants of a CY3 from GW invariants (1/k^3 covers)."""
    return multiple_cover_invert(gw, -3)


def multiple_cover_check(gw: DegreeIndexedData, dt4: DegreeIndexedData, weight_power: int) -> bool:
    """True iff gw(d) = sum_{k | d} k^(-p) dt4(d/k) for every d <= max_degree."""
    if weight_power not in (2, 3):
        raise ValueError("weight power must be 2 or 3")
    if gw.max_degree != dt4.max_degree:
        raise ValueError("degree ranges differ")
    for d in range(1, gw.max_degree + 1):
        rhs = sum((dt4[d // k] / _weight(k, weight_power) for k in divisors(d)), Fraction(0))
        if gw[d] != rhs:
            return False
    return True


def nnb_multiple_cover(dt3: DegreeIndexedData, n: int, d: int) -> Fraction:
    """N_{n, d} = sum_{k | gcd(n, d)} k^(-2) DT3(d/k); gcd(0, d) = d."""
    if d < 1:
        raise ValueError("degree must be positive")
    g = gcd(n, d)
    return sum((dt3[d // k] / (k * k) for k in divisors(g)), Fraction(0))


def p0_series_from_n1(n1: DegreeIndexedData, order: int) -> QSeries:
    """prod_{d <= order} M(q^d)^{n1(d)}."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    m = macmahon(order)
    out = QSeries.one(order)
    for d in range(1, order + 1):
        e = n1[d]
        if e.denominator != 1:
            raise ValueError(f"n_1 at degree {d} must be an integer, got {e}")
        if e:
            out = out * m.substitute_power(d, order) ** int(e)
    return out
