"""Deterministic zero certificates for LocalizedRat values by grid evaluation.

A bivariate polynomial of total degree <= D that vanishes on a product grid
S x T with |S|, |T| >= D + 1 is identically zero. The value is evaluated at
such a grid chosen to avoid the poles of its denominator, so the numerator
over the common denominator vanishes on the grid iff the value does.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, List, Sequence, Tuple, Union

from .localized import LinForm, LocalizedRat

Point = Tuple[int, int]


@dataclass(frozen=True)
class GridCertificate:
    degree_bound: int
    points_tested: Tuple[Point, ...]
    all_zero: bool
    skipped_poles: Tuple[Point, ...]
    witness: Point | None = None

    def to_json(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "points_tested": len(self.points_tested),
            "all_zero": self.all_zero,
            "skipped_poles": [list(p) for p in self.skipped_poles],
            "witness": list(self.witness) if self.witness else None,
        }


class _IntEvaluator:
    """Evaluate sign * num / prod(form^e) at integer points with integer arithmetic."""

    def __init__(self, value: LocalizedRat):
        scale = lcm(*(c.denominator for _, c in value.num.items())) if len(value.num) else 1
        self.terms = [(e, int(c * scale)) for e, c in value.num.items()]
        self.scale = scale * value.sign
        self.den = list(value.den.items())

    def __call__(self, x: int, y: int, xpow: Dict[int, int], ypow: Dict[int, int]) -> Fraction:
        n = 0
        for (i, j), c in self.terms:
            n += c * xpow[i] * ypow[j]
        if not n:
            return Fraction(0)
        d = self.scale
        for f, e in self.den:
            d *= (f[0] * x + f[1] * y) ** e
        return Fraction(n, d)


def degree_bound(terms: Sequence[LocalizedRat]) -> Tuple[int, Dict[LinForm, int]]:
    """Total-degree bound of the numerator of sum(terms) over their common denominator."""
    common: Dict[LinForm, int] = {}
    for t in terms:
        for f, e in t.den.items():
            common[f] = max(common.get(f, 0), e)
    bound = 0
    for t in terms:
        if t.is_zero():
            continue
        lifted = t.num.total_degree() + sum(common[f] - t.den.get(f, 0) for f in common)
        bound = max(bound, lifted)
    return bound, common


def _grid(size: int, forms: Sequence[LinForm]):
    xs = list(range(1, size + 1))
    ys: List[int] = []
    skipped: List[Point] = []
    y = 0
    while len(ys) < size:
        y += 1
        bad = [(x, y) for x in xs for f in forms if f[0] * x + f[1] * y == 0]
        if bad:
            skipped.extend(bad)
            continue
        ys.append(y)
    return xs, ys, skipped


def cert_zero_grid(value: Union[LocalizedRat, Sequence[LocalizedRat]]) -> GridCertificate:
    """Certify that a value (or the sum of a list of values) is identically zero.

    When given a list, each summand is evaluated separately, so the check is
    independent of any symbolic assembly of the sum.
    """
    terms = [value] if isinstance(value, LocalizedRat) else list(value)
    terms = [t for t in terms if not t.is_zero()]
    bound, common = degree_bound(terms)
    size = bound + 1
    xs, ys, skipped = _grid(size, list(common))
    evaluators = [_IntEvaluator(t) for t in terms]
    max_i = max((e[0] for t in terms for e, _ in t.num.items()), default=0)
    max_j = max((e[1] for t in terms for e, _ in t.num.items()), default=0)
    ypows = {y: {j: y ** j for j in range(max_j + 1)} for y in ys}
    tested: List[Point] = []
    for x in xs:
        xpow = {i: x ** i for i in range(max_i + 1)}
        for y in ys:
            tested.append((x, y))
            total = sum((ev(x, y, xpow, ypows[y]) for ev in evaluators), Fraction(0))
            if total:
                return GridCertificate(bound, tuple(tested), False, tuple(skipped), (x, y))
    return GridCertificate(bound, tuple(tested), True, tuple(skipped))
