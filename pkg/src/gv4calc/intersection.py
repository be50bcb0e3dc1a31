"""Cohomology rings of products of projective spaces and of a P^2-bundle over P^3.

K-theory classes are formal integer combinations of line bundles, written
by multidegree. Chern classes come from the Chern character through the
Newton identities, and integrals read off the top-degree coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Mapping, Sequence, Tuple

from .laurent import format_fraction

Exp = Tuple[int, ...]


@dataclass(frozen=True)
class RingSpec:
    """``product``: H_1..H_r with H_i^(dims[i]+1) = 0.

    ``bundle``: P(E) for a rank-3 bundle E on P^3, variables (h, xi) with
    h^4 = 0 and xi^3 + c1 xi^2 + c2 xi + c3 = 0, where c_i = bundle_chern[i-1] h^i.
    """

    kind: str
    dims: Tuple[int, ...]
    bundle_chern: Tuple[int, ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("product", "bundle"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "bundle" and (self.dims != (3, 2) or len(self.bundle_chern) != 3):
            raise ValueError("bundle rings are P^2-bundles over P^3 with three Chern numbers")

    @classmethod
    def product(cls, *dims: int) -> "RingSpec":
        return cls("product", tuple(dims), (), "x".join(f"P{d}" for d in dims))

    @classmethod
    def p2_bundle_over_p3(cls, c1: int, c2: int, c3: int) -> "RingSpec":
        return cls("bundle", (3, 2), (c1, c2, c3), f"P(E) over P3, c(E)=1+{c1}h+{c2}h^2+{c3}h^3")

    @property
    def nvars(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def top(self) -> Exp:
        return tuple(self.dims)

    def drop(self, slots: Sequence[int]) -> "RingSpec":
        if self.kind != "product":
            raise ValueError("only product rings have factors to drop")
        return RingSpec.product(*(d for i, d in enumerate(self.dims) if i not in slots))

    def to_json(self) -> dict:
        return {"name": self.name, "kind": self.kind, "dims": list(self.dims),
                "bundle_chern": list(self.bundle_chern)}


@lru_cache(maxsize=None)
def _reduce_monomial(spec: RingSpec, exp: Exp) -> Tuple[Tuple[Exp, int], ...]:
    if spec.kind == "product":
        if any(e > d for e, d in zip(exp, spec.dims)):
            return ()
        return ((exp, 1),)
    a, b = exp
    if a > 3:
        return ()
    if b < 3:
        return ((exp, 1),)
    c1, c2, c3 = spec.bundle_chern
    out: Dict[Exp, int] = {}
    for (da, db), c in (((1, 2), -c1), ((2, 1), -c2), ((3, 0), -c3)):
        if not c:
            continue
        for e, v in _reduce_monomial(spec, (a + da, b - 3 + db)):
            out[e] = out.get(e, 0) + c * v
    return tuple((e, v) for e, v in out.items() if v)


class RingElem:
    """Element of a truncated cohomology ring, stored in reduced normal form."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: RingSpec, terms: Mapping[Exp, object] | None = None):
        self.spec = spec
        out: Dict[Exp, Fraction] = {}
        for exp, c in (terms or {}).items():
            if not c:
                continue
            for e, v in _reduce_monomial(spec, tuple(exp)):
                out[e] = out.get(e, 0) + Fraction(c) * v
        self.terms = {e: v for e, v in out.items() if v}

    @classmethod
    def _raw(cls, spec, terms):
        obj = cls.__new__(cls)
        obj.spec = spec
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, spec: RingSpec, c) -> "RingElem":
        return cls(spec, {(0,) * spec.nvars: c})

    @classmethod
    def gen(cls, spec: RingSpec, i: int) -> "RingElem":
        e = [0] * spec.nvars
        e[i] = 1
        return cls(spec, {tuple(e): 1})

    @classmethod
    def linear(cls, spec: RingSpec, coeffs: Sequence) -> "RingElem":
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * spec.nvars
            e[i] = 1
            terms[tuple(e)] = c
        return cls(spec, terms)

    def _check(self, other: "RingElem"):
        if other.spec != self.spec:
            raise ValueError("ring mismatch")

    def __add__(self, other):
        if not isinstance(other, RingElem):
            other = RingElem.constant(self.spec, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return RingElem._raw(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElem._raw(self.spec, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RingElem):
            c = Fraction(other)
            return RingElem._raw(self.spec, {e: v * c for e, v in self.terms.items() if v * c})
        self._check(other)
        raw: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                raw[e] = raw.get(e, 0) + c1 * c2
        return RingElem(self.spec, raw)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RingElem.constant(self.spec, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RingElem.constant(self.spec, other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def degree_part(self, k: int) -> "RingElem":
        return RingElem._raw(self.spec, {e: c for e, c in self.terms.items() if sum(e) == k})

    def reduce(self) -> "RingElem":
        return RingElem(self.spec, self.terms)

    def integrate(self) -> Fraction:
        """Coefficient of the top monomial (the point class)."""
        return self.terms.get(self.spec.top, Fraction(0))

    def to_json(self) -> dict:
        return {"ring": self.spec.to_json(),
                "terms": [{"e": list(e), "c": format_fraction(c)} for e, c in sorted(self.terms.items(), reverse=True)]}

    def __repr__(self):
        body = " + ".join(f"{c}*{e}" for e, c in sorted(self.terms.items(), reverse=True)) or "0"
        return f"RingElem({self.spec.name}: {body})"


def ring_exp(x: RingElem) -> RingElem:
    """exp(x) truncated at the top degree of the ring; x must be nilpotent."""
    out = RingElem.constant(x.spec, 1)
    term = RingElem.constant(x.spec, 1)
    for k in range(1, x.spec.dim + 1):
        term = term * x * Fraction(1, k)
        if not term.terms:
            break
        out = out + term
    return out


def ring_inverse(x: RingElem) -> RingElem:
    """1/x for x with constant term 1."""
    const = x.terms.get((0,) * x.spec.nvars, 0)
    if const != 1:
        raise ValueError("inverse needs constant term 1")
    nil = 1 - x
    out = RingElem.constant(x.spec, 1)
    term = RingElem.constant(x.spec, 1)
    for _ in range(x.spec.dim):
        term = term * nil
        if not term.terms:
            break
        out = out + term
    return out


class KClass:
    """Formal integer combination of line bundles O(d_1, ..., d_r)."""

    __slots__ = ("spec", "summands")

    def __init__(self, spec: RingSpec, summands: Mapping[Exp, int] | None = None):
        self.spec = spec
        out: Dict[Exp, int] = {}
        for d, m in (summands or {}).items():
            d = tuple(d)
            if len(d) != spec.nvars:
                raise ValueError(f"multidegree {d} does not match {spec.name}")
            out[d] = out.get(d, 0) + int(m)
        self.summands = {d: m for d, m in out.items() if m}

    @classmethod
    def line(cls, spec: RingSpec, *degrees: int, mult: int = 1) -> "KClass":
        return cls(spec, {tuple(degrees): mult})

    @property
    def rank(self) -> int:
        return sum(self.summands.values())

    def _check(self, other: "KClass"):
        if other.spec != self.spec:
            raise ValueError(f"K-class spec mismatch: {self.spec.name} vs {other.spec.name}")

    def __add__(self, other: "KClass") -> "KClass":
        self._check(other)
        out = dict(self.summands)
        for d, m in other.summands.items():
            out[d] = out.get(d, 0) + m
        return KClass(self.spec, out)

    def __neg__(self) -> "KClass":
        return KClass(self.spec, {d: -m for d, m in self.summands.items()})

    def __sub__(self, other: "KClass") -> "KClass":
        return self + (-other)

    def __mul__(self, other) -> "KClass":
        if isinstance(other, int):
            return KClass(self.spec, {d: m * other for d, m in self.summands.items()})
        return self.tensor(other)

    __rmul__ = __mul__

    def tensor(self, other: "KClass") -> "KClass":
        self._check(other)
        out: Dict[Exp, int] = {}
        for d1, m1 in self.summands.items():
            for d2, m2 in other.summands.items():
                d = tuple(a + b for a, b in zip(d1, d2))
                out[d] = out.get(d, 0) + m1 * m2
        return KClass(self.spec, out)

    def dual(self) -> "KClass":
        return KClass(self.spec, {tuple(-a for a in d): m for d, m in self.summands.items()})

    def pullback(self, target: RingSpec, slots: Sequence[int]) -> "KClass":
        """Pull back along the projection of ``target`` onto the factors ``slots``."""
        if [target.dims[s] for s in slots] != list(self.spec.dims):
            raise ValueError("projection factors do not match the source ring")
        out = {}
        for d, m in self.summands.items():
            full = [0] * target.nvars
            for s, a in zip(slots, d):
                full[s] = a
            out[tuple(full)] = m
        return KClass(target, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KClass):
            return NotImplemented
        return self.spec == other.spec and self.summands == other.summands

    def to_json(self) -> dict:
        return {"ring": self.spec.to_json(),
                "summands": [{"degree": list(d), "mult": m} for d, m in sorted(self.summands.items(), reverse=True)]}

    def __repr__(self) -> str:
        body = " + ".join(f"{m}[O{d}]" for d, m in sorted(self.summands.items(), reverse=True)) or "0"
        return f"KClass({self.spec.name}: {body})".replace("+ -", "- ")


def kclass_ops(lhs: KClass, rhs: KClass | None, op: str) -> KClass:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "tensor":
        return lhs.tensor(rhs)
    if op == "dual":
        return lhs.dual()
    raise ValueError(f"unknown operation {op!r}")


def chi_projective_space(m: int, c: int) -> int:
    """chi(P^m, O(c)) = binom(c + m, m) as a polynomial in c."""
    num = 1
    for i in range(1, m + 1):
        num *= c + i
    return num // factorial(m)


def pushforward_fiber(cls: KClass, fiber_slot: int | Sequence[int]) -> KClass:
    """Pushforward along the projection forgetting trivial P^m factor(s)."""
    spec = cls.spec
    slots = [fiber_slot] if isinstance(fiber_slot, int) else sorted(fiber_slot)
    if spec.kind != "product" or any(not 0 <= s < spec.nvars for s in slots) or len(set(slots)) != len(slots):
        raise ValueError(f"invalid fiber slot(s) {fiber_slot!r} for {spec.name}")
    base = spec.drop(slots)
    out: Dict[Exp, int] = {}
    for d, m in cls.summands.items():
        chi = 1
        for s in slots:
            chi *= chi_projective_space(spec.dims[s], d[s])
        if chi:
            key = tuple(a for i, a in enumerate(d) if i not in slots)
            out[key] = out.get(key, 0) + m * chi
    return KClass(base, out)


def chern_character(cls: KClass) -> RingElem:
    spec = cls.spec
    out = RingElem(spec)
    for d, m in cls.summands.items():
        out = out + ring_exp(RingElem.linear(spec, d)) * m
    return out


def chern_data(cls: KClass) -> Tuple[int, List[RingElem]]:
    """(rank, [c_0, c_1, ..., c_top]) from ch by the Newton identities."""
    spec = cls.spec
    ch = chern_character(cls)
    # power sums of the Chern roots: p_k = k! ch_k
    p = [None] + [ch.degree_part(k) * factorial(k) for k in range(1, spec.dim + 1)]
    c = [RingElem.constant(spec, 1)]
    for k in range(1, spec.dim + 1):
        acc = RingElem(spec)
        for i in range(1, k + 1):
            term = c[k - i] * p[i]
            acc = acc + (term if i % 2 else -term)
        c.append(acc * Fraction(1, k))
    return cls.rank, c


def total_chern(cls: KClass) -> RingElem:
    _, c = chern_data(cls)
    out = RingElem(cls.spec)
    for x in c:
        out = out + x
    return out


def euler_class(cls: KClass) -> RingElem:
    rank, c = chern_data(cls)
    if rank < 0:
        raise ValueError(f"Euler class of a class of negative rank {rank}")
    if rank >= len(c):
        return RingElem(cls.spec)
    return c[rank]


def euler_and_integrate(cls: KClass, extra: RingElem) -> Fraction:
    return (euler_class(cls) * extra).integrate()


# -- local surfaces ----------------------------------------------------------------

def diagonal_class_P2() -> KClass:
    """[O_Delta] on P2 x P2 from the Beilinson resolution.

    0 -> O(-2) x Omega^2(2) -> O(-1) x Omega^1(1) -> O x O -> O_Delta, with
    Omega^2(2) = O(-1) and [Omega^1(1)] = 3[O] - [O(1)] from the Euler sequence.
    """
    spec = RingSpec.product(2, 2)
    return KClass(spec, {(0, 0): 1, (-1, 0): -3, (-1, 1): 1, (-2, -1): 1})


def diagonal_class_P1() -> KClass:
    return KClass(RingSpec.product(1, 1), {(0, 0): 1, (-1, -1): -1})


def structure_sheaf_of_divisor(spec: RingSpec, degree: Sequence[int]) -> KClass:
    """[O_D] = [O] - [O(-D)] for a divisor D of the given multidegree."""
    return KClass(spec, {(0,) * spec.nvars: 1, tuple(-a for a in degree): -1})


@dataclass(frozen=True)
class LocalSurfaceResult:
    surface: str
    degree: Tuple[int, ...]
    moduli: RingSpec
    F: KClass
    V: KClass
    curve_class: RingElem | None
    extra: RingElem
    value: Fraction

    def to_json(self) -> dict:
        return {
            "surface": self.surface,
            "degree": list(self.degree),
            "moduli_ambient": self.moduli.to_json(),
            "F": self.F.to_json(),
            "V_rank": self.V.rank,
            "curve_class": self.curve_class.to_json() if self.curve_class is not None else None,
            "value": format_fraction(self.value),
        }


def _obstruction_bundle(F: KClass, twist: KClass, fiber_slots: Sequence[int]) -> KClass:
    # Ext^1(E, E x L1) = -chi(E, E x L1) since Hom and Ext^2 vanish
    return -pushforward_fiber(F.dual().tensor(F).tensor(twist), fiber_slots)


def _p2_universal_sheaf_class(d: int) -> Tuple[RingSpec, KClass]:
    """[F] = pi_13^*[O_C] - pi_23^*[O_Delta] on P^N x P2 x P2."""
    n = d * (d + 3) // 2
    triple = RingSpec.product(n, 2, 2)
    o_c = structure_sheaf_of_divisor(RingSpec.product(n, 2), (1, d))
    F = o_c.pullback(triple, (0, 2)) - diagonal_class_P2().pullback(triple, (1, 2))
    return triple, F


def local_p2(d: int) -> LocalSurfaceResult:
    """Invariant with one point insertion on Tot_{P2}(O(-1) + O(-2)) in degree d."""
    if d not in (1, 2, 3):
        raise ValueError(f"local P2 is supported in degrees 1, 2, 3; got {d}")
    n = d * (d + 3) // 2
    if d == 3:
        # M = universal cubic C in P9 x P2, universal sheaf dual to I_{C,p}
        triple, F = _p2_universal_sheaf_class(3)
        twist = KClass.line(triple, 0, 0, -1)
        V = _obstruction_bundle(F, twist, [2])
        base = V.spec
        curve = RingElem.linear(base, (1, 3))
        extra = curve * RingElem.gen(base, 0)
        return LocalSurfaceResult("P2", (3,), base, F, V, curve, extra, euler_and_integrate(V, extra))
    # genus-zero curves: M = |O(d)| = P^N with universal sheaf O_C
    pair = RingSpec.product(n, 2)
    F = structure_sheaf_of_divisor(pair, (1, d))
    V = _obstruction_bundle(F, KClass.line(pair, 0, -1), [1])
    extra = RingElem.gen(V.spec, 0)
    return LocalSurfaceResult("P2", (d,), V.spec, F, V, None, extra, euler_and_integrate(V, extra))


def local_p1xp1_22() -> LocalSurfaceResult:
    """Degree (2,2) on Tot_{P1xP1}(O(-1,-1) + O(-1,-1)) with one point insertion."""
    quint = RingSpec.product(8, 1, 1, 1, 1)
    o_c = structure_sheaf_of_divisor(RingSpec.product(8, 1, 1), (1, 2, 2))
    delta = diagonal_class_P1().pullback(quint, (1, 3)).tensor(diagonal_class_P1().pullback(quint, (2, 4)))
    F = o_c.pullback(quint, (0, 3, 4)) - delta
    twist = KClass.line(quint, 0, 0, 0, -1, -1)
    V = _obstruction_bundle(F, twist, [3, 4])
    base = V.spec
    curve = RingElem.linear(base, (1, 2, 2))
    extra = curve * RingElem.gen(base, 0)
    return LocalSurfaceResult("P1xP1", (2, 2), base, F, V, curve, extra, euler_and_integrate(V, extra))


def local_surface_invariant(surface: str, degree) -> Fraction:
    return local_surface_result(surface, degree).value


def local_surface_result(surface: str, degree) -> LocalSurfaceResult:
    if surface == "P2":
        d = degree[0] if isinstance(degree, (tuple, list)) else degree
        return local_p2(int(d))
    if surface == "P1xP1":
        if tuple(degree) != (2, 2):
            raise ValueError(f"local P1xP1 is supported in degree (2, 2); got {degree}")
        return local_p1xp1_22()
    raise ValueError(f"unsupported surface {surface!r}")


# -- elliptic fibration over P3 -------------------------------------------------------

def weierstrass_ring() -> RingSpec:
    # E = O + O(8h) + O(12h): -2K and -3K of P3
    return RingSpec.p2_bundle_over_p3(20, 96, 0)


def weierstrass_data():
    """(ring, [X], c(T_X)) for the Weierstrass fibration X in P(E)."""
    R = weierstrass_ring()
    h, xi = RingElem.gen(R, 0), RingElem.gen(R, 1)
    X = xi * 3 + h * 24
    cP = (1 + h) ** 4
    for a in (0, 8, 12):
        cP = cP * (1 + xi + h * a)
    cX = cP * ring_inverse(1 + X)
    return R, X, cX


def bundle_pushforward(x: RingElem) -> RingElem:
    """p_*: H*(P(E)) -> H*(P3) on the normal form, returned pulled back to P(E)."""
    R = x.spec
    return RingElem(R, {(a, 0): c for (a, b), c in x.terms.items() if b == 2})


def elliptic_fiber_invariant(insertion: str) -> Fraction:
    """int_X pi^* pi_* (gamma) c_3(X) for gamma = B.B or B.E."""
    R, X, cX = weierstrass_data()
    h, xi = RingElem.gen(R, 0), RingElem.gen(R, 1)
    if insertion == "B2":
        gamma = h * h * X
    elif insertion == "BE":
        # the section {x = z = 0}: zero locus of a section of O(1) x (O + O(8h))^dual
        gamma = h * xi * (xi + h * 8)
    else:
        raise ValueError(f"unknown insertion {insertion!r}")
    return (bundle_pushforward(gamma) * cX.degree_part(3) * X).integrate()


def elliptic_c3_integral() -> Fraction:
    """int_X B . c_3(X) for the Weierstrass fibration over P3."""
    R, X, cX = weierstrass_data()
    h = RingElem.gen(R, 0)
    return (h * cX.degree_part(3) * X).integrate()
