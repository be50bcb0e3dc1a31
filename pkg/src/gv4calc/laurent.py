"""Sparse multivariate Laurent polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

ExpVec = Tuple[int, ...]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot coerce {value!r} to an exact rational")


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


class MVLaurent:
    """Immutable map from exponent vectors to nonzero rational coefficients.

    Negative exponents are allowed. Arithmetic never stores a zero
    coefficient, so equality is plain dictionary equality.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[ExpVec, object] | None = None):
        self.nvars = nvars
        clean: Dict[ExpVec, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} does not have {nvars} slots")
                c = as_fraction(coeff)
                if c:
                    clean[exp] = clean.get(exp, Fraction(0)) + c
                    if not clean[exp]:
                        del clean[exp]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[ExpVec, Fraction]) -> "MVLaurent":
        # terms must already be canonical (no zero values)
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "MVLaurent":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> "MVLaurent":
        c = as_fraction(value)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "MVLaurent":
        return cls.constant(nvars, 1)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "MVLaurent":
        c = as_fraction(coeff)
        exps = tuple(exps)
        return cls._raw(len(exps), {exps: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MVLaurent":
        exp = [0] * nvars
        exp[index] = 1
        return cls.monomial(exp)

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> "MVLaurent":
        """The linear form sum(coeffs[i] * x_i)."""
        n = len(coeffs)
        terms = {}
        for i, a in enumerate(coeffs):
            if a:
                exp = [0] * n
                exp[i] = 1
                terms[tuple(exp)] = Fraction(a)
        return cls._raw(n, terms)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> Dict[ExpVec, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[ExpVec, Fraction]]:
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def sorted_terms(self):
        """Terms in lexicographic exponent order, largest first."""
        return sorted(self._terms.items(), reverse=True)

    def min_exponents(self) -> ExpVec:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self._terms) for i in range(self.nvars))

    def max_exponents(self) -> ExpVec:
        if not self._terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self._terms) for i in range(self.nvars))

    def total_degree(self) -> int:
        """Largest exponent sum; 0 for the zero polynomial."""
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self._terms for x in e)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "MVLaurent":
        if isinstance(other, MVLaurent):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MVLaurent.constant(self.nvars, other)

    def __add__(self, other) -> "MVLaurent":
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for e, c in small.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MVLaurent._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "MVLaurent":
        return MVLaurent._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MVLaurent":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MVLaurent":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MVLaurent":
        if not isinstance(other, MVLaurent):
            c = as_fraction(other)
            if not c:
                return MVLaurent.zero(self.nvars)
            return MVLaurent._raw(self.nvars, {e: v * c for e, v in self._terms.items()})
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        out: Dict[ExpVec, Fraction] = {}
        n = self.nvars
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(e1[i] + e2[i] for i in range(n)) if n != 2 else (e1[0] + e2[0], e1[1] + e2[1])
                out[e] = out.get(e, 0) + c1 * c2
        return MVLaurent._raw(n, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MVLaurent":
        if not isinstance(k, int) or k < 0:
            if len(self._terms) == 1 and isinstance(k, int):
                (e, c), = self._terms.items()
                return MVLaurent.monomial([x * k for x in e], c ** k)
            raise ValueError("only monomials can be raised to negative powers")
        result = MVLaurent.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exps: Sequence[int]) -> "MVLaurent":
        """Multiply by the monomial x^exps."""
        n = self.nvars
        return MVLaurent._raw(n, {tuple(e[i] + exps[i] for i in range(n)): c
                                  for e, c in self._terms.items()})

    def swap(self, i: int = 0, j: int = 1) -> "MVLaurent":
        """Exchange variables i and j."""
        def sw(e):
            e = list(e)
            e[i], e[j] = e[j], e[i]
            return tuple(e)
        return MVLaurent._raw(self.nvars, {sw(e): c for e, c in self._terms.items()})

    def evaluate(self, point: Sequence) -> Fraction:
        point = [as_fraction(p) for p in point]
        if len(point) != self.nvars:
            raise ValueError("point has the wrong dimension")
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    if not x and k < 0:
                        raise ZeroDivisionError("Laurent monomial evaluated at a zero coordinate")
                    term *= x ** k
            total += term
        return total

    def divide_linear(self, coeffs: Sequence[int]) -> "MVLaurent | None":
        """Exact quotient by the linear form sum(coeffs[i] x_i), or None.

        Only defined for honest polynomials. Uses the lex-leading variable of
        the divisor as pivot, so the division terminates and the remainder is
        zero iff the form divides.
        """
        if not self.is_polynomial():
            raise ValueError("trial division needs a polynomial numerator")
        pivot = next(i for i, a in enumerate(coeffs) if a)
        lead = Fraction(coeffs[pivot])
        rest = [(i, Fraction(a)) for i, a in enumerate(coeffs) if a and i != pivot]
        rem = dict(self._terms)
        quot: Dict[ExpVec, Fraction] = {}
        n = self.nvars
        while rem:
            e = max(rem, key=lambda x: (x[pivot], x))
            if e[pivot] == 0:
                return None
            c = rem.pop(e) / lead
            qe = list(e)
            qe[pivot] -= 1
            qe = tuple(qe)
            quot[qe] = quot.get(qe, 0) + c
            for i, a in rest:
                te = list(qe)
                te[i] += 1
                te = tuple(te)
                v = rem.get(te, 0) - c * a
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return MVLaurent._raw(n, {e: c for e, c in quot.items() if c})

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MVLaurent):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MVLaurent.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MVLaurent({self.nvars}, {self.to_str()})"

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"{v}^{k}" if k != 1 else v for v, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.to_str()

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list:
        return [{"e": list(e), "c": format_fraction(c)} for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: list, nvars: int | None = None) -> "MVLaurent":
        if not data:
            if nvars is None:
                raise ValueError("empty polynomial needs an explicit variable count")
            return cls.zero(nvars)
        n = len(data[0]["e"])
        return cls(n, {tuple(t["e"]): parse_fraction(t["c"]) for t in data})


def poly_arith(lhs: MVLaurent, rhs, op: str) -> MVLaurent:
    """Dispatch helper over the ring operations; ``int_pow`` takes an int rhs."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "neg":
        return -lhs
    if op == "int_pow":
        if not isinstance(rhs, int) or rhs < 0:
            raise ValueError("int_pow needs a nonnegative integer exponent")
        return lhs ** rhs
    raise ValueError(f"unknown operation {op!r}")
