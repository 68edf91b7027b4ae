"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a sorted tuple of ``(variable, exponent)`` pairs with positive
exponents, so polynomials in different variable sets mix freely.  Integral
coefficients are stored as ``int`` and everything else as ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Monomial = tuple  # tuple[tuple[str, int], ...]
Number = Union[int, Fraction]

ONE_MONOMIAL: Monomial = ()


def _norm(c) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for name, e in b:
        merged[name] = merged.get(name, 0) + e
    return tuple(sorted(merged.items()))


class Poly:
    """Immutable-by-convention polynomial over the rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = _norm(c)
        self.terms: dict[Monomial, Number] = clean

    # construction -----------------------------------------------------
    @classmethod
    def var(cls, name: str) -> Poly:
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: Number) -> Poly:
        return cls({ONE_MONOMIAL: c})

    @classmethod
    def coerce(cls, other) -> Poly:
        if isinstance(other, Poly):
            return other
        if isinstance(other, Rational):
            return cls.const(other)
        raise TypeError(f"cannot coerce {other!r} to Poly")

    @classmethod
    def from_exponents(cls, variables: Iterable[str], coeffs: Mapping[tuple, Number]) -> Poly:
        names = tuple(variables)
        out = {}
        for exps, c in coeffs.items():
            mono = tuple((n, e) for n, e in zip(names, exps) if e)
            out[mono] = out.get(mono, 0) + c
        return cls(out)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (Poly, Rational)):
            return NotImplemented
        other = Poly.coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Poly, Rational)):
            return NotImplemented
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Rational):
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = _mono_mul(ma, mb)
                out[mono] = out.get(mono, 0) + ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant():
                return NotImplemented
            other = other.constant_term()
        if not isinstance(other, Rational):
            return NotImplemented
        return Poly({m: Fraction(c) / other for m, c in self.terms.items()})

    def __rtruediv__(self, other):
        if not self.is_constant():
            raise ZeroDivisionError("only constant polynomials are invertible")
        return Fraction(other) / Fraction(self.constant_term())

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Rational):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # inspection -------------------------------------------------------
    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_term(self) -> Number:
        return self.terms.get(ONE_MONOMIAL, 0)

    def variables(self) -> tuple[str, ...]:
        return tuple(sorted({n for m in self.terms for n, _ in m}))

    def degree(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    def min_degree(self, name: str) -> int:
        return min((dict(m).get(name, 0) for m in self.terms), default=0)

    def coefficient(self, **exps: int) -> Number:
        mono = tuple(sorted((n, e) for n, e in exps.items() if e))
        return self.terms.get(mono, 0)

    def exponent_map(self, variables: Iterable[str]) -> dict[tuple, Number]:
        names = tuple(variables)
        out = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            if set(d) - set(names):
                raise ValueError(f"polynomial has variables outside {names}")
            out[tuple(d.get(n, 0) for n in names)] = c
        return out

    def collect(self, name: str) -> dict[int, Poly]:
        """Split into ``{k: coefficient of name**k}``."""
        parts: dict[int, dict] = {}
        for mono, c in self.terms.items():
            k = 0
            rest = []
            for n, e in mono:
                if n == name:
                    k = e
                else:
                    rest.append((n, e))
            parts.setdefault(k, {})[tuple(rest)] = c
        return {k: Poly(v) for k, v in parts.items()}

    def diff(self, name: str) -> Poly:
        out = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            e = d.pop(name, 0)
            if e:
                if e > 1:
                    d[name] = e - 1
                out[tuple(sorted(d.items()))] = c * e
        return Poly(out)

    def subs(self, values: Mapping[str, object]):
        """Substitute numbers or polynomials for variables."""
        acc: dict = {}
        powers: dict[tuple[str, int], Poly] = {}
        for mono, c in self.terms.items():
            kept = tuple((n, e) for n, e in mono if n not in values)
            term = Poly({kept: c})
            for n, e in mono:
                if n in values:
                    key = (n, e)
                    if key not in powers:
                        powers[key] = Poly.coerce(values[n]) ** e
                    term = term * powers[key]
            for m, v in term.terms.items():
                acc[m] = acc.get(m, 0) + v
        return Poly(acc)

    def __call__(self, **values):
        out = self.subs(values)
        return out.constant_term() if out.is_constant() else out

    def map_coefficients(self, f) -> Poly:
        return Poly({m: f(c) for m, c in self.terms.items()})

    # formatting -------------------------------------------------------
    def to_json(self, variables: Iterable[str] = ("q", "y")) -> dict[str, str]:
        names = tuple(variables)
        emap = self.exponent_map(names)
        out = {}
        for exps in sorted(emap, reverse=True):
            key = " ".join(f"{n}^{e}" for n, e in zip(names, exps))
            out[key] = str(emap[exps])
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> Poly:
        terms = {}
        for key, value in data.items():
            mono = []
            for part in key.split():
                n, e = part.split("^")
                if int(e):
                    mono.append((n, int(e)))
            terms[tuple(sorted(mono))] = Fraction(value)
        return cls(terms)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        order = sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m))
        for mono in order:
            c = self.terms[mono]
            body = "*".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
            if not body:
                text = str(c)
            elif c == 1:
                text = body
            elif c == -1:
                text = "-" + body
            else:
                text = f"{c}*{body}"
            pieces.append(text)
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


Q = Poly.var("q")
Y = Poly.var("y")
X = Poly.var("x")
