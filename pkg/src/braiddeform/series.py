"""Truncated multivariate power series in t_1..t_N.

Coefficients are stored in ordinary form, ``[t^n] F``; the exponential
normalisation ``n! [t^n] F`` is available through :meth:`ExpSeries.egf`.
Coefficients may be rationals or :class:`~braiddeform.poly.Poly` values, so
formal variables such as q, y or x live in the coefficient ring.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

from .poly import Poly


def _clean(c):
    if isinstance(c, Poly):
        if c.is_constant():
            c = c.constant_term()
        else:
            return c
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _is_scalar(value) -> bool:
    return isinstance(value, (Rational, Poly))


def multinomial_factorial(exps: Iterable[int]) -> int:
    out = 1
    for e in exps:
        out *= math.factorial(e)
    return out


def compositions(total: int, parts: int):
    """All vectors of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


class ExpSeries:
    __slots__ = ("nvars", "trunc", "coeffs")

    def __init__(self, nvars: int, trunc: int, coeffs: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        self.trunc = trunc
        clean = {}
        for exps, c in (coeffs or {}).items():
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} does not have {nvars} entries")
            if sum(exps) > trunc:
                continue
            c = _clean(c)
            if c:
                clean[tuple(exps)] = c
        self.coeffs: dict[tuple, object] = clean

    # construction -----------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, trunc: int, value=1) -> ExpSeries:
        return cls(nvars, trunc, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int, trunc: int) -> ExpSeries:
        return cls.constant(nvars, trunc, 1)

    @classmethod
    def variable(cls, index: int, nvars: int, trunc: int) -> ExpSeries:
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, trunc, {tuple(exps): 1})

    @classmethod
    def from_egf(cls, nvars: int, trunc: int, values: Mapping[tuple, object]) -> ExpSeries:
        """Build ``sum values[n] t^n / n!``."""
        return cls(
            nvars,
            trunc,
            {n: v * Fraction(1, multinomial_factorial(n)) for n, v in values.items()},
        )

    # inspection -------------------------------------------------------
    def coeff(self, exps: Sequence[int]):
        return self.coeffs.get(tuple(exps), 0)

    def egf(self, exps: Sequence[int]):
        return _clean(self.coeff(exps) * multinomial_factorial(exps))

    def constant_term(self):
        return self.coeff((0,) * self.nvars)

    def items(self):
        return self.coeffs.items()

    def valuation(self) -> int:
        return min((sum(e) for e in self.coeffs), default=self.trunc + 1)

    def _homogeneous(self) -> list[dict]:
        parts: list[dict] = [dict() for _ in range(self.trunc + 1)]
        for exps, c in self.coeffs.items():
            parts[sum(exps)][exps] = c
        return parts

    def _like(self, coeffs, trunc=None) -> ExpSeries:
        return ExpSeries(self.nvars, self.trunc if trunc is None else trunc, coeffs)

    # arithmetic -------------------------------------------------------
    def _check(self, other: ExpSeries) -> int:
        if other.nvars != self.nvars:
            raise ValueError("series have different variable counts")
        return min(self.trunc, other.trunc)

    def __add__(self, other):
        if _is_scalar(other):
            other = ExpSeries.constant(self.nvars, self.trunc, other)
        if not isinstance(other, ExpSeries):
            return NotImplemented
        trunc = self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return self._like(out, trunc)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if _is_scalar(other):
            other = ExpSeries.constant(self.nvars, self.trunc, other)
        if not isinstance(other, ExpSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            return self._like({e: c * other for e, c in self.coeffs.items()})
        if not isinstance(other, ExpSeries):
            return NotImplemented
        trunc = self._check(other)
        left = sorted(((sum(e), e, c) for e, c in self.coeffs.items()), key=lambda t: t[0])
        right = sorted(((sum(e), e, c) for e, c in other.coeffs.items()), key=lambda t: t[0])
        out: dict = {}
        for da, ea, ca in left:
            budget = trunc - da
            if budget < 0:
                break
            for db, eb, cb in right:
                if db > budget:
                    break
                key = tuple(a + b for a, b in zip(ea, eb))
                out[key] = out.get(key, 0) + ca * cb
        return self._like(out, trunc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            inv = 1 / other if isinstance(other, Poly) else Fraction(1) / other
            return self * inv
        if not isinstance(other, ExpSeries):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ExpSeries.one(self.nvars, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, ExpSeries):
            if other.nvars != self.nvars:
                return False
            trunc = min(self.trunc, other.trunc)
            a = {e: c for e, c in self.coeffs.items() if sum(e) <= trunc}
            b = {e: c for e, c in other.coeffs.items() if sum(e) <= trunc}
            return a == b
        if _is_scalar(other):
            return self == ExpSeries.constant(self.nvars, self.trunc, other)
        return NotImplemented

    __hash__ = None

    @staticmethod
    def _hmul(a: dict, b: dict) -> dict:
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = tuple(i + j for i, j in zip(ea, eb))
                out[key] = out.get(key, 0) + ca * cb
        return out

    def inverse(self) -> ExpSeries:
        c0 = self.constant_term()
        if isinstance(c0, Poly):
            raise ZeroDivisionError("constant term is not invertible in the coefficient ring")
        if not c0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv0 = Fraction(1) / c0
        parts = self._homogeneous()
        result = [dict() for _ in range(self.trunc + 1)]
        result[0] = {(0,) * self.nvars: inv0}
        for d in range(1, self.trunc + 1):
            acc: dict = {}
            for j in range(1, d + 1):
                if parts[j] and result[d - j]:
                    for e, c in self._hmul(parts[j], result[d - j]).items():
                        acc[e] = acc.get(e, 0) + c
            result[d] = {e: -inv0 * c for e, c in acc.items()}
        return self._like({e: c for part in result for e, c in part.items()})

    def log(self) -> ExpSeries:
        if self.constant_term() != 1:
            raise ValueError("log needs constant term 1")
        euler = self._like({e: c * sum(e) for e, c in self.coeffs.items()})
        quotient = euler * self.inverse()
        return self._like({e: c * Fraction(1, sum(e)) for e, c in quotient.coeffs.items() if sum(e)})

    def exp(self) -> ExpSeries:
        if self.constant_term() != 0:
            raise ValueError("exp needs zero constant term")
        parts = self._homogeneous()
        euler = [{e: c * d for e, c in part.items()} for d, part in enumerate(parts)]
        result = [dict() for _ in range(self.trunc + 1)]
        result[0] = {(0,) * self.nvars: 1}
        for d in range(1, self.trunc + 1):
            acc: dict = {}
            for j in range(1, d + 1):
                if euler[j] and result[d - j]:
                    for e, c in self._hmul(euler[j], result[d - j]).items():
                        acc[e] = acc.get(e, 0) + c
            result[d] = {e: c * Fraction(1, d) for e, c in acc.items()}
        return self._like({e: c for part in result for e, c in part.items()})

    def power(self, alpha) -> ExpSeries:
        """``self ** alpha`` for a rational or formal (polynomial) exponent."""
        if isinstance(alpha, int) and alpha >= 0:
            return self ** alpha
        return (self.log() * alpha).exp()

    # substitution -----------------------------------------------------
    def map_coeffs(self, f: Callable) -> ExpSeries:
        return self._like({e: f(c) for e, c in self.coeffs.items()})

    def negate_vars(self) -> ExpSeries:
        """Substitute t -> -t."""
        return self._like({e: (-c if sum(e) % 2 else c) for e, c in self.coeffs.items()})

    def truncate(self, trunc: int) -> ExpSeries:
        return self._like(self.coeffs, min(trunc, self.trunc))

    def shift(self, exps: Sequence[int]) -> ExpSeries:
        """Multiply by the monomial t^exps."""
        return self._like({tuple(a + b for a, b in zip(e, exps)): c for e, c in self.coeffs.items()})

    def embed(self, nvars: int, positions: Sequence[int]) -> ExpSeries:
        """Rename variable i to variable positions[i] in an nvars-variable ring."""
        out = {}
        for e, c in self.coeffs.items():
            new = [0] * nvars
            for i, k in enumerate(e):
                new[positions[i]] += k
            out[tuple(new)] = c
        return ExpSeries(nvars, self.trunc, out)

    def compose(self, args: Sequence[ExpSeries]) -> ExpSeries:
        """Substitute t_i -> args[i]; each argument needs zero constant term."""
        if len(args) != self.nvars:
            raise ValueError("need one argument per variable")
        if any(a.constant_term() != 0 for a in args):
            raise ValueError("composition needs arguments of positive valuation")
        target = args[0]
        trunc = min([self.trunc] + [a.trunc for a in args])
        powers = [[ExpSeries.one(target.nvars, trunc)] for _ in args]
        result = ExpSeries(target.nvars, trunc)
        for e, c in self.coeffs.items():
            term = ExpSeries.constant(target.nvars, trunc, c)
            for i, k in enumerate(e):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * args[i])
                if k:
                    term = term * powers[i][k]
            result = result + term
        return result

    def substitute(self, name: str, value: ExpSeries) -> ExpSeries:
        """Replace the coefficient-ring variable ``name`` by a series."""
        powers = [ExpSeries.one(self.nvars, self.trunc)]
        acc: dict = {}
        for e, c in self.coeffs.items():
            pieces = c.collect(name) if isinstance(c, Poly) else {0: c}
            for k, part in pieces.items():
                while len(powers) <= k:
                    powers.append((powers[-1] * value).truncate(self.trunc))
                shifted = powers[k].shift(e)
                for ee, cc in shifted.coeffs.items():
                    if sum(ee) <= self.trunc:
                        acc[ee] = acc.get(ee, 0) + part * cc
        return self._like(acc)

    def subs_coeffs(self, values: Mapping[str, object]) -> ExpSeries:
        """Substitute numbers or polynomials into every coefficient."""
        return self.map_coeffs(lambda c: c.subs(values) if isinstance(c, Poly) else c)

    # structure --------------------------------------------------------
    def is_symmetric(self) -> bool:
        for perm in itertools.permutations(range(self.nvars)):
            for e, c in self.coeffs.items():
                if self.coeff(tuple(e[p] for p in perm)) != c:
                    return False
        return True

    def egf_table(self) -> dict[tuple, object]:
        return {e: self.egf(e) for e in sorted(self.coeffs)}

    # formatting -------------------------------------------------------
    def to_json(self, variable_prefix: str = "t", coefficient_variables: Sequence[str] | None = None) -> dict:
        if coefficient_variables is None:
            names = set()
            for c in self.coeffs.values():
                if isinstance(c, Poly):
                    names.update(c.variables())
            coefficient_variables = tuple(sorted(names))
        coeffs = {}
        for e in sorted(self.coeffs):
            key = " ".join(f"{variable_prefix}{i + 1}^{k}" for i, k in enumerate(e) if k) or "1"
            c = self.coeffs[e]
            if isinstance(c, Poly):
                coeffs[key] = c.to_json(coefficient_variables)
            else:
                coeffs[key] = str(Fraction(c))
        return {"trunc": self.trunc, "coeffs": coeffs}

    @classmethod
    def from_json(cls, data: Mapping, nvars: int, variable_prefix: str = "t") -> ExpSeries:
        coeffs = {}
        for key, value in data["coeffs"].items():
            exps = [0] * nvars
            if key != "1":
                for part in key.split():
                    name, k = part.split("^")
                    exps[int(name[len(variable_prefix):]) - 1] = int(k)
            coeffs[tuple(exps)] = Poly.from_json(value) if isinstance(value, dict) else Fraction(value)
        return cls(nvars, int(data["trunc"]), coeffs)

    def __repr__(self):
        terms = []
        for e in sorted(self.coeffs, key=lambda e: (sum(e), tuple(-k for k in e))):
            mono = "*".join(
                f"t{i + 1}" if k == 1 else f"t{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            terms.append(f"({self.coeffs[e]})*{mono}" if mono else f"({self.coeffs[e]})")
        return f"ExpSeries[{self.nvars}, O({self.trunc + 1})](" + " + ".join(terms) + ")"
