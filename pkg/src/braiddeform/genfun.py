"""Configurations, the series Gamma, and the generating-function identities.

A "polynomial in x with series coefficients" is stored the other way round:
an :class:`ExpSeries` whose coefficients are polynomials in x (and y).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from . import guards
from .core import DeformationSpec, Vertex
from .count import check_multi_transitive, is_transitive_set, transitivity_witness
from .errors import HypothesisViolated, NonConvergence, NotTransitive, PreconditionViolated
from .poly import Poly
from .series import ExpSeries, compositions, multinomial_factorial

X, Y, U, V = Poly.var("x"), Poly.var("y"), Poly.var("u"), Poly.var("v")


# configurations ----------------------------------------------------------------


@dataclass(frozen=True)
class Config:
    gaps: tuple
    word: tuple  # of Vertex

    def width(self, m: int) -> int:
        return sum(self.gaps) + m + 1

    def size(self, N: int) -> tuple[int, ...]:
        k = [0] * N
        for v in self.word:
            k[v.type - 1] += 1
        return tuple(k)

    def energy(self, spec: DeformationSpec) -> int:
        prefix = [0]
        for d in self.gaps:
            prefix.append(prefix[-1] + d)
        return sum(
            1
            for i, j in itertools.combinations(range(len(self.word)), 2)
            if prefix[j] - prefix[i] in _minus(spec, self.word[i], self.word[j])
        )

    def is_well_formed(self, m: int) -> bool:
        if len(self.gaps) != len(self.word) - 1 or any(not 0 <= d <= m for d in self.gaps):
            return False
        return all(d or a < b for d, a, b in zip(self.gaps, self.word, self.word[1:]))


def _minus(spec: DeformationSpec, u: Vertex, v: Vertex) -> frozenset:
    S = spec.offsets(u.type, v.type)
    if u < v:
        return frozenset(-s for s in S if s <= 0)
    return frozenset(s for s in S if s > 0) | {0}


def _config_work(m: int, N: int, bound: int) -> int:
    return sum(
        math.factorial(k) * (m + 1) ** max(k - 1, 0) * math.comb(k + N - 1, N - 1) for k in range(1, bound + 1)
    )


def _walk_configs(m: int, N: int, size_bound: int, spec: DeformationSpec | None, zero_only: bool):
    """Yield (word, gaps, energy); energy is None without a spec."""
    guards.check("configs", _config_work(m, N, size_bound))
    for total in range(1, size_bound + 1):
        for k in compositions(total, N):
            verts = [Vertex(a + 1, i + 1) for a in range(N) for i in range(k[a])]
            word: list = []
            gaps: list = []
            prefix: list = []
            used = [False] * len(verts)

            def rec(energy):
                if len(word) == len(verts):
                    yield tuple(word), tuple(gaps), energy
                    return
                for idx, w in enumerate(verts):
                    if used[idx]:
                        continue
                    choices = range(m + 1) if word else (None,)
                    for d in choices:
                        if d == 0 and not word[-1] < w:
                            continue
                        pos = 0 if d is None else prefix[-1] + d
                        gain = 0
                        if spec is not None:
                            for u, p in zip(word, prefix):
                                if pos - p in _minus(spec, u, w):
                                    gain += 1
                            if zero_only and gain:
                                continue
                        used[idx] = True
                        word.append(w)
                        prefix.append(pos)
                        if d is not None:
                            gaps.append(d)
                        yield from rec(None if spec is None else energy + gain)
                        if d is not None:
                            gaps.pop()
                        prefix.pop()
                        word.pop()
                        used[idx] = False

            yield from rec(0)


def enumerate_configs(m: int, N: int, size_bound: int, spec: DeformationSpec | None = None,
                      zero_energy: bool = False) -> Iterator[Config]:
    """All (m, N)-configurations of size at most size_bound.

    With ``zero_energy`` only those of energy 0 for ``spec`` are produced.
    """
    if size_bound < 1:
        raise ValueError("size_bound must be at least 1")
    if zero_energy and spec is None:
        raise ValueError("zero_energy needs a spec")
    for word, gaps, _ in _walk_configs(m, N, size_bound, spec, zero_energy):
        yield Config(gaps, word)


def gamma_series(spec: DeformationSpec, D: int, with_y: bool = True) -> ExpSeries:
    """Gamma(x, y, t); with ``with_y=False`` only energy-0 configurations (y = 0)."""
    m, N = spec.m, spec.N
    tally: dict[tuple, int] = {}
    if D >= 1:
        for word, gaps, energy in _walk_configs(m, N, D, spec, not with_y):
            k = [0] * N
            for v in word:
                k[v.type - 1] += 1
            key = (tuple(k), sum(gaps) + m + 1, energy)
            tally[key] = tally.get(key, 0) + 1
    coeffs: dict = {}
    for (k, width, energy), count in tally.items():
        term = X ** width * (Y ** energy if with_y else 1) * Fraction(count, multinomial_factorial(k))
        coeffs[k] = coeffs.get(k, Poly()) + term
    return ExpSeries(N, D, coeffs)


def collect_x(gamma: ExpSeries) -> dict[int, ExpSeries]:
    """Split a series with x-polynomial coefficients into {power of x: series}."""
    parts: dict[int, dict] = {}
    for e, c in gamma.items():
        for k, piece in Poly.coerce(c).collect("x").items():
            parts.setdefault(k, {})[e] = piece
    return {k: ExpSeries(gamma.nvars, gamma.trunc, v) for k, v in sorted(parts.items())}


# fixed points --------------------------------------------------------------------


def _fixed_point(step, start: ExpSeries, D: int) -> ExpSeries:
    value = start
    for _ in range(D + 1):
        value = step(value)
    if step(value) != value:
        raise NonConvergence("fixed-point iteration did not stabilise")
    return value


def solve_region_gf(spec: DeformationSpec, D: int) -> ExpSeries:
    """R = 1 - Gamma(R, -t), coefficients r_n / n!."""
    gamma = gamma_series(spec, D, with_y=False).negate_vars()
    one = ExpSeries.one(spec.N, D)
    return _fixed_point(lambda R: one - gamma.substitute("x", R), one, D)


def solve_coboundary_gf(spec: DeformationSpec, D: int) -> ExpSeries:
    """P = Ptilde^(-q) with Ptilde = 1 - Gamma(Ptilde, y, t)."""
    gamma = gamma_series(spec, D, with_y=True)
    one = ExpSeries.one(spec.N, D)
    ptilde = _fixed_point(lambda P: one - gamma.substitute("x", P), one, D)
    return ptilde.power(-Poly.var("q"))


def fixed_point_residual(spec: DeformationSpec, D: int) -> ExpSeries:
    R = solve_region_gf(spec, D)
    gamma = gamma_series(spec, D, with_y=False).negate_vars()
    return R - 1 + gamma.substitute("x", R)


# Eulerian polynomials -------------------------------------------------------------


def eulerian_lambda(D: int) -> ExpSeries:
    """sum over permutations of u^asc v^des t^k / k!, by the Eulerian recurrence."""
    if D < 1:
        raise ValueError("D must be at least 1")
    A = Poly.const(1)
    coeffs = {}
    for k in range(1, D + 1):
        coeffs[(k,)] = A * Fraction(1, math.factorial(k))
        A = (U + V) * A + U * V * (A.diff("u") + A.diff("v"))
    return ExpSeries(1, D, coeffs)


def eulerian_lambda_bruteforce(D: int) -> ExpSeries:
    coeffs = {}
    for k in range(1, D + 1):
        total = Poly()
        for perm in itertools.permutations(range(k)):
            asc = sum(1 for a, b in zip(perm, perm[1:]) if a < b)
            total = total + U ** asc * V ** (k - 1 - asc)
        coeffs[(k,)] = total * Fraction(1, math.factorial(k))
    return ExpSeries(1, D, coeffs)


def _h(k: int) -> Poly:
    """Complete homogeneous polynomial h_k(u, v)."""
    return sum((U ** i * V ** (k - i) for i in range(k + 1)), Poly())


def eulerian_lambda_closed_form(D: int) -> ExpSeries:
    """(e^{tu} - e^{tv}) / (u e^{tv} - v e^{tu}) with the common factor u - v cancelled."""
    num = {(k,): _h(k - 1) * Fraction(1, math.factorial(k)) for k in range(1, D + 1)}
    den = {(0,): 1}
    den.update({(k,): -U * V * _h(k - 2) * Fraction(1, math.factorial(k)) for k in range(2, D + 1)})
    return ExpSeries(1, D, num) / ExpSeries(1, D, den)


# closed forms for transitive data -----------------------------------------------


def _mu(S: Iterable[int], m: int) -> Poly:
    S = set(S)
    return sum((X ** d for d in range(0, m + 1) if -d not in S), Poly())


def _nu(S: Iterable[int], m: int) -> Poly:
    S = set(S)
    return sum((X ** d for d in range(1, m + 1) if d not in S), Poly())


def _lambda_at(mu: Poly, nu: Poly, D: int, nvars: int = 1, index: int = 0) -> ExpSeries:
    lam = eulerian_lambda(max(D, 1)).truncate(D).subs_coeffs({"u": mu, "v": nu})
    return lam.embed(nvars, [index])


def gamma_transitive_closed_form(S: Iterable[int], D: int) -> ExpSeries:
    S = tuple(sorted(set(S)))
    w = transitivity_witness(S)
    if w is not None:
        raise NotTransitive(w)
    m = max((abs(s) for s in S), default=0)
    return _lambda_at(_mu(S, m), _nu(S, m), D) * X ** (m + 1)


def gamma_system_solve(spec: DeformationSpec, D: int) -> list[ExpSeries]:
    """The series Gamma_a solving the linear system, by iteration from 0."""
    N, m = spec.N, spec.m
    mu = {(a, b): _mu(spec.offsets(a, b), m) for a in range(1, N + 1) for b in range(a, N + 1)}
    nu = {(a, b): _nu(spec.offsets(a, b), m) for a in range(1, N + 1) for b in range(a, N + 1)}
    lam = [_lambda_at(mu[(a, a)], nu[(a, a)], D, N, a - 1) for a in range(1, N + 1)]
    gammas = [ExpSeries(N, D) for _ in range(N)]
    for _ in range(D + 2):
        new = []
        for a in range(1, N + 1):
            inner = ExpSeries.one(N, D)
            for b in range(1, N + 1):
                if b < a:
                    inner = inner + gammas[b - 1] * nu[(b, a)]
                elif b > a:
                    inner = inner + gammas[b - 1] * mu[(a, b)]
            new.append(lam[a - 1] * inner)
        if all(g == h for g, h in zip(new, gammas)):
            return new
        gammas = new
    raise NonConvergence("linear system iteration did not stabilise")


def gamma_delta_closed_form(spec: DeformationSpec, D: int) -> ExpSeries:
    """x^{m+1} Delta / (1 - nu Delta) when every S_{a,b}, a < b, equals one symmetric set."""
    N, m = spec.N, spec.m
    off = {spec.offsets(a, b) for a in range(1, N + 1) for b in range(a + 1, N + 1)}
    if len(off) > 1:
        raise HypothesisViolated("off-diagonal sets differ")
    S = set(off.pop()) if off else {0}
    if 0 not in S or S != {-s for s in S}:
        raise HypothesisViolated("off-diagonal set must contain 0 and be symmetric")
    nu = _nu(S, m)
    delta = ExpSeries(N, D)
    for a in range(1, N + 1):
        lam = _lambda_at(_mu(spec.offsets(a, a), m), _nu(spec.offsets(a, a), m), D, N, a - 1)
        delta = delta + lam / (lam * nu + 1)
    return delta / (1 - delta * nu) * X ** (m + 1)


# Lagrange inversion ----------------------------------------------------------------


def symmetric_precondition(S: Iterable[int]) -> str | None:
    """Why S fails '0 in S, S = -S, N minus S closed under addition', or None."""
    S = set(S)
    if 0 not in S:
        return "0 is not in S"
    if S != {-s for s in S}:
        return "S is not symmetric"
    m = max(S)
    for a in range(1, m + 1):
        for b in range(a, m + 1 - a + 1):
            if a not in S and b not in S and a + b in S:
                return f"{a} and {b} are missing from S but {a + b} is in S"
    return None


def lagrange_symmetric_count(S: Iterable[int], n: int) -> int:
    """(n-1)! [x^{n-1}] (1 + x sum_{d in S, d >= 0} (x+1)^d)^n."""
    S = set(S)
    problem = symmetric_precondition(S)
    if problem:
        raise PreconditionViolated(problem)
    if n < 1:
        raise ValueError("n must be positive")
    theta = [0] * (max(S) + 2)
    theta[0] = 1
    for d in sorted(s for s in S if s >= 0):
        for i in range(d + 1):
            theta[i + 1] += math.comb(d, i)
    power = [1]
    for _ in range(n):
        nxt = [0] * min(len(power) + len(theta) - 1, n)
        for i, a in enumerate(power):
            for j, b in enumerate(theta):
                if i + j < n:
                    nxt[i + j] += a * b
        power = nxt
    coeff = power[n - 1] if n - 1 < len(power) else 0
    return math.factorial(n - 1) * coeff


# identities ------------------------------------------------------------------------


def _interval_bounds(S: set) -> tuple[int, int] | None:
    """(l, m) with S = [-l..m] and -1 <= l <= m-1, or None."""
    if not S:
        return None
    lo, m = min(S), max(S)
    if S != set(range(lo, m + 1)) or m < 1 or not -1 <= -lo <= m - 1:
        return None
    return -lo, m


def interval_identity(S: Iterable[int], D: int) -> bool:
    """R^{m-l} = exp(t (R^{l+1} + ... + R^m)) for S = [-l..m]."""
    S = set(S)
    bounds = _interval_bounds(S)
    if bounds is None:
        raise HypothesisViolated("S is not an interval [-l..m] with -1 <= l <= m-1")
    ell, m = bounds
    R = solve_region_gf(DeformationSpec.uniform(S, 0), D)
    geometric = sum((R ** j for j in range(ell + 1, m + 1)), ExpSeries(1, D))
    t = ExpSeries.variable(0, 1, D)
    return R ** (m - ell) == (t * geometric).exp()


def _one_minus_exp_neg(nvars: int, index: int, D: int) -> ExpSeries:
    t = ExpSeries.variable(index, nvars, D)
    return 1 - (-t).exp()


def zero_removal_identity(S: Iterable[int], D: int) -> bool:
    """R_{S minus 0}(t) = R_S(1 - e^{-t})."""
    S = set(S)
    problem = symmetric_precondition(S)
    if problem:
        raise HypothesisViolated(problem)
    left = solve_region_gf(DeformationSpec.uniform(S - {0}, 0), D)
    right = solve_region_gf(DeformationSpec.uniform(S, 0), D).compose([_one_minus_exp_neg(1, 0, D)])
    return left == right


def graded_zero_removal_identity(spec: DeformationSpec, a: int, D: int, bound: int = 3) -> bool:
    """Removing 0 from S_{a,a} substitutes t_a -> 1 - e^{-t_a}."""
    S = set(spec.offsets(a, a))
    if 0 not in S or S != {-s for s in S}:
        raise HypothesisViolated(f"S_{a},{a} must contain 0 and be symmetric")
    if not check_multi_transitive(spec, bound):
        raise HypothesisViolated("offset data is not multi-transitive")
    table = dict(spec.table)
    table[(a, a)] = tuple(sorted(S - {0}))
    reduced = DeformationSpec.graded(spec.N, table, spec.n_vector)
    args = [
        _one_minus_exp_neg(spec.N, b - 1, D) if b == a else ExpSeries.variable(b - 1, spec.N, D)
        for b in range(1, spec.N + 1)
    ]
    return solve_region_gf(reduced, D) == solve_region_gf(spec, D).compose(args)


def gamma_system_identity(spec: DeformationSpec, D: int, bound: int = 3) -> bool:
    if not check_multi_transitive(spec, bound):
        raise HypothesisViolated("offset data is not multi-transitive")
    total = sum(gamma_system_solve(spec, D), ExpSeries(spec.N, D))
    return total * X ** (spec.m + 1) == gamma_series(spec, D, with_y=False)


def delta_identity(spec: DeformationSpec, D: int, bound: int = 3) -> bool:
    if not check_multi_transitive(spec, bound):
        raise HypothesisViolated("offset data is not multi-transitive")
    return gamma_delta_closed_form(spec, D) == gamma_series(spec, D, with_y=False)


def gessel_spec(N: int, variant: int) -> DeformationSpec:
    """Variant 1: S_aa = {-1,0,1}, S_ab = {-1,0}. Variant 2: S_aa = {0}, S_ab = {0,1}."""
    diag, off = {1: ((-1, 0, 1), (-1, 0)), 2: ((0,), (0, 1))}[variant]
    sets = {(a, b): (diag if a == b else off) for a in range(1, N + 1) for b in range(a, N + 1)}
    return DeformationSpec.graded(N, sets)


def gessel_identity(N: int, variant: int, D: int) -> bool:
    R = solve_region_gf(gessel_spec(N, variant), D)
    product = ExpSeries.one(N, D)
    for a in range(N):
        tR = ExpSeries.variable(a, N, D) * R
        product = product * ((1 - tR).inverse() if variant == 1 else 1 + tR)
    return R == product


def _gessel_variant(spec: DeformationSpec) -> int | None:
    for variant in (1, 2):
        if spec.sets == gessel_spec(spec.N, variant).sets:
            return variant
    return None


def identity_suite(target, D: int) -> dict[str, object]:
    """Check every identity whose hypotheses hold; others are reported as skipped."""
    if isinstance(target, DeformationSpec):
        spec = target
    else:
        spec = DeformationSpec.uniform(tuple(target), 0)
    report: dict[str, object] = {}

    def attempt(name, check):
        try:
            report[name] = bool(check())
        except (HypothesisViolated, NotTransitive, PreconditionViolated) as err:
            report[name] = f"skipped: {err}"

    attempt("fixed_point_residual", lambda: fixed_point_residual(spec, D) == 0)
    if spec.N == 1:
        S = spec.offsets(1, 1)
        attempt("gamma_closed_form", lambda: gamma_transitive_closed_form(S, D) == gamma_series(spec, D, False))
        attempt("interval", lambda: interval_identity(S, D))
        attempt("zero_removal", lambda: zero_removal_identity(S, D))

        def lagrange():
            R = solve_region_gf(spec, D)
            return all(lagrange_symmetric_count(S, n) == R.egf((n,)) for n in range(1, D + 1))

        attempt("lagrange", lagrange)
    else:
        attempt("gamma_system", lambda: gamma_system_identity(spec, D))
        attempt("delta_closed_form", lambda: delta_identity(spec, D))
        for a in range(1, spec.N + 1):
            attempt(f"graded_zero_removal_{a}", lambda a=a: graded_zero_removal_identity(spec, a, D))
        variant = _gessel_variant(spec)
        if variant is not None:
            attempt(f"gessel_{variant}", lambda: gessel_identity(spec.N, variant, D))
            attempt("gessel_symmetry", lambda: solve_region_gf(spec, D).is_symmetric())
    return report
