"""Region counts from boxed trees and tree families, transitivity, and the Z identity."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

from . import guards
from .core import DeformationSpec
from .errors import BudgetExceeded, NotTransitive, Overflow
from .poly import Poly
from .series import ExpSeries, compositions
from .trees import enumerate_trees, energy_weight, signed_weight, tree_count, tree_in_family

# transitivity ---------------------------------------------------------------


def transitivity_witness(S: Iterable[int]) -> tuple[int, int, int] | None:
    """A triple (s, t, s+t or s-t) breaking transitivity of S, or None.

    Every condition needs its combined value inside S, hence inside [-m..m],
    and that forces |s|, |t| <= m; larger values are vacuous.
    """
    S = set(S)
    m = max((abs(s) for s in S), default=0)
    window = range(-m, m + 1)
    for s in window:
        if s in S:
            continue
        for t in window:
            if t in S:
                continue
            if s * t > 0 and s + t in S:
                return (s, t, s + t)
            if s > 0 and t <= 0:
                if s - t in S:
                    return (s, t, s - t)
                if t - s in S:
                    return (s, t, t - s)
    return None


def is_transitive_set(S: Iterable[int]) -> bool:
    return transitivity_witness(S) is None


def _triple_witness(spec: DeformationSpec, labels) -> tuple | None:
    m = spec.m
    for a, b, c in itertools.permutations(labels, 3):
        ab, bc, ac = spec.minus_set(a, b), spec.minus_set(b, c), spec.minus_set(a, c)
        for s in range(m + 1):
            if s in ab:
                continue
            for t in range(m + 1 - s):
                if t not in bc and s + t in ac:
                    return (s, t, s + t)
    return None


def tuple_transitivity_witness(spec: DeformationSpec) -> tuple | None:
    """Witness against transitivity of the tuple S(n) on the arrangement's vertices.

    Values s, t >= 0 with s + t > m never land in a set S^-, so s, t <= m.
    """
    return _triple_witness(spec, spec.labels())


def is_transitive_tuple(spec: DeformationSpec) -> bool:
    return tuple_transitivity_witness(spec) is None


def multi_transitive_criterion(spec: DeformationSpec) -> str | None:
    """Name of a sufficient condition for multi-transitivity that applies, if any."""
    m = spec.m
    half = set(range(-(m // 2), m // 2 + 1))
    sets = spec.table
    if all(half <= set(S) for S in sets.values()):
        return "half-interval"
    full = set(range(-m, m + 1))
    if all(is_transitive_set(sets[(a, a)]) for a in range(1, spec.N + 1)) and all(
        set(S) == full for (a, b), S in sets.items() if a < b
    ):
        return "transitive-diagonal"
    return None


def multi_transitive_witness(spec: DeformationSpec, bound: int) -> tuple | None:
    for total in range(min(bound, 3), bound + 1):
        for n in compositions(total, spec.N):
            w = _triple_witness(spec.with_n(n), spec.with_n(n).labels())
            if w is not None:
                return (n, w)
        if total == 3:
            # every triple of distinct vertices of any V(n) is an
            # order-preserving copy of some V(k) with |k| = 3
            break
    return None


def check_multi_transitive(spec: DeformationSpec, bound: int) -> bool:
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if multi_transitive_criterion(spec) is not None:
        return True
    return multi_transitive_witness(spec, bound) is None


def _require_transitive(spec: DeformationSpec) -> None:
    if spec.N == 1:
        w = transitivity_witness(spec.offsets(1, 1))
    else:
        w = tuple_transitivity_witness(spec)
    if w is not None:
        raise NotTransitive(w)


# region counts ------------------------------------------------------------------


def _signed_chunk(args) -> int:
    spec, roots = args
    return sum(signed_weight(spec, t) for t in enumerate_trees(spec.m, spec.labels(), roots))


def _unsigned_chunk(args) -> int:
    spec, roots = args
    return sum(1 for t in enumerate_trees(spec.m, spec.labels(), roots) if tree_in_family(spec, t))


def _partitioned(worker, spec: DeformationSpec, jobs: int) -> int:
    labels = spec.labels()
    if not labels:
        return worker((spec, None))
    chunks = [(spec, (r,)) for r in labels]
    if jobs <= 1:
        return sum(map(worker, chunks))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(worker, chunks))


def signed_region_count(spec: DeformationSpec, jobs: int = 1) -> int:
    """Sum over boxed trees with valid boxes of (-1)^(|n| - |B|)."""
    guards.check("trees", tree_count(spec.m, spec.size))
    return _partitioned(_signed_chunk, spec, jobs)


def unsigned_region_count(spec: DeformationSpec, jobs: int = 1) -> int:
    """Size of the tree family; requires transitivity."""
    _require_transitive(spec)
    guards.check("trees", tree_count(spec.m, spec.size))
    return _partitioned(_unsigned_chunk, spec, jobs)


# coboundary polynomials -------------------------------------------------------------


def boxed_series(spec: DeformationSpec, budget: int, bullet: bool = False) -> ExpSeries:
    """U (or U-bullet) summed over admissible boxed trees with |n| <= budget."""
    work = sum(
        tree_count(spec.m, k) * math.comb(k + spec.N - 1, spec.N - 1) for k in range(budget + 1)
    )
    if work > guards.limit("trees"):
        raise BudgetExceeded(f"{work} trees exceed the enumeration guard")
    values = {}
    for k in range(budget + 1):
        for n in compositions(k, spec.N):
            sub = spec.with_n(n)
            total = Poly()
            for tree in enumerate_trees(spec.m, sub.labels()):
                total = total + energy_weight(sub, tree, leaf_weight=bullet)
            values[n] = total
    return ExpSeries.from_egf(spec.N, budget, values)


def coboundary_series(spec: DeformationSpec, budget: int) -> ExpSeries:
    return boxed_series(spec, budget).power(-Poly.var("q"))


def coboundary_from_trees(spec: DeformationSpec, label_budget: int) -> dict[tuple, Poly]:
    """Coboundary polynomial of every A(n) with |n| <= label_budget."""
    P = coboundary_series(spec, label_budget)
    out = {}
    for k in range(label_budget + 1):
        for n in compositions(k, spec.N):
            out[n] = Poly.coerce(P.egf(n))
    return out


# the finite-delta identity ---------------------------------------------------------


def z_bruteforce(spec: DeformationSpec, n, delta: int) -> Poly:
    """Sum of y^energy over all integer tuples in [delta]^|n|."""
    sub = spec.with_n(n)
    verts = sub.vertices()
    size = len(verts)
    if delta ** size > guards.limit("z"):
        raise Overflow(f"{delta}^{size} tuples exceed the guard")
    pairs = [
        (i, j, frozenset(sub.offsets(verts[i].type, verts[j].type)))
        for i in range(size)
        for j in range(i + 1, size)
    ]
    counts: dict[int, int] = {}
    for x in itertools.product(range(1, delta + 1), repeat=size):
        e = sum(1 for i, j, S in pairs if x[i] - x[j] in S)
        counts[e] = counts.get(e, 0) + 1
    return Poly({((("y", e),) if e else ()): c for e, c in counts.items()})


def z_from_boxed_trees(spec: DeformationSpec, n, delta: int) -> Poly:
    """n! [t^n] U^(-delta-m-2) U-bullet."""
    k = sum(n)
    U = boxed_series(spec, k)
    bullet = boxed_series(spec, k, bullet=True)
    value = (U ** (-(delta + spec.m + 2)) * bullet).egf(tuple(n))
    return Poly.coerce(value)


def z_identity_check(spec: DeformationSpec, n) -> bool:
    delta = spec.m * sum(n) + 1
    return z_bruteforce(spec, n, delta) == z_from_boxed_trees(spec, n, delta)
