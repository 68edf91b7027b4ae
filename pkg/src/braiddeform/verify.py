"""Cross-check suite behind ``braiddeform verify``.

Each check compares independent code paths on a battery of small
arrangements and reports a verdict with a short detail string.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator

from . import biject, genfun, oracle
from .core import (
    DeformationSpec,
    characteristic,
    coboundary_from_tutte,
    is_feasible,
    rank,
    tutte_from_coboundary,
    zaslavsky,
)
from .count import (
    coboundary_from_trees,
    is_transitive_set,
    is_transitive_tuple,
    signed_region_count,
    unsigned_region_count,
    z_identity_check,
)
from .poly import Poly
from .series import ExpSeries, compositions
from .trees import enumerate_trees, family, signed_weight, tree_in_family

SCALES = {"tiny": 3, "small": 4, "medium": 5}

UNIFORM_SETS = [
    (), (0,), (1,), (-1,), (0, 1), (-1, 0), (-1, 1), (-1, 0, 1),
    (-2, -1, 0, 1, 2), (0, 1, 2), (-2, 0, 1), (2,), (-1, 2),
]

CHERRY_GRAPH = [(1, 2), (1, 3)]


def graded_battery() -> list[DeformationSpec]:
    return [
        genfun.gessel_spec(2, 1),
        DeformationSpec.graded(2, {(1, 1): (-1, 0, 1), (2, 2): (0, 1), (1, 2): (0,)}),
    ]


def tuple_battery() -> dict[str, DeformationSpec]:
    out = {
        "catalan": DeformationSpec.constant_tuple((-1, 0, 1), 3),
        "shi": DeformationSpec.constant_tuple((0, 1), 3),
        "semiorder": DeformationSpec.constant_tuple((-1, 1), 3),
        "linial": DeformationSpec.constant_tuple((1,), 3),
    }
    for on, off in [((0, 1), (0,)), ((-1, 0, 1), (0, 1)), ((0, 1), (-1, 0, 1)), ((1,), (0, 1)), ((0,), (0, 1))]:
        out[f"graphical{on}{off}"] = DeformationSpec.graphical(CHERRY_GRAPH, on, off, 3)
    return out


POTTS_GRAPHS = [
    (3, [(1, 2), (2, 3), (1, 3)]),
    (4, [(1, 2), (2, 3), (3, 4)]),
    (5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3)]),
]


@dataclass
class Result:
    check: str
    ok: bool
    detail: str

    def to_json(self) -> dict:
        return {"check": self.check, "ok": self.ok, "detail": self.detail}


def _whitney_regions(spec: DeformationSpec) -> int:
    P = oracle.whitney_coboundary(spec)
    return zaslavsky(characteristic(P), spec.size, rank(spec))[0]


def check_four_way(nmax: int) -> Result:
    rows = 0
    for S in UNIFORM_SETS:
        m = max((abs(s) for s in S), default=0)
        for n in range(1, (nmax if m <= 1 else min(nmax, 3)) + 1):
            spec = DeformationSpec.uniform(S, n)
            values = {
                signed_region_count(spec),
                _whitney_regions(spec),
                oracle.regions_by_sketch_enumeration(spec)[0],
            }
            if is_transitive_set(S):
                values.add(unsigned_region_count(spec))
            if len(values) != 1:
                return Result("four_way_counts", False, f"S={S} n={n}: {sorted(values)}")
            rows += 1
    for name, spec in tuple_battery().items():
        values = {signed_region_count(spec), _whitney_regions(spec), oracle.regions_by_sketch_enumeration(spec)[0]}
        if is_transitive_tuple(spec):
            values.add(unsigned_region_count(spec))
        if len(values) != 1:
            return Result("four_way_counts", False, f"{name}: {sorted(values)}")
        rows += 1
    return Result("four_way_counts", True, f"{rows} arrangements agree")


def check_involution(nmax: int) -> Result:
    for S in UNIFORM_SETS:
        if not is_transitive_set(S):
            continue
        spec = DeformationSpec.uniform(S, min(nmax, 3))
        for tree in enumerate_trees(spec.m, spec.labels()):
            expected = 1 if tree_in_family(spec, tree) else 0
            if signed_weight(spec, tree) != expected:
                return Result("sign_reversing_involution", False, f"S={S} tree {tree}")
    return Result("sign_reversing_involution", True, "signed weight is the family indicator")


def check_coboundary(nmax: int) -> Result:
    count = 0
    for S in itertools.chain.from_iterable(itertools.combinations((-1, 0, 1), k) for k in range(4)):
        trees = coboundary_from_trees(DeformationSpec.uniform(S, 0), nmax)
        for n in range(1, nmax + 1):
            if trees[(n,)] != oracle.whitney_coboundary(DeformationSpec.uniform(S, n)):
                return Result("coboundary_trees_vs_whitney", False, f"S={S} n={n}")
            count += 1
    for spec in graded_battery():
        trees = coboundary_from_trees(spec, nmax)
        for n, P in trees.items():
            if sum(n) and P != oracle.whitney_coboundary(spec.with_n(n)):
                return Result("coboundary_trees_vs_whitney", False, f"{spec.to_json()} n={n}")
            count += 1
    return Result("coboundary_trees_vs_whitney", True, f"{count} polynomials equal")


def check_series(nmax: int) -> Result:
    q = Poly.var("q")
    specs = [DeformationSpec.uniform(S, 0) for S in [(0,), (0, 1), (1,), (-1, 1), (-1, 0, 1)]]
    specs += graded_battery()
    for spec in specs:
        R = genfun.solve_region_gf(spec, nmax)
        P = genfun.solve_coboundary_gf(spec, nmax)
        trees = coboundary_from_trees(spec, nmax)
        chi_values = {}
        for k in range(1, nmax + 1):
            for n in compositions(k, spec.N):
                sub = spec.with_n(n)
                if R.egf(n) != signed_region_count(sub):
                    return Result("series_solvers", False, f"R at {n} for {spec.to_json()}")
                if P.egf(n) != trees[n]:
                    return Result("series_solvers", False, f"P at {n} for {spec.to_json()}")
                chi_values[n] = characteristic(oracle.whitney_coboundary(sub))
        chi_values[(0,) * spec.N] = 1
        chi = ExpSeries.from_egf(spec.N, nmax, chi_values)
        if chi != R.negate_vars().power(-q):
            return Result("series_solvers", False, f"chi = R(-t)^-q fails for {spec.to_json()}")
        if genfun.fixed_point_residual(spec, nmax) != 0:
            return Result("series_solvers", False, "fixed-point residual")
    return Result("series_solvers", True, f"{len(specs)} specs: R, P and chi = R(-t)^-q agree")


def check_tutte(nmax: int) -> Result:
    for S in [(0,), (0, 1), (-1, 0, 1), (1,)]:
        for n in range(1, nmax + 1):
            spec = DeformationSpec.uniform(S, n)
            P = oracle.whitney_coboundary(spec)
            r = rank(spec)
            T = tutte_from_coboundary(P, r, n)
            if coboundary_from_tutte(T, r, n) != P:
                return Result("tutte_round_trip", False, f"S={S} n={n}")
            if T(x=2, y=0) != signed_region_count(spec):
                return Result("tutte_round_trip", False, f"T(2,0) for S={S} n={n}")
    return Result("tutte_round_trip", True, "T(2,0) = regions and P round-trips")


def check_z_identity(nmax: int) -> Result:
    count = 0
    for S in itertools.chain.from_iterable(itertools.combinations((-1, 0, 1), k) for k in range(4)):
        spec = DeformationSpec.uniform(S, 0)
        for n in range(1, min(nmax, 3) + 1):
            if not z_identity_check(spec, (n,)):
                return Result("z_identity", False, f"S={S} n={n}")
            count += 1
    return Result("z_identity", True, f"{count} cases")


def check_round_trips(nmax: int) -> Result:
    cases = [(1, k) for k in range(1, nmax + 1)] + [(2, k) for k in range(1, min(nmax, 3) + 1)]
    total = 0
    for m, n in cases:
        labels = range(1, n + 1)
        for tree in enumerate_trees(m, labels):
            sk = biject.psi(tree)
            if biject.phi(sk) != tree or biject.phi_local(sk) != tree:
                return Result("phi_psi_sigma_round_trips", False, f"tree {tree}")
        for sk in biject.enumerate_sketches(m, labels):
            if biject.sigma(biject.representative_point(sk), m) != sk:
                return Result("phi_psi_sigma_round_trips", False, f"sketch {sk}")
            total += 1
    return Result("phi_psi_sigma_round_trips", True, f"{total} sketches")


def region_image_report(spec: DeformationSpec) -> tuple[bool, int]:
    """Psi_S images of the tree family are distinct, feasible and exhaustive."""
    images = [biject.region_of_tree(spec, t) for t in family(spec)]
    distinct = len(set(images)) == len(images)
    feasible = all(is_feasible(spec, r) for r in images)
    expected = oracle.regions_by_sketch_enumeration(spec)[1]
    return distinct and feasible and set(images) == expected, len(images)


def check_region_bijection(nmax: int) -> Result:
    sizes = {}
    for name, spec in tuple_battery().items():
        ok, size = region_image_report(spec)
        if not ok:
            return Result("region_bijection", False, name)
        sizes[name] = size
    for S in [(0, 1), (1,), (-1, 1), (-1, 0, 1)]:
        spec = DeformationSpec.uniform(S, nmax)
        ok, size = region_image_report(spec)
        if not ok:
            return Result("region_bijection", False, f"S={S}")
    return Result("region_bijection", True, ", ".join(f"{k}={v}" for k, v in sizes.items()))


def check_maximality(nmax: int) -> Result:
    for S in [(0, 1), (1,), (-1, 1), (-1, 0)]:
        report = biject.maximality_audit(DeformationSpec.uniform(S, 0), min(nmax, 3))
        flags = [k for k, v in report.items() if isinstance(v, bool) and not v]
        if flags:
            return Result("locally_maximal_sketches", False, f"S={S}: {flags}")
    return Result("locally_maximal_sketches", True, "classes, maxima and local maxima match")


def check_parking(nmax: int) -> Result:
    for n in range(1, nmax + 1):
        spec = DeformationSpec.uniform((0, 1), n)
        trees = list(family(spec))
        lam1, lam2 = set(), set()
        for tree in trees:
            p = biject.pak_stanley(tree)
            point = biject.representative_point(biject.psi(tree))
            if biject.pak_stanley_from_point(point) != p:
                return Result("parking_labelings", False, f"from-point mismatch for {tree}")
            lam1.add(p)
            lam2.add(biject.athanasiadis_linusson(tree))
        target = (n + 1) ** (n - 1)
        if not (len(lam1) == len(lam2) == len(trees) == target):
            return Result("parking_labelings", False, f"n={n}")
        if not all(biject.is_parking_function(p) for p in lam1 | lam2):
            return Result("parking_labelings", False, f"n={n}: non-parking output")
    return Result("parking_labelings", True, f"bijective up to n={nmax}")


def check_theta(nmax: int) -> Result:
    for n in range(1, nmax + 2):
        trees = list(family(DeformationSpec.uniform((1,), n)))
        images = {biject.theta(t) for t in trees}
        if len(images) != len(trees) or not all(biject.satisfies_condition_iii(t) for t in images):
            return Result("theta", False, f"n={n}")
        local_bst = sum(1 for t in enumerate_trees(1, range(1, n + 1)) if biject.satisfies_condition_iii(t))
        if local_bst != len(trees):
            return Result("theta", False, f"n={n}: image size differs from target set")
    return Result("theta", True, f"bijective up to n={nmax + 1}")


def check_identities(nmax: int) -> Result:
    D = nmax + 1
    failures = []
    for target in [(0,), (0, 1), (1,), (-1, 0, 1), (-2, -1, 0, 1, 2), (0, 1, 2)]:
        for name, verdict in genfun.identity_suite(target, D).items():
            if verdict is False:
                failures.append(f"{target}:{name}")
    for spec in graded_battery() + [genfun.gessel_spec(2, 2), genfun.gessel_spec(3, 1)]:
        for name, verdict in genfun.identity_suite(spec, min(D, 4)).items():
            if verdict is False:
                failures.append(f"{spec.to_json()}:{name}")
    if genfun.eulerian_lambda(D) != genfun.eulerian_lambda_bruteforce(D):
        failures.append("eulerian recurrence")
    if genfun.eulerian_lambda(D) != genfun.eulerian_lambda_closed_form(D):
        failures.append("eulerian closed form")
    for S in [(0, 1), (-1, 1), (1,), (-1, 0), (-2, 0, 1, 2)]:
        if is_transitive_set(S):
            spec = DeformationSpec.uniform(S, 0)
            if genfun.gamma_transitive_closed_form(S, D) != genfun.gamma_series(spec, D, with_y=False):
                failures.append(f"gamma closed form {S}")
    return Result("generating_function_identities", not failures, "; ".join(failures) or "all hold")


def check_potts(nmax: int) -> Result:
    q = Poly.var("q")
    for N, edges in POTTS_GRAPHS:
        if N > nmax + 1:
            continue
        spec = DeformationSpec.potts(edges, N)
        if oracle.whitney_coboundary(spec) != oracle.potts_partition(edges, N):
            return Result("m0_specialisation", False, f"Potts for {edges}")
        if signed_region_count(spec) != oracle.acyclic_orientations(edges, N):
            return Result("m0_specialisation", False, f"orientations for {edges}")
        D = min(nmax, 4)
        chi = {(0,) * N: 1}
        for k in range(1, D + 1):
            for n in compositions(k, N):
                chi[n] = characteristic(oracle.whitney_coboundary(spec.with_n(n)))
        if ExpSeries.from_egf(N, D, chi) != oracle.independent_set_series(edges, N, D).power(q):
            return Result("m0_specialisation", False, f"independent sets for {edges}")
    return Result("m0_specialisation", True, "Potts, orientations and independent sets agree")


CHECKS: list[Callable[[int], Result]] = [
    check_four_way,
    check_involution,
    check_coboundary,
    check_series,
    check_tutte,
    check_z_identity,
    check_round_trips,
    check_region_bijection,
    check_maximality,
    check_parking,
    check_theta,
    check_identities,
    check_potts,
]


def run_checks(scale: str = "small") -> Iterator[Result]:
    nmax = SCALES[scale]
    for check in CHECKS:
        yield check(nmax)
